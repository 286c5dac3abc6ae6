"""Pure-Python bitmask kernels.

Same contracts and the same enumeration order as the compiled versions in
``_kernels.pyx``; this module is the fallback selected at import time when the
extension is unavailable (or forced via SEPPROF_PURE_PY=1). Masks are Python
ints, so there is no 64-vertex limit here.
"""

BACKEND = "python"

# Boundary modes for cheeger_exhaustive.
MODE_PLAIN = 0
MODE_MAJORED = 1
MODE_EDGE = 2


def _iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def cheeger_exhaustive(masks, n, mode):
    """Minimize boundary(A)/|A| over non-empty A with 2|A| <= n.

    Returns (boundary_count, size, subset_mask) for the first minimizer in
    lexicographic subset order. boundary_count is |external|, |majored| or
    the crossing-edge count depending on mode.
    """
    max_size = n // 2
    if max_size == 0:
        return (0, 0, 0)
    best = [1, 0, 0]  # numerator, size, mask; size 0 means +infinity

    def visit(a_mask, size, union, cross):
        if mode == MODE_PLAIN:
            num = (union & ~a_mask).bit_count()
        elif mode == MODE_MAJORED:
            num = (union & ~a_mask).bit_count()
            for v in _iter_bits(a_mask):
                if masks[v] & ~a_mask:
                    num += 1
        else:
            num = cross
        if num * best[1] < best[0] * size:
            best[0], best[1], best[2] = num, size, a_mask

    def rec(a_mask, size, union, cross, start):
        for v in range(start, n):
            bit = 1 << v
            new_a = a_mask | bit
            new_union = union | masks[v]
            comp = ~new_a
            new_cross = cross - (masks[v] & a_mask).bit_count() \
                + (masks[v] & comp).bit_count()
            visit(new_a, size + 1, new_union, new_cross)
            if size + 1 < max_size:
                rec(new_a, size + 1, new_union, new_cross, v + 1)

    rec(0, 0, 0, 0, 0)
    return (best[0], best[1], best[2])


def _components_ok(masks, full, cut_mask, num, den, n):
    # Every component of the graph minus cut_mask must have size*den <= num*n.
    rem = full & ~cut_mask
    while rem:
        low = rem & -rem
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in _iter_bits(frontier):
                nxt |= masks[v]
            frontier = nxt & rem & ~comp
            comp |= frontier
        if den * comp.bit_count() > num * n:
            return False
        rem &= ~comp
    return True


def min_cut_exact(masks, n, num, den, max_k, budget):
    """Smallest S with all components of G-S of size <= (num/den)*n.

    Increasing-cardinality search, lexicographic within each size. Returns
    (mask, examined); mask is -1 if no cut of size <= max_k exists and -2 if
    the budget on examined subsets ran out first.
    """
    full = (1 << n) - 1
    examined = 0

    def search(k):
        nonlocal examined
        # DFS over k-subsets in lexicographic order.
        stack = [(0, 0, 0)]  # (mask, size, next_vertex)
        while stack:
            mask, size, start = stack.pop()
            if size == k:
                examined += 1
                if examined > budget:
                    return -2
                if _components_ok(masks, full, mask, num, den, n):
                    return mask
                continue
            # Push in reverse so lexicographically smallest pops first.
            for v in range(n - (k - size), start - 1, -1):
                stack.append((mask | (1 << v), size + 1, v + 1))
        return -1

    for k in range(0, min(max_k, n) + 1):
        result = search(k)
        if result != -1:
            return (result, examined)
    return (-1, examined)


def connected_subsets(masks, n, max_size, budget):
    """All masks of connected induced subgraphs with 1..max_size vertices.

    Each subset is produced once; the order is deterministic (roots in
    increasing order, candidates consumed lowest-bit first). Returns None if
    more than ``budget`` subsets would be produced.
    """
    out = []

    def rec(s_mask, size, cand, exc, allowed):
        out.append(s_mask)
        if len(out) > budget:
            return False
        if size == max_size:
            return True
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            new_s = s_mask | low
            new_cand = (cand | (masks[v] & allowed)) & ~new_s & ~exc
            if not rec(new_s, size + 1, new_cand, exc, allowed):
                return False
            exc |= low
        return True

    if max_size < 1:
        return out
    for root in range(n):
        allowed = ~((1 << root) - 1)  # vertices >= root
        bit = 1 << root
        if not rec(bit, 1, masks[root] & allowed & ~bit, 0, allowed):
            return None
    return out
