# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels (graphs up to 64 vertices).

Contracts and enumeration order match ``_kernels_py`` exactly; the selector in
``sepprof.kernels`` routes larger instances to the Python fallback.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int popcount64_(unsigned long long x) {
        return (int)__builtin_popcountll(x);
    }
    static inline int ctz64_(unsigned long long x) {
        return (int)__builtin_ctzll(x);
    }
    """
    int popcount64_(unsigned long long x) nogil
    int ctz64_(unsigned long long x) nogil

BACKEND = "compiled"

MODE_PLAIN = 0
MODE_MAJORED = 1
MODE_EDGE = 2


cdef struct Best:
    int64_t num
    int64_t size
    uint64_t mask


cdef uint64_t* _to_masks(object masks, int n) except NULL:
    cdef uint64_t* arr = <uint64_t*> malloc(n * sizeof(uint64_t))
    if arr == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        arr[i] = <uint64_t> masks[i]
    return arr


cdef void _cheeger_rec(uint64_t* masks, int n, int mode, int max_size,
                       uint64_t a_mask, int size, uint64_t union_, int64_t cross,
                       int start, Best* best) nogil:
    cdef int v
    cdef uint64_t bit, new_a, new_union, comp, t
    cdef int64_t new_cross, num
    for v in range(start, n):
        bit = (<uint64_t>1) << v
        new_a = a_mask | bit
        new_union = union_ | masks[v]
        comp = ~new_a
        new_cross = cross - popcount64_(masks[v] & a_mask) \
            + popcount64_(masks[v] & comp)
        if mode == 0:
            num = popcount64_(new_union & ~new_a)
        elif mode == 1:
            num = popcount64_(new_union & ~new_a)
            t = new_a
            while t:
                if masks[ctz64_(t)] & ~new_a:
                    num += 1
                t &= t - 1
        else:
            num = new_cross
        if num * best.size < best.num * (size + 1):
            best.num = num
            best.size = size + 1
            best.mask = new_a
        if size + 1 < max_size:
            _cheeger_rec(masks, n, mode, max_size, new_a, size + 1,
                         new_union, new_cross, v + 1, best)


def cheeger_exhaustive(object masks, int n, int mode):
    """See _kernels_py.cheeger_exhaustive."""
    cdef int max_size = n // 2
    if max_size == 0:
        return (0, 0, 0)
    cdef uint64_t* arr = _to_masks(masks, n)
    cdef Best best
    best.num = 1
    best.size = 0
    best.mask = 0
    try:
        with nogil:
            _cheeger_rec(arr, n, mode, max_size, 0, 0, 0, 0, 0, &best)
    finally:
        free(arr)
    return (int(best.num), int(best.size), int(best.mask))


cdef bint _components_ok(uint64_t* masks, uint64_t full, uint64_t cut_mask,
                         int64_t num, int64_t den, int n) nogil:
    cdef uint64_t rem = full & ~cut_mask
    cdef uint64_t low, comp, frontier, nxt, t
    while rem:
        low = rem & (~rem + 1)
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            t = frontier
            while t:
                nxt |= masks[ctz64_(t)]
                t &= t - 1
            frontier = nxt & rem & ~comp
            comp |= frontier
        if den * popcount64_(comp) > num * n:
            return False
        rem &= ~comp
    return True


def min_cut_exact(object masks, int n, object num, object den,
                  int max_k, object budget):
    """See _kernels_py.min_cut_exact."""
    cdef uint64_t* arr = _to_masks(masks, n)
    cdef uint64_t full = ~(<uint64_t>0) if n == 64 else ((<uint64_t>1 << n) - 1)
    cdef int64_t cnum = <int64_t> num
    cdef int64_t cden = <int64_t> den
    cdef int64_t cbudget = <int64_t> budget
    cdef int64_t examined = 0
    cdef int k, size, start, v, top
    cdef uint64_t mask
    # Explicit stack of (mask, size, start) frames, mirroring the fallback.
    cdef uint64_t* st_mask = <uint64_t*> malloc((n + 1) * (n + 1) * sizeof(uint64_t))
    cdef int* st_size = <int*> malloc((n + 1) * (n + 1) * sizeof(int))
    cdef int* st_start = <int*> malloc((n + 1) * (n + 1) * sizeof(int))
    if st_mask == NULL or st_size == NULL or st_start == NULL:
        if st_mask != NULL: free(st_mask)
        if st_size != NULL: free(st_size)
        if st_start != NULL: free(st_start)
        free(arr)
        raise MemoryError()
    cdef int64_t found = -1
    try:
        for k in range(0, min(max_k, n) + 1):
            top = 0
            st_mask[0] = 0
            st_size[0] = 0
            st_start[0] = 0
            top = 1
            found = -1
            with nogil:
                while top > 0:
                    top -= 1
                    mask = st_mask[top]
                    size = st_size[top]
                    start = st_start[top]
                    if size == k:
                        examined += 1
                        if examined > cbudget:
                            found = -2
                            break
                        if _components_ok(arr, full, mask, cnum, cden, n):
                            found = <int64_t> 1
                            break
                        continue
                    v = n - (k - size)
                    while v >= start:
                        st_mask[top] = mask | ((<uint64_t>1) << v)
                        st_size[top] = size + 1
                        st_start[top] = v + 1
                        top += 1
                        v -= 1
            if found == -2:
                return (-2, int(examined))
            if found == 1:
                return (int(mask), int(examined))
        return (-1, int(examined))
    finally:
        free(arr)
        free(st_mask)
        free(st_size)
        free(st_start)


cdef bint _subsets_rec(uint64_t* masks, int max_size, int64_t budget,
                       uint64_t s_mask, int size, uint64_t cand, uint64_t exc,
                       uint64_t allowed, list out):
    out.append(int(s_mask))
    if len(out) > budget:
        return False
    if size == max_size:
        return True
    cdef uint64_t low, new_s, new_cand
    cdef int v
    while cand:
        low = cand & (~cand + 1)
        cand ^= low
        v = ctz64_(low)
        new_s = s_mask | low
        new_cand = (cand | (masks[v] & allowed)) & ~new_s & ~exc
        if not _subsets_rec(masks, max_size, budget, new_s, size + 1,
                            new_cand, exc, allowed, out):
            return False
        exc |= low
    return True


def connected_subsets(object masks, int n, int max_size, object budget):
    """See _kernels_py.connected_subsets."""
    cdef list out = []
    if max_size < 1:
        return out
    cdef uint64_t* arr = _to_masks(masks, n)
    cdef int64_t cbudget = <int64_t> budget
    cdef int root
    cdef uint64_t bit, allowed
    try:
        for root in range(n):
            bit = (<uint64_t>1) << root
            allowed = ~(bit - 1)
            if not _subsets_rec(arr, max_size, cbudget, bit, 1,
                                arr[root] & allowed & ~bit, 0, allowed, out):
                return None
    finally:
        free(arr)
    return out
