"""Vertex cuts: exact epsilon-cuts, a spectral heuristic, and the iterated
halving procedure that turns 1/2-cuts into s-cuts.

All component-size comparisons are exact: a set is an s-cut (s = num/den)
iff den * |component| <= num * |V| for every remaining component.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .graphs import Graph, connected_components, induced_subgraph
from .spectral import fiedler_vector

DEFAULT_CUT_BUDGET = 5_000_000


@dataclass
class CutResult:
    epsilon: Fraction
    cut_set: frozenset
    size: int
    exact: bool


def is_cut_set(G: Graph, S, s: Fraction) -> bool:
    S = frozenset(S)
    n = G.vertex_count
    rest = [v for v in range(n) if v not in S]
    sub = induced_subgraph(G, rest)
    for comp in connected_components(sub):
        if s.denominator * len(comp) > s.numerator * n:
            return False
    return True


def _result(G: Graph, s: Fraction, S, exact: bool) -> CutResult:
    S = frozenset(S)
    if not is_cut_set(G, S, s):
        raise AssertionError("produced set fails the exact cut validation")
    return CutResult(epsilon=s, cut_set=S, size=len(S), exact=exact)


def _heuristic_cut_set(G: Graph, s: Fraction) -> frozenset:
    """Spectral bisection plus greedy removal; always returns a valid set."""
    n = G.vertex_count
    removed: set[int] = set()
    while True:
        rest = [v for v in range(n) if v not in removed]
        sub = induced_subgraph(G, rest)
        comps = [c for c in connected_components(sub)
                 if s.denominator * len(c) > s.numerator * n]
        if not comps:
            break
        comp = max(comps, key=len)
        verts = [sub.original_vertices[v] for v in comp]
        H = induced_subgraph(G, verts)
        if H.vertex_count == 1:
            removed.add(H.original_vertices[0])
            continue
        order = np.argsort(fiedler_vector(H))
        half = H.vertex_count // 2
        left = set(int(v) for v in order[:half])
        # Internal boundary of the right side separates the two halves.
        sep = {v for v in range(H.vertex_count) if v not in left
               and any(u in left for u in H.neighbors[v])}
        if not sep:
            sep = {int(order[half])}
        removed.update(H.original_vertices[v] for v in sep)
    # Greedy minimality pass.
    for v in sorted(removed):
        trial = removed - {v}
        if is_cut_set(G, trial, s):
            removed = trial
    return frozenset(removed)


def cut(G: Graph, s, mode: str = "exact",
        budget: int = DEFAULT_CUT_BUDGET) -> CutResult:
    """Minimum (exact) or valid (heuristic) s-cut of G.

    Exact mode searches subsets by increasing cardinality and raises a
    BudgetError advising the heuristic when the subset budget runs out.
    """
    s = Fraction(s)
    if not (0 < s <= 1):
        raise ValueError("s must be in (0, 1]")
    n = G.vertex_count
    if n == 0:
        return CutResult(s, frozenset(), 0, True)
    if mode == "exact":
        mask, _ = kernels.min_cut_exact(
            G.neighbor_masks, n, s.numerator, s.denominator, n, budget)
        S = frozenset(v for v in range(n) if mask >> v & 1)
        return _result(G, s, S, exact=True)
    if mode == "heuristic":
        return _result(G, s, _heuristic_cut_set(G, s), exact=False)
    raise ValueError(f"unknown mode {mode!r}")


def iterated_halving_cut(G: Graph, s, budget: int = DEFAULT_CUT_BUDGET) -> CutResult:
    """Build an s-cut (s <= 1/2) by repeated exact 1/2-cuts.

    Stage j brings every component below |V|/2^j: components are packed into
    groups no larger than the previous level's bound, and each group still
    above the target is 1/2-cut. Exact-cut budget errors propagate.
    """
    s = Fraction(s)
    if not (0 < s <= Fraction(1, 2)):
        raise ValueError("s must be in (0, 1/2]")
    n = G.vertex_count
    if n == 0:
        return CutResult(s, frozenset(), 0, True)
    levels = 1
    while Fraction(1, 2 ** levels) > s:
        levels += 1
    half = Fraction(1, 2)
    chosen: set[int] = set()
    first = cut(G, half, "exact", budget=budget)
    chosen.update(first.cut_set)
    for j in range(2, levels + 1):
        prev_cap = Fraction(n, 2 ** (j - 1))
        target = Fraction(n, 2 ** j)
        rest = [v for v in range(n) if v not in chosen]
        sub = induced_subgraph(G, rest)
        comps = sorted(connected_components(sub), key=len, reverse=True)
        groups: list[list[int]] = []
        sizes: list[int] = []
        for comp in comps:
            placed = False
            for gi in range(len(groups)):
                if sizes[gi] + len(comp) <= prev_cap:
                    groups[gi].extend(sub.original_vertices[v] for v in comp)
                    sizes[gi] += len(comp)
                    placed = True
                    break
            if not placed:
                groups.append([sub.original_vertices[v] for v in comp])
                sizes.append(len(comp))
        for group, size in zip(groups, sizes):
            if size <= target:
                continue
            H = induced_subgraph(G, group)
            inner = cut(H, half, "exact", budget=budget)
            chosen.update(H.original_vertices[v] for v in inner.cut_set)
    return _result(G, s, chosen, exact=False)
