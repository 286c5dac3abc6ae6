"""Cheeger-type constants.

Combinatorial constants (plain / majored / edge boundary) by exhaustive
subset enumeration or simulated annealing; L^p constants with sup-scale or
neighbour-sum gradients by seeded subgradient descent. Every returned value
is tied to a witness: exact values carry the minimizing set, estimates carry
the best function found, and the estimate is a certified upper bound because
it is the objective at a feasible point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels, optimize
from .errors import ExactSearchInfeasible
from .graphs import Graph, distance_matrix, validate_subset
from .spectral import fiedler_vector, lambda2

EXACT_LIMIT = 22
RATIO_REPRO_TOL = 1e-12

_MODE_CODE = {
    "plain": kernels.MODE_PLAIN,
    "majored": kernels.MODE_MAJORED,
    "edge": kernels.MODE_EDGE,
}


@dataclass
class CheegerWitness:
    value: float
    kind: str  # "set" or "function"
    set_witness: Optional[frozenset] = None
    function_witness: Optional[np.ndarray] = field(default=None, repr=False)
    certified_lower: Optional[float] = None
    exact: bool = False
    value_exact: Optional[Fraction] = None


def boundary_count(G: Graph, subset_mask: int, mode: str) -> int:
    """Boundary size of the set given as a bitmask, per mode."""
    masks = G.neighbor_masks
    union = 0
    m = subset_mask
    while m:
        low = m & -m
        union |= masks[low.bit_length() - 1]
        m ^= low
    comp = ~subset_mask
    if mode == "plain":
        return (union & comp).bit_count()
    if mode == "majored":
        count = (union & comp).bit_count()
        m = subset_mask
        while m:
            low = m & -m
            if masks[low.bit_length() - 1] & comp:
                count += 1
            m ^= low
        return count
    if mode == "edge":
        total = 0
        m = subset_mask
        while m:
            low = m & -m
            total += (masks[low.bit_length() - 1] & comp).bit_count()
            m ^= low
        return total
    raise ValueError(f"unknown mode {mode!r}")


def set_ratio(G: Graph, A, mode: str) -> Fraction:
    A = validate_subset(G, A)
    if not A:
        raise ValueError("empty subset")
    mask = 0
    for v in A:
        mask |= 1 << v
    return Fraction(boundary_count(G, mask, mode), len(A))


def _mask_to_set(mask: int) -> frozenset:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def _anneal(G: Graph, mode: str, restarts: int, seed: int):
    """Simulated-annealing upper bound; returns (num, size, mask)."""
    n = G.vertex_count
    max_size = n // 2
    rng = np.random.default_rng(seed)

    def ratio_key(num, size):
        return num / size

    # Fiedler sweep: prefixes of the sorted Fiedler vector seed the search.
    order = list(np.argsort(fiedler_vector(G)))
    best = None
    prefix_mask = 0
    for i in range(max_size):
        prefix_mask |= 1 << int(order[i])
        num = boundary_count(G, prefix_mask, mode)
        cand = (num, i + 1, prefix_mask)
        if best is None or num * best[1] < best[0] * cand[1]:
            best = cand
    for _ in range(restarts):
        mask = best[2]
        size = best[1]
        cur = boundary_count(G, mask, mode)
        temp = 1.0
        for step in range(3000):
            temp *= 0.998
            v = int(rng.integers(n))
            bit = 1 << v
            if mask & bit:
                if size == 1:
                    continue
                new_mask, new_size = mask ^ bit, size - 1
            else:
                if 2 * (size + 1) > n:
                    continue
                new_mask, new_size = mask | bit, size + 1
            new_num = boundary_count(G, new_mask, mode)
            delta = ratio_key(new_num, new_size) - ratio_key(cur, size)
            if delta <= 0 or rng.random() < math.exp(-delta / max(temp, 1e-9)):
                mask, size, cur = new_mask, new_size, new_num
                if cur * best[1] < best[0] * size:
                    best = (cur, size, mask)
    return best


def cheeger_combinatorial(G: Graph, mode: str = "plain",
                          allow_heuristic: bool = False,
                          exact_limit: int = EXACT_LIMIT,
                          restarts: int = 4, seed: int = 0) -> CheegerWitness:
    """Combinatorial Cheeger constant: inf |boundary(A)|/|A| over non-empty
    A with 2|A| <= |V|.

    Exhaustive (exact) up to ``exact_limit`` vertices; larger graphs need
    ``allow_heuristic`` and get an annealed upper bound flagged inexact.
    Graphs with at most one vertex return 0 by convention.
    """
    if mode not in _MODE_CODE:
        raise ValueError(f"unknown mode {mode!r}")
    n = G.vertex_count
    if n <= 1:
        return CheegerWitness(0.0, "set", set_witness=frozenset(), exact=True,
                              value_exact=Fraction(0), certified_lower=0.0)
    if n <= exact_limit:
        num, size, mask = kernels.cheeger_exhaustive(
            G.neighbor_masks, n, _MODE_CODE[mode])
        exact = True
    else:
        if not allow_heuristic:
            raise ExactSearchInfeasible(
                f"exact search infeasible for {n} > {exact_limit} vertices; "
                f"pass allow_heuristic=True for an annealed upper bound")
        num, size, mask = _anneal(G, mode, restarts, seed)
        exact = False
    frac = Fraction(num, size)
    return CheegerWitness(
        value=float(frac), kind="set", set_witness=_mask_to_set(mask),
        exact=exact, value_exact=frac,
        certified_lower=float(frac) if exact else None)


# ---------------------------------------------------------------------------
# L^p constants


class WeightedMetricGraph:
    """A graph with a positive vertex measure and a metric.

    The metric defaults to shortest-path distances; restrictions of a larger
    host metric (discretizations) pass their own matrix via ``dist``.
    """

    def __init__(self, graph: Graph, nu=None, dist=None):
        self.graph = graph
        n = graph.vertex_count
        if nu is None:
            nu = np.ones(n)
        nu = np.asarray(nu, dtype=float)
        if nu.shape != (n,):
            raise ValueError("nu must have one entry per vertex")
        if n and nu.min() <= 0:
            raise ValueError("nu must be positive on every vertex")
        self.nu = nu
        if dist is None:
            dist = distance_matrix(graph)
        elif len(dist) != n or any(len(row) != n for row in dist):
            raise ValueError("dist must be an n by n matrix")
        self.dist = dist

    def balls(self, radius: float):
        """Closed balls at integer-rounded radius, as index arrays."""
        r = math.floor(radius)
        return [
            np.array([y for y in range(self.graph.vertex_count)
                      if self.dist[x][y] <= r], dtype=int)
            for x in range(self.graph.vertex_count)
        ]

    def total_measure(self) -> float:
        return float(self.nu.sum())


def _as_matrix(f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.ndim == 1:
        f = f[:, None]
    return f


def scale_ratio(Z: WeightedMetricGraph, f, p: float, a: float) -> float:
    """Scale-a quotient ||grad_a f||_p / ||f - mean||_p against Z's measure
    and metric. Pure evaluation, shared by the optimizer and witness audits."""
    f = _as_matrix(f)
    nu = Z.nu
    centered = optimize.weighted_center(f, nu)
    den = optimize.weighted_pnorm(centered, nu, p)
    if den < 1e-15:
        raise ValueError("constant function: quotient undefined")
    u = optimize.sup_gradient_rows(f, Z.balls(a), p)
    num = float((nu @ (u ** p)) ** (1.0 / p))
    return num / den


def lp_cheeger_ratio(G: Graph, f, p: float, gradient: str = "sup_scale",
                     scale_a: float = 1.0, nu=None) -> float:
    """The L^p quotient ||grad f||_p / ||f - mean||_p at a given function."""
    if gradient == "sup_scale":
        return scale_ratio(WeightedMetricGraph(G, nu), f, p, scale_a)
    if gradient != "modified":
        raise ValueError(f"unknown gradient {gradient!r}")
    f = _as_matrix(f)
    n = G.vertex_count
    if nu is None:
        nu = np.ones(n)
    nu = np.asarray(nu, dtype=float)
    centered = optimize.weighted_center(f, nu)
    den = optimize.weighted_pnorm(centered, nu, p)
    if den < 1e-15:
        raise ValueError("constant function: quotient undefined")
    num = optimize.modified_gradient_pow(f, G.neighbors, nu, p) ** (1.0 / p)
    return num / den


def certified_lp_lower(G: Graph, p: float, gradient: str) -> Optional[float]:
    """Certified lower bound for h_p via the majored-constant sandwich.

    Chain: exhaustive majored constant, then h_1 >= majored/2, then for p > 1
    the comparison factor min(1/12, 4^-p/2) (graphs with >= 3 vertices); the
    neighbour-sum gradient costs a further 2^-((p-1)/p).
    """
    n = G.vertex_count
    if n > EXACT_LIMIT or n < 2:
        return None
    maj = cheeger_combinatorial(G, "majored")
    lower = float(maj.value_exact) / 2.0
    if p > 1:
        if n < 3:
            return None
        lower *= min(1.0 / 12.0, (4.0 ** -p) / 2.0)
    if gradient == "modified":
        lower *= 2.0 ** (-(p - 1) / p)
    return lower


def _starts(G: Graph, n: int, dim: int, restarts: int, rng,
            nu: np.ndarray) -> list:
    starts = []
    if n >= 2:
        fv = np.zeros((n, dim))
        fv[:, 0] = fiedler_vector(G)
        starts.append(fv)
    witness = characteristic_witness(nu)
    if witness is not None:
        w = np.zeros((n, dim))
        w[:, 0] = witness
        starts.append(w)
    while len(starts) < max(restarts, 1) + 1:
        starts.append(rng.standard_normal((n, dim)))
    return starts


def characteristic_witness(nu: np.ndarray) -> Optional[np.ndarray]:
    """Indicator of a set with measure in [1/3, 2/3] of the total, if any.

    Greedy in vertex order; fails only when one atom exceeds 2/3 of the
    measure. Its quotient is at most 2 * 3^(1/p) <= 6 at any scale.
    """
    total = float(nu.sum())
    if total <= 0:
        return None
    acc = 0.0
    chosen = []
    for v in range(len(nu)):
        if acc >= total / 3.0:
            break
        acc += float(nu[v])
        chosen.append(v)
    if acc > 2.0 * total / 3.0:
        big = [v for v in range(len(nu)) if total / 3.0 <= nu[v] <= 2.0 * total / 3.0]
        if not big:
            return None
        chosen = [big[0]]
    f = np.zeros(len(nu))
    f[chosen] = 1.0
    return f


def cheeger_lp(G: Graph, p: float, gradient: str = "sup_scale",
               scale_a: float = 1.0, target_dim: int = 1,
               restarts: int = 8, seed: int = 0) -> CheegerWitness:
    """L^p Cheeger constant estimate (certified upper bound).

    gradient="sup_scale": |grad f|(x) is the sup of |f(y)-f(y')| over the
    closed ball of radius ``scale_a``; gradient="modified": the p-sum over
    neighbours. For (modified, p=2, scale 1, dim 1) the exact value
    sqrt(2*lambda2) is returned. certified_lower comes from the exhaustive
    sandwich chain when available (scale 1 only).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if target_dim < 1:
        raise ValueError("target_dim must be >= 1")
    n = G.vertex_count
    if n <= 1:
        return CheegerWitness(0.0, "function", exact=True, certified_lower=0.0)
    if gradient == "modified" and scale_a != 1:
        raise ValueError("modified gradient is defined at scale 1 only")
    if gradient == "modified" and p == 2 and target_dim == 1:
        lam = lambda2(G)
        value = math.sqrt(2.0 * lam.lambda2)
        return CheegerWitness(
            value=value, kind="function",
            function_witness=lam.witness_vector, exact=True,
            certified_lower=value)
    nu = np.ones(n)
    rng = np.random.default_rng(seed)
    if gradient == "sup_scale":
        balls = WeightedMetricGraph(G).balls(scale_a)
        numer_pow = lambda f: float(nu @ (optimize.sup_gradient_rows(f, balls, p) ** p))
        numer_sub = lambda f: optimize.sup_gradient_subgrad(f, balls, nu, p)
    elif gradient == "modified":
        numer_pow = lambda f: optimize.modified_gradient_pow(f, G.neighbors, nu, p)
        numer_sub = lambda f: optimize.modified_gradient_subgrad(f, G.neighbors, nu, p)
    else:
        raise ValueError(f"unknown gradient {gradient!r}")
    _, best_f = optimize.minimize_quotient(
        numer_pow, numer_sub, nu, p,
        _starts(G, n, target_dim, restarts, rng, nu))
    value = lp_cheeger_ratio(G, best_f, p, gradient, scale_a)
    lower = certified_lp_lower(G, p, gradient) if scale_a == 1 else None
    if lower is not None:
        lower = min(lower, value)
    return CheegerWitness(
        value=value, kind="function", function_witness=best_f,
        exact=False, certified_lower=lower)


def scale_poincare_constant(Z: WeightedMetricGraph, a: float, p: float,
                            restarts: int = 8, seed: int = 0) -> CheegerWitness:
    """Upper bound on the L^p Poincare constant of Z at scale a.

    Gradient is the sup over the closed a-ball; means and norms are taken
    against the vertex measure. Value 0 by convention on measure-zero Z.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if a <= 0:
        raise ValueError("scale must be positive")
    n = Z.graph.vertex_count
    if n == 0:
        return CheegerWitness(0.0, "function", exact=True, certified_lower=0.0)
    if n == 1:
        return CheegerWitness(0.0, "function", exact=True, certified_lower=0.0)
    nu = Z.nu
    balls = Z.balls(a)
    rng = np.random.default_rng(seed)
    numer_pow = lambda f: float(nu @ (optimize.sup_gradient_rows(f, balls, p) ** p))
    numer_sub = lambda f: optimize.sup_gradient_subgrad(f, balls, nu, p)
    _, best_f = optimize.minimize_quotient(
        numer_pow, numer_sub, nu, p, _starts(Z.graph, n, 1, restarts, rng, nu))
    value = scale_ratio(Z, best_f, p, a)
    return CheegerWitness(value=value, kind="function",
                          function_witness=best_f, exact=False)


def p_variance(f, p: float) -> float:
    """((1/n^2) sum_{g,h} ||f(g)-f(h)||_p^p)^(1/p)."""
    f = _as_matrix(f)
    n = f.shape[0]
    diffs = f[:, None, :] - f[None, :, :]
    total = float(np.sum(np.abs(diffs) ** p))
    return (total / (n * n)) ** (1.0 / p)
