"""Graph constructions: distorted lamp graphs, coarsenings, b-separated
rescalings, scale-b partitions, and the bi-Lipschitz cut transfer."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cuts import CutResult, cut, is_cut_set
from .graphs import (Graph, ConnectedPartition, connected_components,
                     distance_matrix, induced_subgraph, is_connected,
                     validate_subset)
from .groups import FiniteGroup


@dataclass
class LampGraphSpec:
    group: FiniteGroup
    k: int
    r: int

    def __post_init__(self):
        if self.k < 0 or self.r < 0:
            raise ValueError("k and r must be non-negative")


def distorted_lamp_graph(spec: LampGraphSpec) -> Graph:
    """Product of 2r+1 group copies crossed with a cursor interval.

    Vertices are ((x_{-r}, ..., x_r), i) with i in [-(r+k), r+k]. Cursor
    edges join consecutive i; at i = j+k coordinate j is multiplied on the
    right by the non-trivial elements of A, at i = j-k by those of B.
    """
    group, k, r = spec.group, spec.k, spec.r
    width = 2 * r + 1
    span = r + k
    cursors = range(-span, span + 1)
    tuples = list(itertools.product(group.elements(), repeat=width))
    index = {}
    labels = []
    for x in tuples:
        for i in cursors:
            index[(x, i)] = len(labels)
            labels.append((x, i))
    edges = []
    for x in tuples:
        for i in range(-span, span):
            edges.append((index[(x, i)], index[(x, i + 1)]))
    a_gens = [a for a in group.A if a != group.identity]
    b_gens = [b for b in group.B if b != group.identity]
    for x in tuples:
        for j in range(-r, r + 1):
            coord = j + r
            for a in a_gens:
                y = x[:coord] + (group.mul(x[coord], a),) + x[coord + 1:]
                edges.append((index[(x, j + k)], index[(y, j + k)]))
            for b in b_gens:
                y = x[:coord] + (group.mul(x[coord], b),) + x[coord + 1:]
                edges.append((index[(x, j - k)], index[(y, j - k)]))
    return Graph(len(labels), edges, labels=labels)


@dataclass
class CoarseningResult:
    coarse_graph: Graph
    anchoring: tuple
    min_block: int
    max_block: int
    partition: ConnectedPartition


def coarsen(G: Graph, partition) -> CoarseningResult:
    """Quotient graph of a connected partition, plus per-block anchoring.

    Blocks are adjacent iff some host edge crosses them; the anchoring of a
    block is the size of its internal boundary in the host.
    """
    if not isinstance(partition, ConnectedPartition):
        partition = ConnectedPartition(G, partition)
    block_of = partition.block_of
    edges = set()
    for u, v in G.edges:
        if block_of[u] != block_of[v]:
            edges.add((min(block_of[u], block_of[v]),
                       max(block_of[u], block_of[v])))
    coarse = Graph(len(partition.blocks), edges,
                   labels=[tuple(sorted(b)) for b in partition.blocks])
    anchoring = tuple(
        sum(1 for x in block if any(block_of[y] != i for y in G.neighbors[x]))
        for i, block in enumerate(partition.blocks))
    sizes = [len(b) for b in partition.blocks]
    return CoarseningResult(coarse_graph=coarse, anchoring=anchoring,
                            min_block=min(sizes), max_block=max(sizes),
                            partition=partition)


def maximal_b_separated(G: Graph, b: int, scan_order=None) -> frozenset:
    """Greedy maximal b-separated set: scan vertices, keep those at distance
    >= b from everything already kept."""
    if b < 1:
        raise ValueError("b must be >= 1")
    if not is_connected(G):
        raise ValueError("host graph must be connected")
    if scan_order is None:
        scan_order = range(G.vertex_count)
    dist = distance_matrix(G)
    chosen: list[int] = []
    for v in scan_order:
        if all(dist[v][y] >= b for y in chosen):
            chosen.append(v)
    return frozenset(chosen)


def _check_separated(dist, S, b) -> None:
    S = sorted(S)
    for i, u in enumerate(S):
        for v in S[i + 1:]:
            if dist[u][v] < b:
                raise ValueError(
                    f"set is not {b}-separated: d({u},{v}) = {dist[u][v]}")


def b_rescaling(G: Graph, S, b: int) -> Graph:
    """Graph on a b-separated set with edges at host distance < 2b."""
    S = sorted(validate_subset(G, S))
    dist = distance_matrix(G)
    _check_separated(dist, S, b)
    edges = [
        (i, j)
        for i, u in enumerate(S) for j, v in enumerate(S)
        if i < j and dist[u][v] < 2 * b
    ]
    return Graph(len(S), edges, labels=S)


@dataclass
class DiscretizationResult:
    centers: tuple
    block_of: tuple
    blocks: tuple
    nu_Y: tuple
    inner_radius: tuple
    outer_radius: tuple
    b_inclusion_ok: tuple


def scale_b_partition(G: Graph, S, b: int, nu=None) -> DiscretizationResult:
    """Voronoi partition around a maximal b-separated set.

    Ties go to the smallest center. Per block we report the largest inner
    radius rho with B(center, rho) inside the block and the smallest outer
    radius covering it; maximality of S forces outer <= 2b, but the inner
    radius can fall below b when two centers sit at distance exactly b, so
    the b-inclusion is reported per block rather than asserted.
    """
    centers = sorted(validate_subset(G, S))
    if not centers:
        raise ValueError("empty center set")
    dist = distance_matrix(G)
    _check_separated(dist, centers, b)
    n = G.vertex_count
    if nu is None:
        nu = [1.0] * n
    block_of = []
    for v in range(n):
        best = min(range(len(centers)), key=lambda i: (dist[centers[i]][v], i))
        block_of.append(best)
    blocks = tuple(
        frozenset(v for v in range(n) if block_of[v] == i)
        for i in range(len(centers)))
    nu_Y = tuple(float(sum(nu[v] for v in block)) for block in blocks)
    inner, outer, ok = [], [], []
    for i, y in enumerate(centers):
        outside = [dist[y][v] for v in range(n) if v not in blocks[i]]
        rho_in = (min(outside) - 1) if outside else max(dist[y][v] for v in range(n))
        rho_out = max(dist[y][v] for v in blocks[i])
        inner.append(int(rho_in))
        outer.append(int(rho_out))
        ok.append(rho_in >= b)
    return DiscretizationResult(
        centers=tuple(centers), block_of=tuple(block_of), blocks=blocks,
        nu_Y=nu_Y, inner_radius=tuple(inner), outer_radius=tuple(outer),
        b_inclusion_ok=tuple(ok))


def write_partition_csv(partition: ConnectedPartition, path) -> None:
    """Partitions serialize as one "vertex,block" line per vertex."""
    with open(path, "w") as fh:
        fh.write("vertex,block\n")
        for v, b in enumerate(partition.block_of):
            fh.write(f"{v},{b}\n")


def read_partition_csv(host: Graph, path) -> ConnectedPartition:
    block_of = {}
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "vertex,block":
            raise ValueError("partition CSV must start with 'vertex,block'")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            v, b = line.split(",")
            block_of[int(v)] = int(b)
    blocks: dict[int, list] = {}
    for v in range(host.vertex_count):
        if v not in block_of:
            raise ValueError(f"partition CSV missing vertex {v}")
        blocks.setdefault(block_of[v], []).append(v)
    return ConnectedPartition(host, [blocks[b] for b in sorted(blocks)])


def _bfs_parents(X: Graph, source: int):
    """BFS tree with lowest-index parents (deterministic geodesics)."""
    parent = [-1] * X.vertex_count
    dist = [-1] * X.vertex_count
    dist[source] = 0
    queue = [source]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for v in X.neighbors[u]:
            if dist[v] == -1:
                dist[v] = dist[u] + 1
                parent[v] = u
                queue.append(v)
    return parent, dist


def bilip_cut_transfer(Gamma: Graph, X: Graph, f, kappa: int, s,
                       cut_mode: str = "auto",
                       exact_limit: int = 24) -> tuple[CutResult, dict]:
    """Transfer an s-cut of the image graph back through a Lipschitz map.

    f maps V(Gamma) into V(X) with d_X(f(x), f(y)) <= kappa on edges
    (validated). The image graph consists of all image vertices plus the
    interiors of canonical BFS geodesics chosen per edge. Its s-cut C' pulls
    back to C = {x : d_X(f(x), C') <= kappa}, returned with the level it
    actually achieves on Gamma, plus an audit report.
    """
    s = Fraction(s)
    if not is_connected(X):
        raise ValueError("X must be connected")
    f = list(f)
    if len(f) != Gamma.vertex_count:
        raise ValueError("f must map every vertex of Gamma")
    trees = {}
    chosen: set[int] = set(f)
    for x, y in Gamma.edges:
        src, dst = f[x], f[y]
        if src not in trees:
            trees[src] = _bfs_parents(X, src)
        parent, dist = trees[src]
        if dist[dst] > kappa:
            raise ValueError(
                f"Lipschitz violation on edge ({x},{y}): "
                f"d_X(f({x}),f({y})) = {dist[dst]} > {kappa}")
        v = dst
        while parent[v] != -1:
            v = parent[v]
            if v != src:
                chosen.add(v)
    image = induced_subgraph(X, chosen)
    if cut_mode == "exact" or (cut_mode == "auto"
                               and image.vertex_count <= exact_limit):
        inner = cut(image, s, "exact")
    else:
        inner = cut(image, s, "heuristic")
    cut_orig = {image.original_vertices[v] for v in inner.cut_set}
    dist_x = distance_matrix(X)
    C = frozenset(
        x for x in range(Gamma.vertex_count)
        if any(dist_x[f[x]][c] <= kappa for c in cut_orig))
    n = Gamma.vertex_count
    rest = [v for v in range(n) if v not in C]
    comps = connected_components(induced_subgraph(Gamma, rest))
    achieved = Fraction(max((len(c) for c in comps), default=0), n)
    level = max(achieved, Fraction(1, n))
    if not is_cut_set(Gamma, C, level):
        raise AssertionError("transfer produced an invalid cut")
    # Audit constant: preimage counts over radius-kappa balls in X.
    ball_preimage = max(
        (sum(1 for x in range(n) if dist_x[f[x]][center] <= kappa)
         for center in range(X.vertex_count)), default=0)
    report = {
        "image_vertices": image.vertex_count,
        "inner_cut_size": inner.size,
        "inner_exact": inner.exact,
        "pullback_size": len(C),
        "achieved_level": achieved,
        "ball_preimage_max": ball_preimage,
        "size_bound_ok": len(C) <= ball_preimage * inner.size,
    }
    result = CutResult(epsilon=level, cut_set=C, size=len(C), exact=False)
    return result, report
