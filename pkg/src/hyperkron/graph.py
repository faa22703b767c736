"""Assembly of sampled hyperedges into graphs, and the statistics
reported on them.

Two expansions: each hyperedge becomes the three edges of an undirected
triangle (repeated ids collapse to a single edge or a loop), or a signed
directed feed-forward motif.  Statistics operate on the touched nodes
only; untouched ids in the (possibly astronomically large) id space are
ignored.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels, rng
from .sampler import HyperedgeList

# Signed edges (X -> Y, Y -> Z, X -> Z) of the four coherent
# feed-forward types; each satisfies s1 * s2 == s3.
FFL_SIGNS = np.array([
    [1, 1, 1],
    [-1, 1, -1],
    [1, -1, -1],
    [-1, -1, 1],
], dtype=np.int8)

DEFAULT_MOTIF_PROBS = (0.5, 0.25, 0.125, 0.125)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph: deduplicated edges {u < v}, loops counted apart."""

    num_nodes: int
    edges: np.ndarray
    loop_count: int = 0

    @property
    def num_edges(self) -> int:
        return self.edges.shape[0]


@dataclass(frozen=True)
class SignedDigraph:
    """Directed graph with one signed edge per ordered pair.

    net_signs holds the raw sign sums from motif coalescing; signs holds
    the resolved value in {-1, +1}.
    """

    num_nodes: int
    edges: np.ndarray
    signs: np.ndarray
    net_signs: np.ndarray
    type_counts: np.ndarray
    degenerate_count: int = 0

    @property
    def num_edges(self) -> int:
        return self.edges.shape[0]


@dataclass(frozen=True)
class GraphStats:
    num_edges: int
    num_active_nodes: int
    loop_count: int
    triangle_count: int
    wedge_count: int
    global_clustering: float
    mean_local_clustering: float
    largest_component: int
    degree_histogram: dict[int, int] = field(repr=False)


def _as_triples(hyperedges) -> tuple[np.ndarray, int | None]:
    if isinstance(hyperedges, HyperedgeList):
        return hyperedges.triples, hyperedges.num_nodes
    return np.asarray(hyperedges, dtype=np.int64), None


def assemble_triangles(hyperedges, num_nodes: int | None = None) -> SimpleGraph:
    """Expand hyperedges into triangle edges and coalesce duplicates.

    A hyperedge with two distinct ids yields one edge; all-equal ids
    yield a loop, recorded in loop_count but kept out of the edge set.
    """
    triples, inferred = _as_triples(hyperedges)
    if num_nodes is None:
        num_nodes = inferred
    if num_nodes is None:
        num_nodes = int(triples.max()) + 1 if triples.size else 0
    if triples.size and (triples.min() < 0 or triples.max() >= num_nodes):
        raise ValueError("hyperedge id out of range")
    if triples.size == 0:
        return SimpleGraph(num_nodes, np.empty((0, 2), dtype=np.int64), 0)
    all_eq = (triples[:, 0] == triples[:, 1]) & (triples[:, 1] == triples[:, 2])
    loops = int(all_eq.sum())
    rest = triples[~all_eq]
    pairs = np.concatenate((rest[:, [0, 1]], rest[:, [1, 2]], rest[:, [0, 2]]))
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    lo = pairs.min(axis=1)
    hi = pairs.max(axis=1)
    if num_nodes <= (1 << 31):
        codes = np.unique(lo * num_nodes + hi)
        edges = np.column_stack((codes // num_nodes, codes % num_nodes))
    else:
        edges = np.unique(np.column_stack((lo, hi)), axis=0)
    return SimpleGraph(num_nodes, edges, loops)


def _compact_csr(g: SimpleGraph):
    """CSR adjacency over the touched nodes, neighbor lists sorted."""
    nodes = np.unique(g.edges)
    m = g.edges.shape[0]
    if m == 0:
        return nodes, np.zeros(1, dtype=np.int64), np.empty(0, dtype=np.int64)
    cu = np.searchsorted(nodes, g.edges[:, 0])
    cv = np.searchsorted(nodes, g.edges[:, 1])
    heads = np.concatenate((cu, cv))
    tails = np.concatenate((cv, cu))
    order = np.lexsort((tails, heads))
    indices = tails[order]
    indptr = np.zeros(nodes.size + 1, dtype=np.int64)
    np.cumsum(np.bincount(heads, minlength=nodes.size), out=indptr[1:])
    return nodes, indptr, indices


def _triangle_counts(indptr, indices) -> tuple[int, np.ndarray]:
    tri = np.zeros(indptr.size - 1, dtype=np.int64)
    total = _kernels.fast.count_triangles(indptr, indices, tri)
    return int(total), tri


def triangle_count(g: SimpleGraph) -> int:
    _, indptr, indices = _compact_csr(g)
    return _triangle_counts(indptr, indices)[0]


def global_clustering(g: SimpleGraph) -> float:
    """6 * triangles / ordered wedges; 0 when the graph has no wedge."""
    _, indptr, indices = _compact_csr(g)
    deg = np.diff(indptr)
    wedges = int(np.sum(deg * (deg - 1)))
    if wedges == 0:
        return 0.0
    return 6.0 * _triangle_counts(indptr, indices)[0] / wedges


def mean_local_clustering(g: SimpleGraph) -> float:
    """Mean over the full id space of 2*tri(u)/(d(d-1)).

    Nodes of degree < 2, including never-touched ids, score 0.
    """
    _, indptr, indices = _compact_csr(g)
    deg = np.diff(indptr)
    if deg.size == 0 or g.num_nodes == 0:
        return 0.0
    _, tri = _triangle_counts(indptr, indices)
    denom = deg * (deg - 1)
    local = np.divide(2.0 * tri, denom, out=np.zeros(deg.size), where=denom > 0)
    return float(local.sum() / g.num_nodes)


def largest_component(g: SimpleGraph) -> int:
    """Size of the largest connected component among degree >= 1 nodes."""
    nodes, indptr, indices = _compact_csr(g)
    if nodes.size == 0:
        return 0
    adj = csr_matrix(
        (np.ones(indices.size, dtype=np.int8), indices, indptr),
        shape=(nodes.size, nodes.size))
    _, labels = connected_components(adj, directed=False)
    return int(np.bincount(labels).max())


def degree_histogram(g: SimpleGraph) -> dict[int, int]:
    """Degree -> node count over touched nodes (degree >= 1)."""
    _, indptr, _ = _compact_csr(g)
    deg = np.diff(indptr)
    vals, counts = np.unique(deg, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def degree_histogram_by_parity(g: SimpleGraph) -> tuple[dict[int, int], dict[int, int]]:
    """The degree histogram split into even-degree and odd-degree parts."""
    hist = degree_histogram(g)
    even = {d: c for d, c in hist.items() if d % 2 == 0}
    odd = {d: c for d, c in hist.items() if d % 2 == 1}
    return even, odd


def graph_stats(g: SimpleGraph) -> GraphStats:
    """All reported statistics in one pass over the compacted graph."""
    nodes, indptr, indices = _compact_csr(g)
    deg = np.diff(indptr)
    total_tri, tri = _triangle_counts(indptr, indices)
    wedges = int(np.sum(deg * (deg - 1)))
    gcc = 6.0 * total_tri / wedges if wedges else 0.0
    if deg.size and g.num_nodes:
        denom = deg * (deg - 1)
        local = np.divide(2.0 * tri, denom, out=np.zeros(deg.size), where=denom > 0)
        mean_local = float(local.sum() / g.num_nodes)
        adj = csr_matrix(
            (np.ones(indices.size, dtype=np.int8), indices, indptr),
            shape=(nodes.size, nodes.size))
        _, labels = connected_components(adj, directed=False)
        lcc = int(np.bincount(labels).max())
    else:
        mean_local = 0.0
        lcc = 0
    vals, counts = np.unique(deg, return_counts=True)
    return GraphStats(
        num_edges=g.num_edges,
        num_active_nodes=int(nodes.size),
        loop_count=g.loop_count,
        triangle_count=total_tri,
        wedge_count=wedges,
        global_clustering=gcc,
        mean_local_clustering=mean_local,
        largest_component=lcc,
        degree_histogram={int(v): int(c) for v, c in zip(vals, counts)})


def assemble_ffl(
    hyperedges,
    seed: int,
    motif_probs=DEFAULT_MOTIF_PROBS,
    num_nodes: int | None = None,
    randomize_roles: bool = False,
) -> SignedDigraph:
    """Expand hyperedges into signed directed feed-forward motifs.

    Each hyperedge with three distinct ids draws one of the four
    coherent types (biased by motif_probs) and places X->Y, Y->Z, X->Z
    with that type's signs, roles assigned by sorted order (or uniformly
    at random with randomize_roles).  Edges shared between motifs sum
    their signs; a net-zero sum resolves to the first-placed sign.
    Hyperedges with repeated ids are skipped and counted.
    """
    probs = np.asarray(motif_probs, dtype=np.float64)
    if probs.shape != (4,) or np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError("motif probabilities must be 4 nonnegative values summing to 1")
    triples, inferred = _as_triples(hyperedges)
    if num_nodes is None:
        num_nodes = inferred
    if num_nodes is None:
        num_nodes = int(triples.max()) + 1 if triples.size else 0
    cum = np.cumsum(probs)
    m = triples.shape[0]
    spec = rng.RngSpec(rng.op_seed(seed, rng.TAG_MOTIF), 0)
    type_draws = np.searchsorted(cum, spec.uniforms(m), side="right") if m else np.empty(0, int)
    type_draws = np.minimum(type_draws, 3)
    role_draws = (
        rng.RngSpec(rng.op_seed(seed, rng.TAG_MOTIF), 1).uniforms(m)
        if randomize_roles else None)
    acc: dict[tuple[int, int], list[int]] = {}
    type_counts = np.zeros(4, dtype=np.int64)
    degenerate = 0
    perms = list(itertools.permutations(range(3)))
    for idx in range(m):
        ids = sorted(int(x) for x in triples[idx])
        if ids[0] == ids[1] or ids[1] == ids[2]:
            degenerate += 1
            continue
        t = int(type_draws[idx])
        type_counts[t] += 1
        if role_draws is not None:
            p = perms[min(int(role_draws[idx] * 6), 5)]
            ids = [ids[p[0]], ids[p[1]], ids[p[2]]]
        x, y, z = ids
        s1, s2, s3 = FFL_SIGNS[t]
        for (u, v), s in (((x, y), s1), ((y, z), s2), ((x, z), s3)):
            slot = acc.get((u, v))
            if slot is None:
                acc[(u, v)] = [int(s), int(s)]
            else:
                slot[0] += int(s)
    edges = np.array(sorted(acc), dtype=np.int64).reshape(-1, 2)
    net = np.array([acc[(u, v)][0] for u, v in edges], dtype=np.int64)
    first = np.array([acc[(u, v)][1] for u, v in edges], dtype=np.int64)
    signs = np.where(net != 0, np.sign(net), first).astype(np.int8)
    if edges.size and edges.max() >= num_nodes:
        raise ValueError("hyperedge id out of range")
    return SignedDigraph(
        num_nodes=num_nodes, edges=edges, signs=signs, net_signs=net,
        type_counts=type_counts, degenerate_count=degenerate)


def count_ffls(g: SignedDigraph) -> tuple[int, int]:
    """Count feed-forward loops: triples with X->Y, Y->Z, X->Z present.

    Coherent iff s(X->Y) * s(Y->Z) == s(X->Z).
    """
    sign_of: dict[tuple[int, int], int] = {}
    succ: dict[int, list[tuple[int, int]]] = {}
    for (u, v), s in zip(g.edges, g.signs):
        u, v, s = int(u), int(v), int(s)
        sign_of[(u, v)] = s
        succ.setdefault(u, []).append((v, s))
    coherent = 0
    incoherent = 0
    for (x, y), s1 in sign_of.items():
        for z, s2 in succ.get(y, ()):
            s3 = sign_of.get((x, z))
            if s3 is None:
                continue
            if s1 * s2 == s3:
                coherent += 1
            else:
                incoherent += 1
    return coherent, incoherent
