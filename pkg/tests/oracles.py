"""Reference implementations the tests compare the package against.

Everything here is written the slow, obvious way on purpose and imports
nothing from hyperkron, so an agreement failure always points at the
package.  Sizes are kept small by the callers (materialized tensors grow
as n^(3r)).
"""
import itertools

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64_sequence(state: int, count: int) -> list[int]:
    """Vigna's splitmix64 reference: repeatedly add the increment, mix."""
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        out.append(z ^ (z >> 31))
    return out


def kron3_power(p: np.ndarray, r: int) -> np.ndarray:
    """Materialize the r-fold Kronecker power of an n x n x n tensor.

    Index digits are most-significant-first: digit 0 of every axis comes
    from the first (leftmost) factor.
    """
    t = np.array(p, dtype=float)
    for _ in range(r - 1):
        n = t.shape[0]
        t = np.einsum("ijk,abc->iajbkc", t, np.asarray(p, float)).reshape(
            n * p.shape[0], n * p.shape[1], n * p.shape[2])
    return t


def kron3_levels(levels: list[np.ndarray]) -> np.ndarray:
    """Materialize a product of distinct per-level tensors, level 0 outermost."""
    t = np.array(levels[0], dtype=float)
    for lev in levels[1:]:
        n = t.shape[0]
        m = lev.shape[0]
        t = np.einsum("ijk,abc->iajbkc", t, np.asarray(lev, float)).reshape(
            n * m, n * m, n * m)
    return t


def kron2_levels(levels: list[np.ndarray]) -> np.ndarray:
    """Matrix analogue of kron3_levels via numpy's own kron."""
    t = np.array(levels[0], dtype=float)
    for lev in levels[1:]:
        t = np.kron(t, np.asarray(lev, float))
    return t


def all_multisets(alphabet_size: int, r: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations_with_replacement(range(alphabet_size), r))


def perms_of(multiset) -> list[tuple[int, ...]]:
    """All distinct arrangements of a multiset in lexicographic order."""
    return sorted(set(itertools.permutations(multiset)))


def cell_pairs(i: int, j: int, k: int) -> set[tuple[int, int]]:
    """Non-loop undirected node pairs a triangle on (i, j, k) would place."""
    out = set()
    for u, v in ((i, j), (j, k), (i, k)):
        if u != v:
            out.add((min(u, v), max(u, v)))
    return out


def expected_edges_brute(t: np.ndarray, symmetric: bool) -> float:
    """Exact expected distinct edge count from a materialized power tensor.

    Walks every cell, accumulating per-pair survival products; symmetric
    mode restricts to cells with i <= j <= k.
    """
    size = t.shape[0]
    survival = {}
    for i in range(size):
        for j in range(size):
            for k in range(size):
                if symmetric and not (i <= j <= k):
                    continue
                p = t[i, j, k]
                if p == 0.0:
                    continue
                for pair in cell_pairs(i, j, k):
                    survival[pair] = survival.get(pair, 1.0) * (1.0 - p)
    return sum(1.0 - s for s in survival.values())


def triangles_brute(num_nodes: int, edges: np.ndarray) -> tuple[int, np.ndarray]:
    """Triangle total and per-node triangle counts by triple enumeration."""
    adj = [set() for _ in range(num_nodes)]
    for u, v in edges:
        adj[int(u)].add(int(v))
        adj[int(v)].add(int(u))
    per = np.zeros(num_nodes, dtype=np.int64)
    total = 0
    nodes = [u for u in range(num_nodes) if adj[u]]
    for u, v, w in itertools.combinations(nodes, 3):
        if v in adj[u] and w in adj[u] and w in adj[v]:
            total += 1
            per[u] += 1
            per[v] += 1
            per[w] += 1
    return total, per


def clustering_brute(num_nodes: int, edges: np.ndarray) -> tuple[float, float]:
    """(global, mean local over all ids) clustering, degree from scratch."""
    deg = np.zeros(num_nodes, dtype=np.int64)
    for u, v in edges:
        deg[int(u)] += 1
        deg[int(v)] += 1
    total, per = triangles_brute(num_nodes, edges)
    wedges = int(np.sum(deg * (deg - 1)))
    gcc = 6.0 * total / wedges if wedges else 0.0
    local = 0.0
    for u in range(num_nodes):
        if deg[u] >= 2:
            local += 2.0 * per[u] / (deg[u] * (deg[u] - 1))
    return gcc, local / num_nodes


def largest_component_brute(num_nodes: int, edges: np.ndarray) -> int:
    adj = {}
    for u, v in edges:
        adj.setdefault(int(u), set()).add(int(v))
        adj.setdefault(int(v), set()).add(int(u))
    seen = set()
    best = 0
    for start in adj:
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        size = 0
        while stack:
            x = stack.pop()
            size += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        best = max(best, size)
    return best


def count_ffls_brute(edges: np.ndarray, signs: np.ndarray) -> tuple[int, int]:
    """Coherent/incoherent feed-forward loop counts by dictionary lookup."""
    sign_of = {}
    succ = {}
    for (u, v), s in zip(edges, signs):
        sign_of[(int(u), int(v))] = int(s)
        succ.setdefault(int(u), []).append(int(v))
    coherent = 0
    incoherent = 0
    for (x, y), s1 in sign_of.items():
        for z in succ.get(y, ()):
            s3 = sign_of.get((x, z))
            if s3 is None:
                continue
            if s1 * sign_of[(y, z)] == s3:
                coherent += 1
            else:
                incoherent += 1
    return coherent, incoherent
