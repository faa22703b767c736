"""Hot loops of the samplers and graph statistics.

This module is deliberately written in the restricted style numba can
compile (plain loops, preallocated numpy arrays, 64-bit integer
arithmetic masked explicitly) while remaining valid interpreted Python.
`hyperkron._kernels` imports it twice: once untouched as the reference
path, once with every function in KERNEL_FUNCTIONS compiled.  The two
paths produce bit-identical samples because they run the same source.

The interpreted copy additionally accepts arbitrary-precision hop
indices, which is how runs with r large enough that permutation counts
overflow 64 bits stay exact; the compiled copy is only used when counts
fit (r <= 20).

All 64-bit constants below have their top bit set so numba types them as
uint64 and never promotes mixed expressions to float.
"""
import math

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
_U53 = 2.0 ** -53
_U54 = 2.0 ** -54
# Probability below which a region is sampled with a single Bernoulli
# draw for "any hit at all" instead of geometric hopping.
TINY_REGION = 1e-12


def rng_raw(state):
    """Advance a splitmix64 stream: returns (64 mixed bits, new state)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31), state


def to_unit(z):
    """64 random bits to a double in the open interval (0, 1)."""
    return (z >> 11) * _U53 + _U54


def perm_count_sorted(s, r):
    """Permutation count of a sorted multiset via the exact multinomial
    recurrence t -> t * i / run; every division is exact and intermediates
    stay below (r)! so int64 suffices for r <= 20."""
    t = 1
    run = 1
    for idx in range(1, r):
        if s[idx] == s[idx - 1]:
            run += 1
        else:
            run = 1
        t = t * (idx + 1) // run
    return t


def build_distinct(s, r, vals, cnts):
    """Collapse a sorted multiset into (value, multiplicity) arrays."""
    nd = 0
    for l in range(r):
        e = s[l]
        if nd > 0 and vals[nd - 1] == e:
            cnts[nd - 1] += 1
        else:
            vals[nd] = e
            cnts[nd] = 1
            nd += 1
    return nd


def unrank_into(vals, cnts, nd, total, r, x, out):
    """Write the x-th lexicographic permutation of the multiset into out.

    `cnts` is consumed.  The count of permutations opening with a value is
    total * count / length; the split q * c + (rem * c) / length keeps the
    exact division inside 64 bits for r <= 20.
    """
    length = r
    for pos in range(r):
        for di in range(nd):
            c = cnts[di]
            if c == 0:
                continue
            q = total // length
            rem = total - q * length
            opening = q * c + (rem * c) // length
            if x < opening:
                out[pos] = vals[di]
                cnts[di] = c - 1
                total = opening
                length -= 1
                break
            x -= opening


def emit_cell_3d(n, r, levels, uniform_levels, symmetric, pbar, state,
                 vals, cnts0, cnts, nd, t, x, perm, ei, ej, ek,
                 out_i, out_j, out_k, kept):
    """Materialize hop index x as a cell; filter and append.

    Returns (new kept, new rng state).  In symmetric mode unordered
    duplicates (cells with i <= j <= k violated) are dropped before any
    acceptance draw; with non-uniform levels a thinning draw keeps the
    cell with probability (true product) / pbar.
    """
    for di in range(nd):
        cnts[di] = cnts0[di]
    unrank_into(vals, cnts, nd, t, r, x, perm)
    ii = 0
    jj = 0
    kk = 0
    for l in range(r):
        e = perm[l]
        ii = ii * n + ei[e]
        jj = jj * n + ej[e]
        kk = kk * n + ek[e]
    if symmetric and (ii > jj or jj > kk):
        return kept, state
    if not uniform_levels:
        ptrue = 1.0
        for l in range(r):
            ptrue *= levels[l, perm[l]]
        z, state = rng_raw(state)
        if to_unit(z) * pbar >= ptrue:
            return kept, state
    out_i[kept] = ii
    out_j[kept] = jj
    out_k[kept] = kk
    return kept + 1, state


def sample_cells_3d(n, r, levels, vmax, uniform_levels, symmetric, seed, ei, ej, ek):
    """Bernoulli-sample every cell of the power tensor by region hopping.

    Regions (multisets over the n^3 initiator indices) are enumerated in
    lexicographic order; each gets its own counter-based stream so the
    result is independent of any work partitioning.  Within a region the
    per-cell probability is constant at pbar = prod(vmax[digit]), and hop
    gaps are geometric.  Returns (rows, cols, slices, candidate_count).
    """
    m = n * n * n
    s = np.zeros(r, np.int64)
    vals = np.empty(r, np.int64)
    cnts0 = np.empty(r, np.int64)
    cnts = np.empty(r, np.int64)
    perm = np.empty(r, np.int64)
    cap = 1024
    out_i = np.empty(cap, np.int64)
    out_j = np.empty(cap, np.int64)
    out_k = np.empty(cap, np.int64)
    kept = 0
    hits = 0
    base = seed
    while True:
        base = (base + 0xD1B54A32D192ED03) & MASK64
        pbar = 1.0
        for l in range(r):
            pbar *= vmax[s[l]]
        if pbar > 0.0:
            t = perm_count_sorted(s, r)
            nd = build_distinct(s, r, vals, cnts0)
            state = base
            if pbar >= 1.0:
                for x in range(t):
                    hits += 1
                    if kept == cap:
                        cap = cap * 2
                        tmp = np.empty(cap, np.int64)
                        tmp[:kept] = out_i
                        out_i = tmp
                        tmp = np.empty(cap, np.int64)
                        tmp[:kept] = out_j
                        out_j = tmp
                        tmp = np.empty(cap, np.int64)
                        tmp[:kept] = out_k
                        out_k = tmp
                    kept, state = emit_cell_3d(
                        n, r, levels, uniform_levels, symmetric, pbar, state,
                        vals, cnts0, cnts, nd, t, x, perm, ei, ej, ek,
                        out_i, out_j, out_k, kept)
            else:
                tf = float(t)
                l1m = math.log1p(-pbar)
                if pbar * tf < TINY_REGION:
                    z, state = rng_raw(state)
                    if to_unit(z) < -math.expm1(tf * l1m):
                        z, state = rng_raw(state)
                        x = int(to_unit(z) * tf)
                        if x >= t:
                            x = t - 1
                        hits += 1
                        if kept == cap:
                            cap = cap * 2
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_i
                            out_i = tmp
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_j
                            out_j = tmp
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_k
                            out_k = tmp
                        kept, state = emit_cell_3d(
                            n, r, levels, uniform_levels, symmetric, pbar, state,
                            vals, cnts0, cnts, nd, t, x, perm, ei, ej, ek,
                            out_i, out_j, out_k, kept)
                else:
                    x = -1
                    while True:
                        z, state = rng_raw(state)
                        gap = math.floor(math.log(to_unit(z)) / l1m) + 1.0
                        if gap > float(t - 1 - x):
                            break
                        x = x + int(gap)
                        hits += 1
                        if kept == cap:
                            cap = cap * 2
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_i
                            out_i = tmp
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_j
                            out_j = tmp
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_k
                            out_k = tmp
                        kept, state = emit_cell_3d(
                            n, r, levels, uniform_levels, symmetric, pbar, state,
                            vals, cnts0, cnts, nd, t, x, perm, ei, ej, ek,
                            out_i, out_j, out_k, kept)
        pos = r - 1
        while pos >= 0 and s[pos] == m - 1:
            pos -= 1
        if pos < 0:
            break
        nxt = s[pos] + 1
        for l in range(pos, r):
            s[l] = nxt
    return out_i[:kept].copy(), out_j[:kept].copy(), out_k[:kept].copy(), hits


def cell_frequency_3d(n, r, levels, vmax, uniform_levels, symmetric, seeds,
                      side, ei, ej, ek, counts):
    """Accumulate per-cell inclusion counts over many replicate samples."""
    for rep in range(seeds.shape[0]):
        ii, jj, kk, _ = sample_cells_3d(
            n, r, levels, vmax, uniform_levels, symmetric, seeds[rep], ei, ej, ek)
        for idx in range(ii.shape[0]):
            counts[(ii[idx] * side + jj[idx]) * side + kk[idx]] += 1


def emit_cell_2d(n, r, levels, uniform_levels, pbar, state,
                 vals, cnts0, cnts, nd, t, x, perm, ei, ej,
                 out_u, out_v, kept):
    """2-d analogue of emit_cell_3d for matrix Kronecker sampling."""
    for di in range(nd):
        cnts[di] = cnts0[di]
    unrank_into(vals, cnts, nd, t, r, x, perm)
    uu = 0
    vv = 0
    for l in range(r):
        e = perm[l]
        uu = uu * n + ei[e]
        vv = vv * n + ej[e]
    if not uniform_levels:
        ptrue = 1.0
        for l in range(r):
            ptrue *= levels[l, perm[l]]
        z, state = rng_raw(state)
        if to_unit(z) * pbar >= ptrue:
            return kept, state
    out_u[kept] = uu
    out_v[kept] = vv
    return kept + 1, state


def sample_cells_2d(n, r, levels, vmax, uniform_levels, seed, ei, ej):
    """Region-hopping Bernoulli sampler for an n x n matrix Kronecker power."""
    m = n * n
    s = np.zeros(r, np.int64)
    vals = np.empty(r, np.int64)
    cnts0 = np.empty(r, np.int64)
    cnts = np.empty(r, np.int64)
    perm = np.empty(r, np.int64)
    cap = 1024
    out_u = np.empty(cap, np.int64)
    out_v = np.empty(cap, np.int64)
    kept = 0
    hits = 0
    base = seed
    while True:
        base = (base + 0xD1B54A32D192ED03) & MASK64
        pbar = 1.0
        for l in range(r):
            pbar *= vmax[s[l]]
        if pbar > 0.0:
            t = perm_count_sorted(s, r)
            nd = build_distinct(s, r, vals, cnts0)
            state = base
            if pbar >= 1.0:
                for x in range(t):
                    hits += 1
                    if kept == cap:
                        cap = cap * 2
                        tmp = np.empty(cap, np.int64)
                        tmp[:kept] = out_u
                        out_u = tmp
                        tmp = np.empty(cap, np.int64)
                        tmp[:kept] = out_v
                        out_v = tmp
                    kept, state = emit_cell_2d(
                        n, r, levels, uniform_levels, pbar, state,
                        vals, cnts0, cnts, nd, t, x, perm, ei, ej,
                        out_u, out_v, kept)
            else:
                tf = float(t)
                l1m = math.log1p(-pbar)
                if pbar * tf < TINY_REGION:
                    z, state = rng_raw(state)
                    if to_unit(z) < -math.expm1(tf * l1m):
                        z, state = rng_raw(state)
                        x = int(to_unit(z) * tf)
                        if x >= t:
                            x = t - 1
                        hits += 1
                        if kept == cap:
                            cap = cap * 2
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_u
                            out_u = tmp
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_v
                            out_v = tmp
                        kept, state = emit_cell_2d(
                            n, r, levels, uniform_levels, pbar, state,
                            vals, cnts0, cnts, nd, t, x, perm, ei, ej,
                            out_u, out_v, kept)
                else:
                    x = -1
                    while True:
                        z, state = rng_raw(state)
                        gap = math.floor(math.log(to_unit(z)) / l1m) + 1.0
                        if gap > float(t - 1 - x):
                            break
                        x = x + int(gap)
                        hits += 1
                        if kept == cap:
                            cap = cap * 2
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_u
                            out_u = tmp
                            tmp = np.empty(cap, np.int64)
                            tmp[:kept] = out_v
                            out_v = tmp
                        kept, state = emit_cell_2d(
                            n, r, levels, uniform_levels, pbar, state,
                            vals, cnts0, cnts, nd, t, x, perm, ei, ej,
                            out_u, out_v, kept)
        pos = r - 1
        while pos >= 0 and s[pos] == m - 1:
            pos -= 1
        if pos < 0:
            break
        nxt = s[pos] + 1
        for l in range(pos, r):
            s[l] = nxt
    return out_u[:kept].copy(), out_v[:kept].copy(), hits


def sample_er_pairs(num_nodes, p, seed):
    """Geometric-skip sampling of unordered pairs, each kept w.p. p.

    Pairs {u < v} are laid out row-major; a linear index decodes through
    the row offsets off(u) = u*N - u*(u+1)/2.
    """
    total = num_nodes * (num_nodes - 1) // 2
    cap = 1024
    out_u = np.empty(cap, np.int64)
    out_v = np.empty(cap, np.int64)
    kept = 0
    if total == 0 or p <= 0.0:
        return out_u[:0].copy(), out_v[:0].copy()
    base = (seed + 0xD1B54A32D192ED03) & MASK64
    state = base
    x = -1
    nf = float(num_nodes)
    while True:
        if p >= 1.0:
            gap = 1.0
        else:
            z, state = rng_raw(state)
            gap = math.floor(math.log(to_unit(z)) / math.log1p(-p)) + 1.0
        if gap > float(total - 1 - x):
            break
        x = x + int(gap)
        u = int(math.floor(nf - 0.5 - math.sqrt((nf - 0.5) * (nf - 0.5) - 2.0 * x)))
        if u < 0:
            u = 0
        while (u + 1) * num_nodes - (u + 1) * (u + 2) // 2 <= x:
            u += 1
        while u * num_nodes - u * (u + 1) // 2 > x:
            u -= 1
        v = x - (u * num_nodes - u * (u + 1) // 2) + u + 1
        if kept == cap:
            cap = cap * 2
            tmp = np.empty(cap, np.int64)
            tmp[:kept] = out_u
            out_u = tmp
            tmp = np.empty(cap, np.int64)
            tmp[:kept] = out_v
            out_v = tmp
        out_u[kept] = u
        out_v[kept] = v
        kept += 1
    return out_u[:kept].copy(), out_v[:kept].copy()


def count_triangles(indptr, indices, tri):
    """Count triangles on a CSR adjacency with sorted neighbor lists.

    Each triangle {u < v < w} is found once from its smallest edge (u, v);
    per-node incidence counts accumulate into tri.  Returns the total.
    """
    total = 0
    n = indptr.shape[0] - 1
    for u in range(n):
        for ui in range(indptr[u], indptr[u + 1]):
            v = indices[ui]
            if v <= u:
                continue
            a = ui + 1
            b = indptr[v]
            ae = indptr[u + 1]
            be = indptr[v + 1]
            while b < be and indices[b] <= v:
                b += 1
            while a < ae and b < be:
                wa = indices[a]
                wb = indices[b]
                if wa < wb:
                    a += 1
                elif wb < wa:
                    b += 1
                else:
                    total += 1
                    tri[u] += 1
                    tri[v] += 1
                    tri[wa] += 1
                    a += 1
                    b += 1
    return total


def entry_product_3d(v, n, r, x, y, z):
    """Kronecker-power entry (x, y, z) from the vectorized initiator."""
    p = 1.0
    for _ in range(r):
        p *= v[(x % n) + n * (y % n) + n * n * (z % n)]
        x //= n
        y //= n
        z //= n
    return p


def exact_edge_expectation(n, r, v, symmetric):
    """Exact expected edge count of the assembled graph on a small instance.

    For each node pair {i, j} the edge appears unless every cell whose
    index multiset contains both i and j misses; eligible cells are the
    sorted arrangements in symmetric mode and all arrangements otherwise.
    Cost is O(N^3 r), so callers guard N.
    """
    N = 1
    for _ in range(r):
        N *= n
    total = 0.0
    for i in range(N):
        for j in range(i + 1, N):
            surv = 1.0
            for t in range(N):
                if symmetric:
                    if t <= i:
                        surv *= 1.0 - entry_product_3d(v, n, r, t, i, j)
                    elif t <= j:
                        surv *= 1.0 - entry_product_3d(v, n, r, i, t, j)
                    else:
                        surv *= 1.0 - entry_product_3d(v, n, r, i, j, t)
                else:
                    if t == i:
                        surv *= (1.0 - entry_product_3d(v, n, r, i, i, j)) \
                            * (1.0 - entry_product_3d(v, n, r, i, j, i)) \
                            * (1.0 - entry_product_3d(v, n, r, j, i, i))
                    elif t == j:
                        surv *= (1.0 - entry_product_3d(v, n, r, i, j, j)) \
                            * (1.0 - entry_product_3d(v, n, r, j, i, j)) \
                            * (1.0 - entry_product_3d(v, n, r, j, j, i))
                    else:
                        surv *= (1.0 - entry_product_3d(v, n, r, i, j, t)) \
                            * (1.0 - entry_product_3d(v, n, r, i, t, j)) \
                            * (1.0 - entry_product_3d(v, n, r, t, i, j)) \
                            * (1.0 - entry_product_3d(v, n, r, j, i, t)) \
                            * (1.0 - entry_product_3d(v, n, r, j, t, i)) \
                            * (1.0 - entry_product_3d(v, n, r, t, j, i))
            total += 1.0 - surv
    return total


KERNEL_FUNCTIONS = [
    "rng_raw",
    "to_unit",
    "perm_count_sorted",
    "build_distinct",
    "unrank_into",
    "emit_cell_3d",
    "sample_cells_3d",
    "cell_frequency_3d",
    "emit_cell_2d",
    "sample_cells_2d",
    "sample_er_pairs",
    "count_triangles",
    "entry_product_3d",
    "exact_edge_expectation",
]
