"""Samplers: hyperedges from tensor powers, edges from matrix powers,
and plain uniform pairs.

The fast path walks constant-probability regions with geometric skips in
O(hyperedges * r^2) total work; the naive path flips every cell and is
kept as an oracle for small instances.  Identical (params, seed) always
produce identical output regardless of compilation mode or scheduling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, rng
from .tensor import InitiatorTensor, ModelParams, kron_power_dense, vectorize

# The naive sampler touches every one of the n^(3r) cells.
NAIVE_CELL_LIMIT = 1 << 27


def _digit_tables_3d(n: int):
    ids = np.arange(n ** 3, dtype=np.int64)
    return ids % n, (ids // n) % n, ids // (n * n)


def _digit_tables_2d(n: int):
    ids = np.arange(n * n, dtype=np.int64)
    return ids % n, ids // n


def _seed_arg(kern, seed: int):
    """Compiled kernels take the stream seed as uint64, interpreted as int."""
    if kern is _kernels.pure:
        return int(seed)
    return np.uint64(seed)


@dataclass(frozen=True)
class HyperedgeList:
    """Sampled hyperedges (rows i, j, k) plus generation metadata."""

    triples: np.ndarray
    n: int
    r: int
    seed: int
    symmetric_mode: bool
    sigma: float = 0.0
    candidates: int = 0

    @property
    def num_nodes(self) -> int:
        return self.n ** self.r

    def __len__(self) -> int:
        return self.triples.shape[0]


@dataclass(frozen=True)
class EdgeSample:
    """Sampled directed cells (u, v) of a matrix power, plus metadata."""

    pairs: np.ndarray
    num_nodes: int
    seed: int
    sigma: float = 0.0


@dataclass(frozen=True)
class NoisyLevels:
    """Per-level perturbed copies of a symmetric 2x2x2 initiator.

    levels[l] is the column-major vector of the tensor used at Kronecker
    level l (level 0 outermost).  The perturbation keeps each level's
    total mass a + 3b + 3c + d unchanged.
    """

    levels: np.ndarray
    sigma: float
    mu: np.ndarray
    nu: np.ndarray
    clamped: bool

    @property
    def r(self) -> int:
        return self.levels.shape[0]


def _sorted_triples(ii, jj, kk) -> np.ndarray:
    order = np.lexsort((kk, jj, ii))
    return np.column_stack((ii, jj, kk))[order]


def sample_hyperedges(
    params: ModelParams, seed: int, force_pure: bool = False
) -> HyperedgeList:
    """Draw one hyperedge sample: cell (i, j, k) appears with probability
    equal to its Kronecker-power entry, independently of all others."""
    v = vectorize(params.tensor)
    n, r = params.tensor.n, params.r
    kern = _kernels.select(r, force_pure)
    ei, ej, ek = _digit_tables_3d(n)
    sd = rng.op_seed(seed, rng.TAG_SAMPLE)
    ii, jj, kk, hits = kern.sample_cells_3d(
        n, r, v.reshape(1, -1), v, True, params.symmetric_mode,
        _seed_arg(kern, sd), ei, ej, ek)
    return HyperedgeList(
        triples=_sorted_triples(ii, jj, kk),
        n=n, r=r, seed=seed, symmetric_mode=params.symmetric_mode,
        candidates=int(hits))


def sample_hyperedges_naive(params: ModelParams, seed: int) -> HyperedgeList:
    """Flip a coin for every cell of the power tensor (oracle, small N only)."""
    n, r = params.tensor.n, params.r
    N = n ** r
    if N ** 3 > NAIVE_CELL_LIMIT:
        raise ValueError(f"naive sampling over {N ** 3} cells refused")
    spec = rng.RngSpec(rng.op_seed(seed, rng.TAG_NAIVE), 0)
    probs = kron_power_dense(params.tensor, r)
    hit = spec.uniforms(N ** 3).reshape(N, N, N) < probs
    if params.symmetric_mode:
        ii, jj, kk = np.meshgrid(
            np.arange(N), np.arange(N), np.arange(N), indexing="ij")
        hit &= (jj >= ii) & (kk >= jj)
    triples = (np.column_stack(np.nonzero(hit)).astype(np.int64)
               if hit.any() else np.empty((0, 3), dtype=np.int64))
    return HyperedgeList(
        triples=triples, n=n, r=r, seed=seed,
        symmetric_mode=params.symmetric_mode)


def make_noisy_levels(
    tensor: InitiatorTensor, r: int, sigma: float, seed: int
) -> NoisyLevels:
    """Perturb a symmetric 2x2x2 initiator independently per level.

    Level l draws mu, nu uniform on [-sigma, sigma]; b and c shift by mu
    and nu while a and d give up mass proportionally, so the level total
    a + 3b + 3c + d is preserved exactly.  Requires sigma <= min(b, c);
    entries that still leave [0, 1] are clamped and flagged.
    """
    a, b, c, d = tensor.symmetric_labels()
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if sigma > min(b, c):
        raise ValueError(f"sigma {sigma} exceeds min(b, c) = {min(b, c)}")
    draws = rng.RngSpec(rng.op_seed(seed, rng.TAG_NOISE), 0).uniforms(2 * r)
    mu = (2.0 * draws[:r] - 1.0) * sigma
    nu = (2.0 * draws[r:] - 1.0) * sigma
    levels = np.empty((r, 8))
    clamped = False
    for l in range(r):
        denom = a + d
        corr = (mu[l] + nu[l]) / denom if denom > 0 else 0.0
        al = a - 3.0 * a * corr
        dl = d - 3.0 * d * corr
        bl = b + mu[l]
        cl = c + nu[l]
        vec = np.array([al, bl, bl, cl, bl, cl, cl, dl])
        if np.any(vec < 0.0) or np.any(vec > 1.0):
            clamped = True
            vec = np.clip(vec, 0.0, 1.0)
        levels[l] = vec
    return NoisyLevels(levels=levels, sigma=sigma, mu=mu, nu=nu, clamped=clamped)


def sample_hyperedges_noisy(
    noisy: NoisyLevels, symmetric_mode: bool, seed: int, force_pure: bool = False
) -> HyperedgeList:
    """Sample with per-level tensors via thinning.

    Regions hop at the upper bound prod(max over levels of each digit's
    entry); every candidate is then kept with probability true/bound.
    With sigma = 0 the bound is exact, no thinning draws are consumed,
    and the output matches sample_hyperedges bit for bit.
    """
    r = noisy.r
    kern = _kernels.select(r, force_pure)
    ei, ej, ek = _digit_tables_3d(2)
    vmax = noisy.levels.max(axis=0)
    uniform = bool(np.all(noisy.levels == noisy.levels[0]))
    sd = rng.op_seed(seed, rng.TAG_SAMPLE)
    ii, jj, kk, hits = kern.sample_cells_3d(
        2, r, noisy.levels, vmax, uniform, symmetric_mode,
        _seed_arg(kern, sd), ei, ej, ek)
    return HyperedgeList(
        triples=_sorted_triples(ii, jj, kk),
        n=2, r=r, seed=seed, symmetric_mode=symmetric_mode,
        sigma=noisy.sigma, candidates=int(hits))


def cell_inclusion_counts(
    params: ModelParams,
    master_seed: int,
    replicates: int,
    noisy: NoisyLevels | None = None,
    force_pure: bool = False,
) -> np.ndarray:
    """Per-cell hit counts over many replicate samples (validation aid).

    Replicate k runs under derive_seed(master_seed, k).  Returns an
    (N, N, N) array of counts; N^3 is capped well below the naive limit.
    """
    n, r = params.tensor.n, params.r
    N = n ** r
    if N ** 3 > (1 << 24):
        raise ValueError("cell counting wants a small instance")
    if noisy is None:
        levels = vectorize(params.tensor).reshape(1, -1)
        vmax = levels[0]
        uniform = True
    else:
        levels = noisy.levels
        vmax = levels.max(axis=0)
        uniform = bool(np.all(levels == levels[0]))
    kern = _kernels.select(r, force_pure)
    ei, ej, ek = _digit_tables_3d(n)
    seeds = [
        rng.op_seed(rng.derive_seed(master_seed, k), rng.TAG_SAMPLE)
        for k in range(replicates)
    ]
    counts = np.zeros(N ** 3, dtype=np.int64)
    if kern is _kernels.pure:
        for sd in seeds:
            ii, jj, kk, _ = kern.sample_cells_3d(
                n, r, levels, vmax, uniform, params.symmetric_mode,
                int(sd), ei, ej, ek)
            np.add.at(counts, (ii * N + jj) * N + kk, 1)
    else:
        kern.cell_frequency_3d(
            n, r, levels, vmax, uniform, params.symmetric_mode,
            np.array(seeds, dtype=np.uint64), N, ei, ej, ek, counts)
    return counts.reshape(N, N, N)


def make_noisy_kron_levels(
    initiator: np.ndarray, r: int, sigma: float, seed: int
) -> tuple[np.ndarray, np.ndarray, bool]:
    """Matrix analogue of make_noisy_levels with a single mu per level.

    Off-diagonal entries shift by mu, the diagonal gives up 2*a*mu/(a+d)
    and 2*d*mu/(a+d), preserving the level total.  Returns (levels as
    (r, 4) column-major vectors, mu, clamped flag).
    """
    m = np.asarray(initiator, dtype=np.float64)
    if m.shape != (2, 2):
        raise ValueError("noise perturbation is defined for 2x2 initiators")
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if sigma > min(b, c):
        raise ValueError(f"sigma {sigma} exceeds min(b, c) = {min(b, c)}")
    mu = (2.0 * rng.RngSpec(rng.op_seed(seed, rng.TAG_NOISE), 1).uniforms(r) - 1.0) * sigma
    levels = np.empty((r, 4))
    clamped = False
    for l in range(r):
        denom = a + d
        corr = 2.0 * mu[l] / denom if denom > 0 else 0.0
        vec = np.array([a - a * corr, c + mu[l], b + mu[l], d - d * corr])
        if np.any(vec < 0.0) or np.any(vec > 1.0):
            clamped = True
            vec = np.clip(vec, 0.0, 1.0)
        levels[l] = vec
    return levels, mu, clamped


def sample_kronecker_edges(
    initiator: np.ndarray,
    r: int,
    seed: int,
    levels: np.ndarray | None = None,
    force_pure: bool = False,
) -> EdgeSample:
    """Bernoulli-sample the cells of an n x n matrix Kronecker power.

    `levels` optionally supplies per-level matrices (as (r, n^2)
    column-major vectors, e.g. from make_noisy_kron_levels); otherwise
    all levels share the initiator.
    """
    m = np.asarray(initiator, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("initiator must be square")
    if np.any(m < 0.0) or np.any(m > 1.0):
        raise ValueError("initiator entries must lie in [0, 1]")
    n = m.shape[0]
    if n ** (2 * r) > (1 << 63):
        raise ValueError("pair index space exceeds 64 bits")
    v = m.ravel(order="F")
    if levels is None:
        levels = v.reshape(1, -1)
        vmax = v
        uniform = True
        sigma = 0.0
    else:
        levels = np.asarray(levels, dtype=np.float64)
        vmax = levels.max(axis=0)
        uniform = bool(np.all(levels == levels[0]))
        sigma = float(np.max(np.abs(levels - v.reshape(1, -1)))) if not uniform else 0.0
    kern = _kernels.select(r, force_pure)
    ei, ej = _digit_tables_2d(n)
    sd = rng.op_seed(seed, rng.TAG_KRON2D)
    uu, vv, _ = kern.sample_cells_2d(
        n, r, levels, vmax, uniform, _seed_arg(kern, sd), ei, ej)
    order = np.lexsort((vv, uu))
    return EdgeSample(
        pairs=np.column_stack((uu, vv))[order],
        num_nodes=n ** r, seed=seed, sigma=sigma)


def sample_erdos_renyi(num_nodes: int, expected_edges: float, seed: int) -> EdgeSample:
    """Uniform pair sampling: each of the C(N, 2) pairs appears with the
    probability that makes the expected count hit the target."""
    if num_nodes < 0 or num_nodes > (1 << 31):
        raise ValueError("node count out of supported range")
    total = num_nodes * (num_nodes - 1) // 2
    if expected_edges < 0:
        raise ValueError("expected edge count must be nonnegative")
    p = min(1.0, expected_edges / total) if total else 0.0
    kern = _kernels.fast
    sd = rng.op_seed(seed, rng.TAG_ER)
    uu, vv = kern.sample_er_pairs(num_nodes, p, _seed_arg(kern, sd))
    return EdgeSample(
        pairs=np.column_stack((uu, vv)), num_nodes=num_nodes, seed=seed)
