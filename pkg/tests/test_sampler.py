import numpy as np
import pytest

from hyperkron import InitiatorTensor, ModelParams, rng, sampler
from hyperkron import _kernels

import oracles


def _params(a, b, c, d, r, symmetric=False):
    return ModelParams(InitiatorTensor.symmetric_2x2x2(a, b, c, d), r,
                       symmetric_mode=symmetric)


def _freq_ok(counts, probs, reps, z=4.0, share=0.99):
    """Fraction of cells whose hit frequency sits within z binomial SEs."""
    se = np.sqrt(np.maximum(probs * (1.0 - probs), 1e-12) / reps)
    ok = np.abs(counts / reps - probs) <= z * se + 1e-12
    return ok.mean() >= share


def test_fast_and_pure_paths_are_bit_identical():
    p = _params(0.9, 0.35, 0.2, 0.05, 6)
    a = sampler.sample_hyperedges(p, 42)
    b = sampler.sample_hyperedges(p, 42, force_pure=True)
    assert a.triples.tolist() == b.triples.tolist()
    assert len(a) > 0


def test_sampling_is_deterministic_and_seed_sensitive():
    p = _params(0.9, 0.35, 0.2, 0.05, 6)
    a = sampler.sample_hyperedges(p, 7)
    b = sampler.sample_hyperedges(p, 7)
    c = sampler.sample_hyperedges(p, 8)
    assert a.triples.tolist() == b.triples.tolist()
    assert a.triples.tolist() != c.triples.tolist()


def test_triples_in_canonical_row_order_without_duplicates():
    # rows are raw cell coordinates (only symmetric mode restricts them to
    # i <= j <= k) but their order is canonical and cells never repeat
    p = _params(0.9, 0.35, 0.25, 0.05, 5)
    hl = sampler.sample_hyperedges(p, 3)
    t = hl.triples
    keys = (t[:, 0] * hl.num_nodes + t[:, 1]) * hl.num_nodes + t[:, 2]
    assert np.all(np.diff(keys) > 0)  # strictly increasing: no duplicates
    sym = sampler.sample_hyperedges(_params(0.9, 0.35, 0.25, 0.05, 5, True), 3)
    t = sym.triples
    assert np.all(t[:, 0] <= t[:, 1]) and np.all(t[:, 1] <= t[:, 2])


def test_zero_tensor_yields_nothing():
    p = _params(0.0, 0.0, 0.0, 0.0, 8)
    assert len(sampler.sample_hyperedges(p, 1)) == 0


def test_all_ones_tensor_yields_every_cell():
    p = _params(1.0, 1.0, 1.0, 1.0, 2, symmetric=True)
    hl = sampler.sample_hyperedges(p, 0)
    want = [(i, j, k) for i in range(4) for j in range(i, 4) for k in range(j, 4)]
    assert [tuple(row) for row in hl.triples] == want


def test_cell_frequencies_match_power_tensor():
    reps = 3000
    rs = np.random.default_rng(2024_0200)
    t = InitiatorTensor.from_vector(2, rs.uniform(0.0, 0.9, size=8))
    p = ModelParams(t, 2, symmetric_mode=False)
    counts = sampler.cell_inclusion_counts(p, 11, reps)
    probs = oracles.kron3_power(t.entries, 2)
    assert _freq_ok(counts, probs, reps)


def test_cell_frequencies_pure_path_agrees_exactly():
    t = InitiatorTensor.symmetric_2x2x2(0.9, 0.4, 0.3, 0.1)
    p = ModelParams(t, 2, symmetric_mode=False)
    fast = sampler.cell_inclusion_counts(p, 5, 50)
    pure = sampler.cell_inclusion_counts(p, 5, 50, force_pure=True)
    assert fast.tolist() == pure.tolist()


def test_symmetric_mode_restricts_and_matches_sorted_cells():
    reps = 3000
    t = InitiatorTensor.symmetric_2x2x2(0.9, 0.4, 0.3, 0.1)
    p = ModelParams(t, 2, symmetric_mode=True)
    counts = sampler.cell_inclusion_counts(p, 13, reps)
    probs = oracles.kron3_power(t.entries, 2)
    i, j, k = np.indices(counts.shape, sparse=True)
    sorted_mask = np.broadcast_to((i <= j) & (j <= k), counts.shape)
    assert counts[~sorted_mask].sum() == 0
    assert _freq_ok(counts[sorted_mask], probs[sorted_mask], reps)


def test_naive_sampler_matches_power_tensor():
    reps = 2000
    t = InitiatorTensor.symmetric_2x2x2(0.9, 0.4, 0.3, 0.1)
    p = ModelParams(t, 2, symmetric_mode=False)
    N = 4
    counts = np.zeros((N, N, N), dtype=np.int64)
    for k in range(reps):
        hl = sampler.sample_hyperedges_naive(p, rng.derive_seed(77, k))
        # naive emits raw cell coordinates; recount before triple sorting
        # is not possible from the public list, so use unsorted=False cells
        for i, j, kk in hl.triples:
            counts[i, j, kk] += 1
    probs = oracles.kron3_power(t.entries, 2)
    assert _freq_ok(counts, probs, reps)


def test_naive_sampler_refuses_large_instances():
    p = _params(0.5, 0.5, 0.5, 0.5, 12)
    with pytest.raises(ValueError):
        sampler.sample_hyperedges_naive(p, 0)


def test_mean_count_tracks_expectation_in_symmetric_mode():
    # n=2, r=3 symmetric: mean hyperedge count over 2000 runs within 4
    # sigma of the sum of sorted-cell probabilities
    t = InitiatorTensor.symmetric_2x2x2(0.9, 0.3, 0.2, 0.1)
    p = ModelParams(t, 3, symmetric_mode=True)
    probs = oracles.kron3_power(t.entries, 3)
    i, j, k = np.indices(probs.shape, sparse=True)
    mask = np.broadcast_to((i <= j) & (j <= k), probs.shape)
    mean = probs[mask].sum()
    var = (probs[mask] * (1 - probs[mask])).sum()
    reps = 2000
    got = np.mean([
        len(sampler.sample_hyperedges(p, rng.derive_seed(5, k)))
        for k in range(reps)
    ])
    assert abs(got - mean) <= 4 * np.sqrt(var / reps)


def test_noisy_with_zero_sigma_is_bit_identical_to_plain():
    t = InitiatorTensor.symmetric_2x2x2(0.9, 0.35, 0.2, 0.05)
    p = ModelParams(t, 6, symmetric_mode=True)
    plain = sampler.sample_hyperedges(p, 99)
    noisy = sampler.make_noisy_levels(t, 6, 0.0, 99)
    got = sampler.sample_hyperedges_noisy(noisy, True, 99)
    assert got.triples.tolist() == plain.triples.tolist()
    assert got.sigma == 0.0


def test_noisy_fast_and_pure_agree():
    t = InitiatorTensor.symmetric_2x2x2(0.9, 0.35, 0.2, 0.05)
    noisy = sampler.make_noisy_levels(t, 6, 0.1, 4)
    a = sampler.sample_hyperedges_noisy(noisy, True, 4)
    b = sampler.sample_hyperedges_noisy(noisy, True, 4, force_pure=True)
    assert a.triples.tolist() == b.triples.tolist()


def test_noisy_levels_preserve_level_total():
    # parameters chosen so the correction cannot push a or d outside [0, 1]
    t = InitiatorTensor.symmetric_2x2x2(0.5, 0.3, 0.2, 0.1)
    nl = sampler.make_noisy_levels(t, 12, 0.05, 21)
    assert nl.levels.shape == (12, 8)
    assert not nl.clamped
    assert np.all(np.abs(nl.mu) <= 0.05) and np.all(np.abs(nl.nu) <= 0.05)
    totals = nl.levels @ np.ones(8)
    # a + 3b + 3c + d is invariant level by level
    np.testing.assert_allclose(totals, np.full(12, 0.5 + 3 * 0.3 + 3 * 0.2 + 0.1),
                               rtol=0, atol=1e-12)
    base = sampler.make_noisy_levels(t, 3, 0.0, 21)
    np.testing.assert_array_equal(
        base.levels, np.tile(np.array([0.5, .3, .3, .2, .3, .2, .2, .1]), (3, 1)))


def test_noisy_levels_clamp_and_flag_when_a_overflows():
    # with a near 1 a negative mu + nu drives a above 1; the entry pins at
    # 1 and the flag reports that the level total was not preserved
    t = InitiatorTensor.symmetric_2x2x2(0.9, 0.3, 0.2, 0.1)
    nl = sampler.make_noisy_levels(t, 12, 0.1, 21)
    assert nl.clamped
    assert np.all(nl.levels >= 0.0) and np.all(nl.levels <= 1.0)


def test_noisy_levels_validate_sigma():
    t = InitiatorTensor.symmetric_2x2x2(0.9, 0.3, 0.2, 0.1)
    with pytest.raises(ValueError):
        sampler.make_noisy_levels(t, 3, 0.25, 0)  # exceeds min(b, c)
    with pytest.raises(ValueError):
        sampler.make_noisy_levels(t, 3, -0.1, 0)


def test_noisy_frequencies_match_per_level_products():
    # Thinning must reproduce exact per-cell probabilities, which for
    # distinct levels are products of per-level entries, not powers.
    reps = 3000
    t = InitiatorTensor.symmetric_2x2x2(0.8, 0.3, 0.25, 0.1)
    nl = sampler.make_noisy_levels(t, 2, 0.2, 31)
    assert not np.all(nl.levels == nl.levels[0])
    p = ModelParams(t, 2, symmetric_mode=False)
    counts = sampler.cell_inclusion_counts(p, 17, reps, noisy=nl)
    probs = oracles.kron3_levels(
        [lev.reshape(2, 2, 2, order="F") for lev in nl.levels])
    assert _freq_ok(counts, probs, reps)


def test_kronecker_edge_frequencies_match_power_matrix():
    reps = 4000
    m = np.array([[0.9, 0.5], [0.4, 0.2]])
    probs = oracles.kron2_levels([m, m])
    counts = np.zeros(probs.shape, dtype=np.int64)
    for k in range(reps):
        es = sampler.sample_kronecker_edges(m, 2, rng.derive_seed(400, k))
        for u, v in es.pairs:
            counts[u, v] += 1
    assert _freq_ok(counts, probs, reps)


def test_kronecker_pairs_sorted_and_validated():
    m = np.array([[0.9, 0.5], [0.4, 0.2]])
    es = sampler.sample_kronecker_edges(m, 5, 9)
    keys = es.pairs[:, 0] * es.num_nodes + es.pairs[:, 1]
    assert np.all(np.diff(keys) > 0)
    assert es.num_nodes == 32
    with pytest.raises(ValueError):
        sampler.sample_kronecker_edges(np.ones((2, 3)), 2, 0)
    with pytest.raises(ValueError):
        sampler.sample_kronecker_edges(np.array([[1.5, 0], [0, 0]]), 2, 0)
    with pytest.raises(ValueError):
        sampler.sample_kronecker_edges(m, 40, 0)


def test_noisy_kron_levels_preserve_total_and_reduce_to_base():
    m = np.array([[0.6, 0.5], [0.4, 0.2]])
    levels, mu, clamped = sampler.make_noisy_kron_levels(m, 8, 0.1, 3)
    assert levels.shape == (8, 4)
    assert np.all(np.abs(mu) <= 0.1) and not clamped
    np.testing.assert_allclose(levels.sum(axis=1), np.full(8, 1.7), atol=1e-12)
    base, _, _ = sampler.make_noisy_kron_levels(m, 2, 0.0, 3)
    np.testing.assert_array_equal(base, np.tile(m.ravel(order="F"), (2, 1)))
    with pytest.raises(ValueError):
        sampler.make_noisy_kron_levels(m, 2, 0.45, 0)


def test_noisy_kron_zero_sigma_matches_plain():
    m = np.array([[0.9, 0.5], [0.4, 0.2]])
    levels, _, _ = sampler.make_noisy_kron_levels(m, 6, 0.0, 5)
    a = sampler.sample_kronecker_edges(m, 6, 5)
    b = sampler.sample_kronecker_edges(m, 6, 5, levels=levels)
    assert a.pairs.tolist() == b.pairs.tolist()


def test_erdos_renyi_basics():
    full = sampler.sample_erdos_renyi(5, 10.0, 0)
    assert full.pairs.tolist() == [
        [u, v] for u in range(5) for v in range(u + 1, 5)]
    reps = 400
    n, want = 64, 100.0
    total = n * (n - 1) // 2
    p = want / total
    got = np.mean([
        len(sampler.sample_erdos_renyi(n, want, rng.derive_seed(60, k)).pairs)
        for k in range(reps)
    ])
    se = np.sqrt(total * p * (1 - p) / reps)
    assert abs(got - want) <= 4 * se
    assert len(sampler.sample_erdos_renyi(0, 0.0, 1).pairs) == 0
    with pytest.raises(ValueError):
        sampler.sample_erdos_renyi(5, -1.0, 0)


def test_large_r_uses_exact_big_integer_path():
    # r = 21 permutation counts exceed int64; the interpreted fallback
    # must enumerate without overflow.  Keep the tensor light so the
    # region walk stays the dominant cost.
    assert _kernels.select(21, False) is _kernels.pure
    t = InitiatorTensor.symmetric_2x2x2(0.62, 0.02, 0.01, 0.0)
    p = ModelParams(t, 21, symmetric_mode=True)
    hl = sampler.sample_hyperedges(p, 12)
    assert hl.num_nodes == 2**21
    assert np.all(hl.triples >= 0) and np.all(hl.triples < 2**21)


def test_replicate_seed_policy_is_derive_seed():
    # cell_inclusion_counts replicate k must equal a fresh sample drawn
    # under derive_seed(master, k)
    t = InitiatorTensor.symmetric_2x2x2(0.9, 0.4, 0.3, 0.1)
    p = ModelParams(t, 2, symmetric_mode=False)
    counts = sampler.cell_inclusion_counts(p, 123, 1)
    hl = sampler.sample_hyperedges(p, rng.derive_seed(123, 0))
    manual = np.zeros_like(counts)
    for i, j, k in hl.triples:
        manual[i, j, k] += 1
    assert counts.tolist() == manual.tolist()