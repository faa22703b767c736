"""Closed-form expectations for 2x2x2 initiators.

Every formula here exploits the product structure of Kronecker powers:
a sum over cells of the power tensor factors into (per-level sum)^r, so
edge-count expectations come out in O(r) arithmetic instead of a walk
over n^(3r) cells.  A small-instance exact oracle is included for
validation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .tensor import InitiatorTensor, ModelParams, vectorize

# Pair enumeration in the exact oracle touches n^(2r) cells.
EXACT_PAIR_LIMIT = 1 << 20


@dataclass(frozen=True)
class GeneralParams222:
    """Entries of a (possibly non-symmetric) 2x2x2 initiator.

    a1..a4 read the front slice (third index 0) row-major, b1..b4 the
    back slice (third index 1).
    """

    a1: float
    a2: float
    a3: float
    a4: float
    b1: float
    b2: float
    b3: float
    b4: float

    def __post_init__(self) -> None:
        for name, val in self.__dict__.items():
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} = {val} outside [0, 1]")

    @classmethod
    def from_tensor(cls, tensor: InitiatorTensor) -> "GeneralParams222":
        if tensor.n != 2:
            raise ValueError("closed forms require a 2x2x2 initiator")
        e = tensor.entries
        return cls(
            a1=float(e[0, 0, 0]), a2=float(e[0, 1, 0]),
            a3=float(e[1, 0, 0]), a4=float(e[1, 1, 0]),
            b1=float(e[0, 0, 1]), b2=float(e[0, 1, 1]),
            b3=float(e[1, 0, 1]), b4=float(e[1, 1, 1]))

    @classmethod
    def from_symmetric(cls, a: float, b: float, c: float, d: float) -> "GeneralParams222":
        return cls(a1=a, a2=b, a3=b, a4=c, b1=b, b2=c, b3=c, b4=d)


@dataclass(frozen=True)
class PowerSums:
    """The six cell sums over a power tensor that admit closed forms."""

    all_cells: float
    pair_shared_ii: float
    diag_ijj: float
    diag_iji: float
    diag_iij: float
    diag_iii: float


@dataclass(frozen=True)
class EdgeExpectation:
    three_edges: float
    two_edges: float
    duplicates: float
    total: float


def sum_star_2(f: np.ndarray) -> float:
    """Sum of f over index pairs with distinct values."""
    f = np.asarray(f)
    return float(f.sum() - np.einsum("ii->", f))


def sum_star_3(f: np.ndarray) -> float:
    """Sum of f over index triples with pairwise distinct values.

    Inclusion-exclusion: drop the three single-coincidence diagonals,
    which removes the full diagonal three times, then add it back twice.
    """
    f = np.asarray(f)
    single = (np.einsum("ijj->", f) + np.einsum("iji->", f)
              + np.einsum("iij->", f))
    return float(f.sum() - single + 2.0 * np.einsum("iii->", f))


def power_sums(params: GeneralParams222, r: int, m: int = 1) -> PowerSums:
    """Evaluate the six closed-form sums over the r-fold power tensor.

    Five are sums of m-th powers of cells (all cells and the four
    coincidence diagonals); pair_shared_ii is the cross sum
    sum_ijk P_iij P_iik, which does not depend on m.
    """
    p = params
    av = np.array([p.a1, p.a2, p.a3, p.a4])
    bv = np.array([p.b1, p.b2, p.b3, p.b4])
    return PowerSums(
        all_cells=float((np.sum(av ** m) + np.sum(bv ** m)) ** r),
        pair_shared_ii=float(((p.a1 + p.b1) ** 2 + (p.a4 + p.b4) ** 2) ** r),
        diag_ijj=float((p.a1 ** m + p.b2 ** m + p.a3 ** m + p.b4 ** m) ** r),
        diag_iji=float((p.a1 ** m + p.a2 ** m + p.b3 ** m + p.b4 ** m) ** r),
        diag_iij=float((p.a1 ** m + p.b1 ** m + p.a4 ** m + p.b4 ** m) ** r),
        diag_iii=float((p.a1 ** m + p.b4 ** m) ** r))


def face_pair_sum(params: GeneralParams222, r: int) -> float:
    """sum_{i,j,k1,k2} P^r_{ijk1} P^r_{ijk2}: products of cell pairs that
    share their (i, j) face.  Factors level by level into a power."""
    p = params
    level = ((p.a1 + p.b1) ** 2 + (p.a2 + p.b2) ** 2
             + (p.a3 + p.b3) ** 2 + (p.a4 + p.b4) ** 2)
    return float(level ** r)


def expected_duplicates(params: GeneralParams222, r: int) -> float:
    """Expected pairs of hyperedges that place the same edge.

    Two cells (i,j,k1), (i,j,k2) with i != j, k1 != k2 both cover edge
    {i,j}; the unrestricted face-pair sum is corrected by the i=j and
    k1=k2 coincidences and divided by 4 for the orderings.
    """
    s2 = power_sums(params, r, m=2)
    return 0.25 * (face_pair_sum(params, r) - s2.pair_shared_ii
                   - s2.all_cells + s2.diag_iij)


def expected_edges_approx(params: GeneralParams222, r: int) -> EdgeExpectation:
    """Estimate expected simple-edge count from hyperedge expectations.

    Hyperedges with three distinct ids yield 3 edges, with exactly two
    distinct ids 1 edge; expected duplicate placements are subtracted
    once.  Accurate in sparse regimes, an undercount in dense ones
    (collisions beyond pairwise are ignored).
    """
    s1 = power_sums(params, r, m=1)
    single = s1.diag_ijj + s1.diag_iji + s1.diag_iij
    three = (s1.all_cells - single + 2.0 * s1.diag_iii) / 6.0
    two = (single - 3.0 * s1.diag_iii) / 2.0
    dup = expected_duplicates(params, r)
    return EdgeExpectation(
        three_edges=three, two_edges=two, duplicates=dup,
        total=3.0 * three + 2.0 * two - dup)


def expected_edges_exact_small(
    params: ModelParams, force_pure: bool = False
) -> float:
    """Exact expected simple-edge count, by pair enumeration.

    Edge {i, j} appears unless every cell whose assembled triangle
    covers both endpoints stays off; the non-inclusion product runs over
    all slices t and, in non-symmetric mode, all index orderings.  Cost
    grows as n^(3r), so only small instances are accepted.
    """
    n, r = params.tensor.n, params.r
    if n ** (2 * r) > EXACT_PAIR_LIMIT:
        raise ValueError("exact edge expectation wants a small instance")
    kern = _kernels.select(r, force_pure)
    v = vectorize(params.tensor)
    return float(kern.exact_edge_expectation(n, r, v, params.symmetric_mode))
