"""Initiator tensors and entries of their Kronecker powers.

The generative model is parameterized by an n x n x n probability tensor
P.  Its r-fold Kronecker power has side N = n^r and is never materialized
at scale; `kron_power_entry` evaluates single entries from base-n digits,
most significant digit first (digit l of a node id selects the l-th,
outermost, factor of the product).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

# Node ids must fit a 64-bit integer.
MAX_NODE_SPACE = 1 << 63
DENSE_CELL_LIMIT = 1 << 27

SYMMETRIC_WEIGHTS = {"a": 1, "b": 3, "c": 3, "d": 1}


@dataclass(frozen=True)
class InitiatorTensor:
    """An n x n x n tensor of probabilities in [0, 1]."""

    entries: np.ndarray
    n: int = field(init=False, default=0)

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=np.float64)
        if e.ndim != 3 or len(set(e.shape)) != 1:
            raise ValueError(f"initiator must be cubical, got shape {e.shape}")
        n = e.shape[0]
        if n < 2:
            raise ValueError("initiator side must be at least 2")
        if np.any(e < 0.0) or np.any(e > 1.0):
            raise ValueError("initiator entries must lie in [0, 1]")
        e = e.copy()
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "n", n)

    @classmethod
    def symmetric_2x2x2(cls, a: float, b: float, c: float, d: float) -> "InitiatorTensor":
        """The four-parameter symmetric initiator: a = corner (0,0,0), b = one
        index raised, c = two indices raised, d = corner (1,1,1)."""
        e = np.empty((2, 2, 2))
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    e[i, j, k] = (a, b, c, d)[i + j + k]
        return cls(e)

    @classmethod
    def from_vector(cls, n: int, values) -> "InitiatorTensor":
        """Build from n^3 values in column-major order (index i + n*j + n^2*k)."""
        v = np.asarray(values, dtype=np.float64)
        if v.shape != (n * n * n,):
            raise ValueError(f"expected {n ** 3} entries, got {v.shape}")
        return cls(v.reshape((n, n, n), order="F"))

    @property
    def is_symmetric(self) -> bool:
        """True when every permutation of the three modes leaves P unchanged."""
        e = self.entries
        return all(np.array_equal(e, np.transpose(e, axes=p)) for p in permutations(range(3)))

    def symmetric_labels(self) -> tuple[float, float, float, float]:
        """The (a, b, c, d) labels of a symmetric 2x2x2 initiator."""
        if self.n != 2 or not self.is_symmetric:
            raise ValueError("labels (a, b, c, d) require a symmetric 2x2x2 initiator")
        e = self.entries
        return float(e[0, 0, 0]), float(e[1, 0, 0]), float(e[1, 1, 0]), float(e[1, 1, 1])


def vectorize(tensor: InitiatorTensor) -> np.ndarray:
    """Column-major vectorization: v[i + n*j + n^2*k] = P(i, j, k).

    A symmetric 2x2x2 initiator vectorizes to [a, b, b, c, b, c, c, d].
    """
    return tensor.entries.ravel(order="F")


@dataclass(frozen=True)
class ModelParams:
    """A full model configuration: initiator, power r, and sampling mode.

    In symmetric mode only cells with i <= j <= k are eligible, which is
    the natural choice for symmetric initiators (every unordered triple is
    considered exactly once).
    """

    tensor: InitiatorTensor
    r: int
    symmetric_mode: bool = True

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("Kronecker power r must be >= 1")
        if self.tensor.n ** self.r > MAX_NODE_SPACE:
            raise ValueError(
                f"n^r = {self.tensor.n}^{self.r} exceeds the 64-bit node id space"
            )

    @property
    def num_nodes(self) -> int:
        return self.tensor.n ** self.r


def kron_power_entry(tensor: InitiatorTensor, r: int, i: int, j: int, k: int) -> float:
    """Entry (i, j, k) of the r-fold Kronecker power of the initiator.

    Computed as the product of initiator entries indexed by the base-n
    digits of i, j, k, taken most significant digit first.
    """
    n = tensor.n
    N = n ** r
    if not (0 <= i < N and 0 <= j < N and 0 <= k < N):
        raise IndexError(f"index out of range for side {N}")
    e = tensor.entries
    p = 1.0
    scale = N // n
    while scale >= 1:
        p *= e[(i // scale) % n, (j // scale) % n, (k // scale) % n]
        scale //= n
    return p


def kron_power_slice(tensor: InitiatorTensor, r: int, i: int) -> np.ndarray:
    """Slice (i, :, :) of the Kronecker power as a dense N x N array.

    The slice is itself a Kronecker product of the n x n matrices picked
    by the digits of i, so it costs O(N^2) rather than N^2 entry calls.
    """
    n = tensor.n
    N = n ** r
    if not 0 <= i < N:
        raise IndexError(f"slice index out of range for side {N}")
    out = np.ones((1, 1))
    scale = N // n
    while scale >= 1:
        out = np.kron(out, tensor.entries[(i // scale) % n, :, :])
        scale //= n
    return out


def kron_power_dense(tensor: InitiatorTensor, r: int) -> np.ndarray:
    """The full Kronecker power as a dense N x N x N array.

    Oracle-sized instances only; the per-cell product association order
    matches kron_power_slice, so values agree bit for bit.
    """
    n = tensor.n
    if (n ** r) ** 3 > DENSE_CELL_LIMIT:
        raise ValueError(f"dense power over {(n ** r) ** 3} cells refused")
    out = np.array(tensor.entries, dtype=np.float64)
    for _ in range(r - 1):
        m = out.shape[0]
        out = np.einsum("ijk,abc->iajbkc", out, tensor.entries).reshape(
            m * n, m * n, m * n)
    return out


def expected_hyperedge_count(tensor: InitiatorTensor, r: int) -> float:
    """Expected number of Bernoulli successes over the full power tensor.

    Entries of the Kronecker power sum to (sum of initiator entries)^r.
    """
    return float(np.sum(vectorize(tensor))) ** r


def solve_param_for_density(
    fixed: dict[str, float], free: str, r: int, per_node: float
) -> InitiatorTensor:
    """Choose one symmetric parameter so hyperedges per node hit a target.

    `fixed` maps three of the labels {a, b, c, d} to values; `free` names
    the remaining one.  Solves (a + 3b + 3c + d)^r = per_node * 2^r for
    the free value by bisection on [0, 1] to absolute tolerance 1e-12.
    """
    if free not in SYMMETRIC_WEIGHTS:
        raise ValueError(f"unknown parameter label {free!r}")
    if set(fixed) != set(SYMMETRIC_WEIGHTS) - {free}:
        raise ValueError("fixed labels must be exactly the three non-free labels")
    if per_node < 0:
        raise ValueError("target density must be nonnegative")

    def labels(x: float) -> dict[str, float]:
        out = dict(fixed)
        out[free] = x
        return out

    def residual(x: float) -> float:
        lb = labels(x)
        total = sum(SYMMETRIC_WEIGHTS[k] * lb[k] for k in SYMMETRIC_WEIGHTS)
        return total ** r - per_node * 2 ** r

    lo, hi = 0.0, 1.0
    if residual(lo) > 0 or residual(hi) < 0:
        raise ValueError("target density is not reachable with the free parameter in [0, 1]")
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if residual(mid) < 0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    lb = labels(x)
    return InitiatorTensor.symmetric_2x2x2(lb["a"], lb["b"], lb["c"], lb["d"])
