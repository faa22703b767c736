"""Combinatorics of the sampling table.

Cells of the Kronecker power that share one probability form regions
indexed by length-r multisets over the initiator's linear indices; a cell
within a region is a permutation of that multiset, ranked
lexicographically.  The linear table index of a permutation interleaves
base-n digits of the three node coordinates (a 3-d Morton code), with the
first multiset position most significant and digit 1 of the table index
the least significant digit of the row coordinate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

# A table index is a plain integer in [0, (n^3)^r); kept as an alias so
# signatures say what they mean.
TableIndex = int


@dataclass(frozen=True)
class Region:
    """One constant-probability region of the sampling table."""

    multiset: tuple[int, ...]
    probability: float
    perm_count: int
    ordinal: int


def region_count(alphabet_size: int, r: int) -> int:
    """Number of length-r multisets over an alphabet: C(m + r - 1, r)."""
    return math.comb(alphabet_size + r - 1, r)


def region_at(alphabet_size: int, r: int, ordinal: int) -> tuple[int, ...]:
    """The `ordinal`-th multiset in lexicographic order (stars-and-bars unrank)."""
    total = region_count(alphabet_size, r)
    if not 0 <= ordinal < total:
        raise IndexError(f"region ordinal {ordinal} out of range [0, {total})")
    out = []
    rem = ordinal
    lo = 0
    for slot in range(r):
        for val in range(lo, alphabet_size):
            # multisets of the remaining length confined to values >= val
            block = math.comb(alphabet_size - val + r - slot - 2, r - slot - 1)
            if rem < block:
                out.append(val)
                lo = val
                break
            rem -= block
    return tuple(out)


def multiset_regions(
    values: Sequence[float], r: int, start: int = 0, stop: int | None = None
) -> Iterator[Region]:
    """Stream the regions of the table in lexicographic multiset order.

    `values` is the vectorized initiator; each region reports the shared
    cell probability (product of its entries) and its permutation count.
    Memory stays O(r) no matter how many regions there are.  `start` and
    `stop` bound the ordinals so disjoint sub-streams can be consumed in
    parallel.
    """
    v = np.asarray(values, dtype=np.float64)
    m = v.shape[0]
    total = region_count(m, r)
    stop = total if stop is None else min(stop, total)
    if start < 0 or start > total:
        raise IndexError(f"start ordinal {start} out of range")
    if start >= stop:
        return
    s = list(region_at(m, r, start))
    for ordinal in range(start, stop):
        p = 1.0
        for e in s:
            p *= v[e]
        yield Region(tuple(s), float(p), perm_count(s), ordinal)
        pos = r - 1
        while pos >= 0 and s[pos] == m - 1:
            pos -= 1
        if pos < 0:
            break
        val = s[pos] + 1
        for l in range(pos, r):
            s[l] = val
    return


def perm_count(multiset: Sequence[int]) -> int:
    """Number of distinct permutations of a multiset (exact integer)."""
    counts: dict[int, int] = {}
    for e in multiset:
        counts[e] = counts.get(e, 0) + 1
    t = math.factorial(len(multiset))
    for c in counts.values():
        t //= math.factorial(c)
    return t


def _distinct_counts(multiset: Sequence[int]) -> tuple[list[int], list[int]]:
    vals: list[int] = []
    cnts: list[int] = []
    for e in sorted(multiset):
        if vals and vals[-1] == e:
            cnts[-1] += 1
        else:
            vals.append(e)
            cnts.append(1)
    return vals, cnts


def unrank_multiset_perm(multiset: Sequence[int], index: int) -> list[int]:
    """The `index`-th permutation of `multiset` in lexicographic order.

    Runs in O(r^2) integer operations without factorial tables: the count
    of permutations opening with a given value is maintained incrementally
    as total * count / length, which is always an exact division.
    """
    vals, cnts = _distinct_counts(multiset)
    r = len(multiset)
    total = perm_count(multiset)
    if not 0 <= index < total:
        raise IndexError(f"permutation index {index} out of range [0, {total})")
    out: list[int] = []
    length = r
    x = index
    for _ in range(r):
        for di, v in enumerate(vals):
            c = cnts[di]
            if c == 0:
                continue
            opening = total * c // length
            if x < opening:
                out.append(v)
                cnts[di] = c - 1
                total = opening
                length -= 1
                break
            x -= opening
    return out


def rank_multiset_perm(perm: Sequence[int]) -> int:
    """Lexicographic rank of a multiset permutation (inverse of unrank)."""
    vals, cnts = _distinct_counts(perm)
    total = perm_count(perm)
    length = len(perm)
    rank = 0
    for x in perm:
        for di, v in enumerate(vals):
            c = cnts[di]
            if c == 0:
                continue
            opening = total * c // length
            if v == x:
                cnts[di] = c - 1
                total = opening
                length -= 1
                break
            rank += opening
        else:
            raise ValueError(f"value {x} not available in remaining multiset")
    return rank


def perm_to_table_index(perm: Sequence[int], alphabet_size: int) -> TableIndex:
    """Linear table index of a permutation, first position most significant."""
    J = 0
    for p in perm:
        if not 0 <= p < alphabet_size:
            raise ValueError(f"digit {p} out of range for alphabet {alphabet_size}")
        J = J * alphabet_size + p
    return J


# ---------------------------------------------------------------------------
# Morton (bit/digit interleaved) codes for the 3-d table.
# ---------------------------------------------------------------------------

def _part1by2_64(x: int) -> int:
    """Spread the low 21 bits of x so they occupy every third bit."""
    x &= 0x1FFFFF
    x = (x | (x << 32)) & 0x1F00000000FFFF
    x = (x | (x << 16)) & 0x1F0000FF0000FF
    x = (x | (x << 8)) & 0x100F00F00F00F00F
    x = (x | (x << 4)) & 0x10C30C30C30C30C3
    x = (x | (x << 2)) & 0x1249249249249249
    return x


def _compact1by2_64(x: int) -> int:
    """Gather every third bit of x into the low 21 bits (inverse of part1by2)."""
    x &= 0x1249249249249249
    x = (x ^ (x >> 2)) & 0x10C30C30C30C30C3
    x = (x ^ (x >> 4)) & 0x100F00F00F00F00F
    x = (x ^ (x >> 8)) & 0x1F0000FF0000FF
    x = (x ^ (x >> 16)) & 0x1F00000000FFFF
    x = (x ^ (x >> 32)) & 0x1FFFFF
    return x


def morton_decode_3d(J: TableIndex, n: int, r: int) -> tuple[int, int, int]:
    """Split a table index into (row, col, slice) coordinates in [0, n^r).

    Base-n digit 1 of J (least significant) is the least significant digit
    of the row; digits 2 and 3 seed the column and slice, and the pattern
    repeats.  For n = 2 this is 3-way bit interleaving.
    """
    if not 0 <= J < n ** (3 * r):
        raise IndexError(f"table index {J} out of range for n={n}, r={r}")
    if n == 2 and r <= 21:
        return _compact1by2_64(J), _compact1by2_64(J >> 1), _compact1by2_64(J >> 2)
    i = j = k = 0
    w = 1
    for _ in range(r):
        i += (J % n) * w
        J //= n
        j += (J % n) * w
        J //= n
        k += (J % n) * w
        J //= n
        w *= n
    return i, j, k


def morton_encode_3d(i: int, j: int, k: int, n: int, r: int) -> TableIndex:
    """Interleave three coordinates into a table index (inverse of decode)."""
    N = n ** r
    if not (0 <= i < N and 0 <= j < N and 0 <= k < N):
        raise IndexError(f"coordinates out of range for side {N}")
    if n == 2 and r <= 21:
        return _part1by2_64(i) | (_part1by2_64(j) << 1) | (_part1by2_64(k) << 2)
    J = 0
    w = 1
    for _ in range(r):
        J += (i % n) * w
        i //= n
        J += (j % n) * (w * n)
        j //= n
        J += (k % n) * (w * n * n)
        k //= n
        w *= n ** 3
    return J
