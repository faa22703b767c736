"""Kernel dispatch: a compiled path and an interpreted reference path.

`fast` is the numba-compiled copy of `_kernels_impl` (or the plain copy
when compilation is disabled via HYPERKRON_JIT=0 or numba is absent);
`pure` is always interpreted.  Drivers route to `fast` whenever the run
fits its 64-bit arithmetic (r <= FAST_MAX_R) and fall back to `pure`
otherwise, so arbitrarily large permutation counts remain exact.
"""
from __future__ import annotations

from ._accel import JIT_ENABLED, load_kernel_module

# Largest r for which r! (the largest per-region permutation count) fits
# in a signed 64-bit integer: 20! < 2^63 < 21!.
FAST_MAX_R = 20

pure = load_kernel_module(jitted=False)
fast = load_kernel_module(jitted=True) if JIT_ENABLED else pure


def select(r: int, force_pure: bool = False):
    """The kernel module appropriate for a run at Kronecker power r."""
    if force_pure or r > FAST_MAX_R:
        return pure
    return fast
