"""Selects between numba-compiled kernels and the pure Python reference path.

The environment variable HYPERKRON_JIT controls the default: set it to
"0"/"off"/"false" to disable compilation and run every kernel as plain
Python.  When numba is missing the package silently falls back to the
pure path as well.
"""
from __future__ import annotations

import importlib.util
import os


def _env_wants_jit() -> bool:
    flag = os.environ.get("HYPERKRON_JIT", "1").strip().lower()
    return flag not in ("0", "false", "off", "no")


JIT_ENABLED = _env_wants_jit()

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        njit = None
        JIT_ENABLED = False


def load_kernel_module(jitted: bool):
    """Import a private copy of the kernel sources, optionally numba-compiled.

    Importing a fresh module object per mode keeps the compiled and the
    interpreted variants from sharing rebindable globals: a jitted kernel
    must call jitted helpers, the reference kernel must call plain ones
    (the reference path also accepts arbitrary-precision integers, which
    numba cannot type).
    """
    spec = importlib.util.find_spec("hyperkron._kernels_impl")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    if jitted:
        for name in mod.KERNEL_FUNCTIONS:
            fn = getattr(mod, name)
            setattr(mod, name, njit(cache=True, nogil=True)(fn))
    return mod
