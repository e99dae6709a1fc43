"""Backend selection for the hot kernels.

Kernels are written once as scalar/array-generic functions.  With numba
available they are compiled with ``@njit`` and driven by per-ray loops;
otherwise (or when ``GBL_DISABLE_NUMBA=1``) the same math runs through
numpy drivers vectorized over rays.
"""

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False


def _env_disabled():
    return os.environ.get("GBL_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


_use_numba = HAVE_NUMBA and not _env_disabled()


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, identity otherwise.

    Compilation is lazy, so decorating is harmless even if the numpy
    backend ends up selected.
    """
    if not HAVE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)
    return numba.njit(*args, **kwargs)


def use_numba():
    return _use_numba


def set_backend(name):
    """Switch between ``"numba"`` and ``"numpy"`` at runtime (benchmarks, tests)."""
    global _use_numba
    if name == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not installed")
        _use_numba = True
    elif name == "numpy":
        _use_numba = False
    else:
        raise ValueError(f"unknown backend {name!r}; expected 'numba' or 'numpy'")


def backend():
    return "numba" if _use_numba else "numpy"
