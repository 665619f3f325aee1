"""Backend selection for the hot numeric kernels.

Kernels are written twice: an explicit-loop version compiled with numba and a
vectorised numpy version.  Setting ``ZETABOUND_DISABLE_NUMBA=1`` (or running
without numba installed) selects the numpy path everywhere.
"""
import os

_FLAG = "ZETABOUND_DISABLE_NUMBA"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def numba_enabled():
    return HAVE_NUMBA and os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes")


def njit(fn=None, **kwargs):
    """``numba.njit`` with on-disk caching, or an identity decorator without numba."""
    kwargs.setdefault("cache", True)
    if not HAVE_NUMBA:
        return fn if fn is not None else (lambda f: f)
    return numba.njit(fn, **kwargs) if fn is not None else numba.njit(**kwargs)


BACKEND = "numba" if numba_enabled() else "numpy"
