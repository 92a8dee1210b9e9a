"""Optional numba acceleration.

Set ``ZEC_DISABLE_JIT=1`` to force the pure numpy/Python kernels. Individual
kernel calls also accept ``backend="numba" | "numpy"``.
"""
import os
import warnings

DISABLE_ENV = "ZEC_DISABLE_JIT"

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def _env_disabled() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in ("1", "true", "yes", "on")


def default_backend() -> str:
    if HAVE_NUMBA and not _env_disabled():
        return "numba"
    return "numpy"


def resolve_backend(backend=None) -> str:
    if backend is None:
        return default_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        warnings.warn("numba is not installed; using numpy kernels")
        return "numpy"
    return backend


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
