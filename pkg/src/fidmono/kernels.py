"""Backend selection for the hot linear-algebra kernels.

The compiled extension ``fidmono._kernels`` is used when it imports;
otherwise the NumPy versions in ``fidmono._fallback`` are used. Setting
``FIDMONO_BACKEND=python`` forces the fallback. Dense ``eigh`` goes to
the compiled Jacobi solver only for small orders.
"""
import importlib
import os

from fidmono import _fallback

_FORCED = os.environ.get("FIDMONO_BACKEND", "").lower()


def _load_compiled():
    try:
        return importlib.import_module("fidmono._kernels")
    except ImportError:
        return None


_compiled = None if _FORCED == "python" else _load_compiled()
if _FORCED == "cython" and _compiled is None:
    raise ImportError("FIDMONO_BACKEND=cython but fidmono._kernels is not built")

_impl = _compiled if _compiled is not None else _fallback
BACKEND = "cython" if _compiled is not None else "python"


def available_backends():
    """Names of the backends that can be loaded in this environment."""
    names = ["python"]
    if _load_compiled() is not None:
        names.insert(0, "cython")
    return names


def get_backend(name):
    """Return the kernel module for ``name`` ('cython' or 'python')."""
    if name == "python":
        return _fallback
    if name == "cython":
        mod = _load_compiled()
        if mod is None:
            raise ImportError("compiled kernels are not available")
        return mod
    raise ValueError(f"unknown backend {name!r}")


#: Largest matrix order sent to the compiled Jacobi solver; LAPACK is faster above it.
JACOBI_MAX_N = 6


def eigh(a):
    """Descending eigenvalues and eigenvectors of a Hermitian matrix."""
    if _compiled is not None and len(a) <= JACOBI_MAX_N:
        return _compiled.eigh(a)
    return _fallback.eigh(a)


svdvals = _impl.svdvals
wootters = _impl.wootters
wootters_from_factor = _impl.wootters_from_factor
pairsum_sq = _impl.pairsum_sq
