"""Backend selection for the hot kernels.

The compiled ``_ckernel`` extension is used when it imports; otherwise the
pure-Python ``_pykernel`` fallback takes over.  Setting ``OSHLAB_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _pykernel

if os.environ.get("OSHLAB_PURE_PYTHON") == "1":
    _backend = _pykernel
else:
    try:
        from . import _ckernel as _backend
    except ImportError:  # extension not built
        _backend = _pykernel

BACKEND = "python" if _backend is _pykernel else "cython"

PackedFamily = _backend.PackedFamily
longest_chain = _backend.longest_chain
verify_standard_order = _backend.verify_standard_order
stage_invariant = _backend.stage_invariant


def available_backends():
    """Module objects for every backend importable in this process."""
    out = {"python": _pykernel}
    try:
        from . import _ckernel
    except ImportError:
        pass
    else:
        out["cython"] = _ckernel
    return out
