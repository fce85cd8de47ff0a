"""Hot loops of the brute-force oracle and the classic semantics.

The compiled module is used when it was built and importable; otherwise the
pure-Python twin is used.  Set ``FOBNN_SAT_PURE_PYTHON=1`` to force the
fallback.
"""
import os

from . import _pykernels

MAX_STACK = 256

if os.environ.get("FOBNN_SAT_PURE_PYTHON", "") not in ("", "0"):
    impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as impl
        BACKEND = "cython"
    except ImportError:
        impl = _pykernels
        BACKEND = "python"

satisfying_assignments = impl.satisfying_assignments
classic_edges = impl.classic_edges


def available() -> dict:
    """Importable kernel implementations keyed by name."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
