"""Backend selection for the census kernel.

The compiled extension is used when it imported cleanly and the catalog
fits in 64-bit masks; otherwise the pure-Python kernel runs. Setting
``VINGLAB_PURE=1`` forces the Python path.
"""

from __future__ import annotations

import os

from . import _pykernels
from ._pykernels import addable, count_independent, has_clique, x_count, x_vertices  # noqa: F401

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

MAX_C_SEGMENTS = 64


def compiled_available() -> bool:
    return _ckernels is not None


def backend_name(nseg: int = 0) -> str:
    if _use_c(nseg):
        return "cython"
    return "python"


def _use_c(nseg: int) -> bool:
    if _ckernels is None or os.environ.get("VINGLAB_PURE", "") not in ("", "0"):
        return False
    return nseg <= MAX_C_SEGMENTS


def scan(conflict, inc, seg_at, k, min_degree=0, max_edges=None, prefix_bits=0,
         prefix_value=0, budget=10**8, collect=False, backend=None):
    """Dispatch to the compiled or Python kernel; see ``_pykernels.scan``."""
    if backend is None:
        backend = backend_name(len(conflict))
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernel is not available")
        fn = _ckernels.scan
    else:
        fn = _pykernels.scan
    return fn(conflict, inc, seg_at, k, min_degree, max_edges, prefix_bits,
              prefix_value, budget, collect)
