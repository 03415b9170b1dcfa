"""Valuation kernels with import-time backend selection.

The compiled Cython extension is used when it built successfully; the
numpy implementation is the fallback.  Set MHPREF_PURE_PYTHON=1 to force
the fallback (used by the benchmark and the parity tests).
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

if _ckernels is not None and not os.environ.get("MHPREF_PURE_PYTHON"):
    _active = _ckernels
else:
    _active = _pykernels

IMPL = _active.IMPL
HAVE_COMPILED = _ckernels is not None

quad_conj = _active.quad_conj
quad_conj_arg = _active.quad_conj_arg
grid_conj = _active.grid_conj
income2_value_quad = _active.income2_value_quad
income2_value_pwl = _active.income2_value_pwl

__all__ = [
    "IMPL",
    "HAVE_COMPILED",
    "quad_conj",
    "quad_conj_arg",
    "grid_conj",
    "income2_value_quad",
    "income2_value_pwl",
]
