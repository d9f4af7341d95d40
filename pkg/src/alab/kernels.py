"""Backend selection for the hot loops.

The compiled ``_ckernels`` module is used when it was built; otherwise, or
when ``ALAB_PURE_PYTHON=1`` is set, the pure-Python ``_pykernels`` are used.
"""
import os

from . import _pykernels

if os.environ.get("ALAB_PURE_PYTHON") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

component_labels = _impl.component_labels
f2_rank = _impl.f2_rank
triangles = _impl.triangles
