"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise, or
when ``NHEUR_PURE_PYTHON`` is set to a non-empty value, the numpy versions in
``_pykernels`` are used. Both backends produce the same numbers to rounding.
"""
import os

from . import _pykernels

if os.environ.get("NHEUR_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

born_probabilities = _impl.born_probabilities
rk4_integrate = _impl.rk4_integrate
binary_entropy = _impl.binary_entropy
