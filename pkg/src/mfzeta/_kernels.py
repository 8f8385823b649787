"""Kernel backend selection.

The compiled core is used when it imports; set ``MFZETA_PURE_PYTHON=1`` to force
the pure-Python kernels.
"""
import os

from . import _core_py

BACKEND = "python"

if not os.environ.get("MFZETA_PURE_PYTHON"):
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _core_py
else:
    _impl = _core_py

minimal_period = _impl.minimal_period
prime_mask = _impl.prime_mask
stopping_words = _impl.stopping_words
cyclic_birkhoff = _impl.cyclic_birkhoff

BACKENDS = {"python": _core_py}
if BACKEND == "cython":
    BACKENDS["cython"] = _impl
