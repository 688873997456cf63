"""Pick the compiled kernels when they are built, the numpy ones otherwise.

Set ``GENHILBERT_PURE_PYTHON=1`` to force the numpy kernels.  Weighted power
sums always use the numpy version: it is a blocked matrix product that BLAS
runs faster than a hand-written loop.
"""
import os

from . import _kernels_py

power_sums = _kernels_py.power_sums

compiled = None
if not os.environ.get("GENHILBERT_PURE_PYTHON"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

if compiled is not None:
    BACKEND = "cython"
    hankel_direct = compiled.hankel_direct
    horner = compiled.horner
else:
    BACKEND = "python"
    hankel_direct = _kernels_py.hankel_direct
    horner = _kernels_py.horner
