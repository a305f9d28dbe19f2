"""Kernel dispatch.

The compiled int64 kernels are used when the extension imports; each call
falls back to the pure-Python bignum kernels on OverflowError.  Setting
``LEIBNIZ_KERNELS=python`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py as _py

try:
    if os.environ.get("LEIBNIZ_KERNELS", "").lower() == "python":
        raise ImportError("forced pure-Python kernels")
    from . import _ckernels as _c
except ImportError:
    _c = None

BACKEND = "cython" if _c is not None else "python"

_NAMES = (
    "leibniz_defects",
    "derivation_defects",
    "commutator_defects",
    "int_rref",
    "product_span",
)


def _dispatch(name):
    pyfn = getattr(_py, name)
    if _c is None:
        return pyfn
    cfn = getattr(_c, name)

    def call(*args):
        try:
            return cfn(*args)
        except OverflowError:
            return pyfn(*args)

    call.__name__ = name
    call.__doc__ = pyfn.__doc__
    return call


leibniz_defects = _dispatch("leibniz_defects")
derivation_defects = _dispatch("derivation_defects")
commutator_defects = _dispatch("commutator_defects")
int_rref = _dispatch("int_rref")
product_span = _dispatch("product_span")

python_kernels = _py
compiled_kernels = _c
