"""Select the compiled product kernel, falling back to pure Python.

Set ``ZETASING_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

try:
    if os.environ.get("ZETASING_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernel forced by environment")
    from ._ckernels import mul_terms
    BACKEND = "cython"
except ImportError:
    mul_terms = _pykernels.mul_terms
    BACKEND = "python"

py_mul_terms = _pykernels.mul_terms
