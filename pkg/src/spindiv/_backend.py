"""Select the numerical kernel backend at import time.

The compiled Cython extension is preferred; the pure numpy module is the
fallback.  ``SPINDIV_FORCE_PYTHON=1`` forces the fallback (useful for the
kernel benchmark and for debugging).
"""

import os

from . import _core_py

if os.environ.get("SPINDIV_FORCE_PYTHON", "") == "1":
    kernels = _core_py
else:
    try:
        from . import _core_cy as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _core_py

HAVE_COMPILED = kernels.BACKEND_NAME == "compiled"


def backend_name():
    return kernels.BACKEND_NAME
