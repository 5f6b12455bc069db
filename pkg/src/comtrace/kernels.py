"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module.  Setting ``COMTRACE_PURE_PYTHON=1`` forces
the fallback.
"""

import os

if os.environ.get("COMTRACE_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        from . import _pykernels as _impl

BACKEND = "cython" if _impl.__name__.endswith("_ckernels") else "python"

BOTTOM_CODE = -1
NO_SYMBOL = -2

project_codes = _impl.project_codes
scan_stage = _impl.scan_stage
advance = _impl.advance
