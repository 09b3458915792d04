"""Select the pivot kernel: compiled extension if built, pure Python otherwise.

Set ``AMBIPERSUADE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _tableau_py

if os.environ.get("AMBIPERSUADE_PURE_PYTHON"):
    pivot = _tableau_py.pivot
    BACKEND = "python"
else:
    try:
        from ._tableau import pivot
        BACKEND = "cython"
    except ImportError:
        pivot = _tableau_py.pivot
        BACKEND = "python"

__all__ = ["pivot", "BACKEND"]
