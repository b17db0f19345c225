"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``QGFUSION_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

python_fold_points = _pykernels.fold_points

try:
    if os.environ.get("QGFUSION_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from ._ckernels import fold_points as compiled_fold_points
except ImportError:
    compiled_fold_points = None

fold_points = compiled_fold_points or python_fold_points
BACKEND = "cython" if compiled_fold_points is not None else "python"
