"""Backend selection for the batch kernels.

The compiled extension is used when it was built; otherwise the NumPy
fallback is loaded. Setting ``CVEXTREMAL_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("CVEXTREMAL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

sympeig_batch = _impl.sympeig_batch
two_mode_invariants = _impl.two_mode_invariants
epr_grid_min = _impl.epr_grid_min

__all__ = ["BACKEND", "sympeig_batch", "two_mode_invariants", "epr_grid_min"]
