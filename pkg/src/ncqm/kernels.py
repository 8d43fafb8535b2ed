"""Kernel backend selection.

The compiled extension is used when it imports; setting ``NCQM_PURE_PYTHON=1``
forces the pure-Python fallback.
"""
from __future__ import annotations

import logging
import os

log = logging.getLogger(__name__)

if os.environ.get("NCQM_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import backward_minimal, bisect_eigenvalue, forward_psi, sturm_count, su2_forward

    BACKEND = "python"
else:
    try:
        from ._kernels import backward_minimal, bisect_eigenvalue, forward_psi, sturm_count, su2_forward

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._kernels_py import backward_minimal, bisect_eigenvalue, forward_psi, sturm_count, su2_forward

        BACKEND = "python"
        log.debug("compiled kernels unavailable, using pure-Python fallback")

__all__ = ["BACKEND", "backward_minimal", "bisect_eigenvalue", "forward_psi", "sturm_count", "su2_forward"]
