"""Kernel selection: the compiled module when built, else the Python fallback.

Set ``HOPFCAT_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("HOPFCAT_PURE_PYTHON"):
    from ._kernels_py import candidate_rows, feasible

    BACKEND = "python"
else:
    try:
        from ._kernels import candidate_rows, feasible

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import candidate_rows, feasible

        BACKEND = "python"

__all__ = ["BACKEND", "candidate_rows", "feasible"]
