"""Pure-Python kernels for the Gram factorization search DᵀD = M."""

from __future__ import annotations

import math


def feasible(R, cols) -> bool:
    """Residual R stays a candidate Gram matrix on ``cols``: R ≥ 0 and R_xy² ≤ R_xx R_yy."""
    for i, x in enumerate(cols):
        rxx = R[x, x]
        if rxx < 0:
            return False
        for y in cols[i + 1 :]:
            rxy = R[x, y]
            if rxy < 0 or rxy * rxy > rxx * R[y, y]:
                return False
    return True


def candidate_rows(R, pivot, later) -> list[dict]:
    """Vectors d ≥ 0 with d[pivot] ≥ 1, zero before the pivot, d dᵀ ≤ R entrywise."""
    cap = {y: math.isqrt(int(R[y, y])) for y in later}
    top = math.isqrt(int(R[pivot, pivot]))
    out = []

    def rec(k, d):
        if k == len(later):
            out.append(dict(d))
            return
        y = later[k]
        hi = cap[y]
        for x, v in d.items():
            if v:
                hi = min(hi, int(R[x, y]) // v)
        for v in range(hi, -1, -1):
            d[y] = v
            rec(k + 1, d)
            del d[y]

    for p in range(top, 0, -1):
        rec(0, {pivot: p})
    return out
