import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat import _kernels_py, kernels

try:
    from hopfcat import _kernels
except ImportError:  # extension not built
    _kernels = None


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    assert (kernels.BACKEND == "cython") == (_kernels is not None)


def _residual(seed, n, r):
    rng = np.random.default_rng(seed)
    D = rng.integers(0, 3, (r, n))
    return (D.T @ D).astype(np.int64)


@pytest.mark.skipif(_kernels is None, reason="compiled kernels not built")
@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 5), st.integers(1, 4))
def test_backend_parity(seed, n, r):
    R = _residual(seed, n, r)
    cols = list(range(n))
    assert bool(_kernels.feasible(R, cols)) == bool(_kernels_py.feasible(R, cols))
    p = next((i for i in range(n) if R[i, i] > 0), None)
    if p is None:
        return
    later = [i for i in range(n) if i != p]
    assert list(_kernels.candidate_rows(R, p, later)) == list(_kernels_py.candidate_rows(R, p, later))


def test_python_candidates_reconstruct_gram():
    R = np.array([[2, 1], [1, 1]], dtype=np.int64)
    rows = _kernels_py.candidate_rows(R, 0, [1])
    assert {0: 1, 1: 1} in rows
