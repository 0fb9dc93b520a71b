import cmath
import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat.errors import InvalidParameter, MultiplicityNotSupported, UnknownKey
from hopfcat.fusion_ring import builtin_ring
from hopfcat.skeletal_cat import (
    FBlock,
    SkeletalData,
    builtin_skeletal,
    check_hexagon,
    check_pentagon,
    check_twists,
    evaluate_diagram,
    fib_skeletal,
    hom_basis,
    pointed_skeletal,
    twists_from_R,
)

BUILTINS = [
    "VecG_trivial(Z2)", "VecG_trivial(Z3)", "VecG_trivial(Z2xZ2)", "VecG_trivial(S3)", "Fib", "DZn(2)",
    "DZn(3)", "Pointed(omega_p_k,3,1,1)", "Pointed(omega_p_k,3,2,2)", "Pointed(omega_p_k,5,1,2)",
    "Pointed(omega_2_k,1,1)", "Pointed(omega_2_k,2,3)", "Pointed(E_k,1)", "Pointed(E_k,2)", "Pointed(F_k,1)",
]


@pytest.mark.parametrize("key", BUILTINS)
def test_builtin_pentagon_and_hexagon(key):
    S = builtin_skeletal(key)
    rep = check_pentagon(S)
    assert rep.passed and rep.max_residual < 1e-9
    if S.braided:
        rep = check_hexagon(S)
        assert rep.passed and rep.max_residual < 1e-9
        assert check_twists(S).passed


def test_fib_twist_from_r():
    th = twists_from_R(fib_skeletal())
    assert th[1] == pytest.approx(cmath.exp(4j * math.pi / 5))


def test_fib_f_matrix_is_involution():
    F = fib_skeletal().F[(1, 1, 1, 1)].matrix
    assert np.allclose(F @ F, np.eye(2))


def _perturb_f(S, key, idx, delta):
    blk = S.F[key]
    m = np.array(blk.matrix, dtype=complex)
    m[idx] += delta
    F = dict(S.F)
    F[key] = FBlock(blk.left, blk.right, m)
    return SkeletalData(S.ring, F, S.R, S.theta, S.name)


@pytest.mark.parametrize("idx", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_pentagon_rejects_perturbed_fib(idx):
    bad = _perturb_f(fib_skeletal(), (1, 1, 1, 1), idx, 0.01)
    assert not check_pentagon(bad).passed


def test_hexagon_rejects_wrong_chirality():
    S = fib_skeletal()
    R = {k: v.conjugate() if k == (1, 1, 1) else v for k, v in S.R.items()}
    bad = dataclasses.replace(S, R=R, _fd=None, _fi=None)
    assert not check_hexagon(bad).passed


def test_multiplicity_rejected():
    with pytest.raises(MultiplicityNotSupported):
        SkeletalData(builtin_ring("NearGroup(3,2)"), {})


def test_unknown_and_invalid_keys():
    with pytest.raises(UnknownKey):
        builtin_skeletal("Nope")
    with pytest.raises(InvalidParameter):
        builtin_skeletal("Pointed(omega_p_k,4,1,1)")


def test_double_braid_is_monodromy():
    S = fib_skeletal()
    mm = evaluate_diagram(S, ["t", "t"], [("braid", 0), ("braid", 0)], target="1")
    th = S.theta
    # c² on Hom(1, t⊗t) is θ_1 / θ_t²
    assert mm.entries.shape == (1, 1)
    assert mm.entries[0, 0] == pytest.approx(th[0] / th[1] ** 2)


def test_braid_then_inverse_is_identity():
    S = fib_skeletal()
    op = evaluate_diagram(S, ["t", "t", "t"], [("braid", 1), ("braid_inv", 1)])
    assert np.allclose(op.dense(), np.eye(op.dense().shape[0]))


def test_hom_basis_sizes():
    S = fib_skeletal()
    # t^3 = 1 + 2t
    assert hom_basis(S, ["t", "t", "t"], "1").size == 1
    assert hom_basis(S, ["t", "t", "t"], "t").size == 2


@settings(max_examples=25, deadline=None)
@given(p=st.sampled_from([3, 5, 7]), u=st.integers(1, 6))
def test_pointed_omega_hexagon(p, u):
    if u % p == 0:
        return
    S = pointed_skeletal("omega_p_k", p, 1, u)
    assert check_hexagon(S).max_residual < 1e-9
    assert check_pentagon(S).max_residual < 1e-9
