import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat.errors import HopfCatError, ShapeMismatch
from hopfcat.functor_monad import (
    HopfMonadData,
    check_derived_monad,
    check_hopf_monad,
    check_tensor_functor,
    derived_structure,
    double_object_map,
    forgetful_functor,
    from_group_action,
    from_hopf_algebra,
    h_matrix_sizes,
    identity_functor,
    identity_monad,
    monad_from_json,
    monad_to_json,
)
from hopfcat.groups import group_from_key
from hopfcat.hopf_algebra import builtin_hopf
from hopfcat.skeletal_cat import builtin_skeletal, fib_skeletal, vecg_trivial

Z2 = group_from_key("Z2")


def _monads():
    out = {}
    for key in ("Z2", "Z3"):
        cat = vecg_trivial(key)
        out[f"{key}-trivial"] = from_group_action(cat, Z2)
        out[f"{key}-swap"] = from_group_action(cat, Z2, [tuple(range(cat.rank)), cat.ring.dual])
    out["2+e"] = from_hopf_algebra(builtin_hopf("2+e"))
    out["2+tau"] = from_hopf_algebra(builtin_hopf("2+tau"))
    out["id-Fib"] = identity_monad(fib_skeletal())
    return out


MONADS = _monads()


@pytest.mark.parametrize("name", sorted(MONADS))
def test_constructed_monads_pass(name):
    rep = check_hopf_monad(MONADS[name])
    assert rep.passed and rep.max_residual < 1e-9


@pytest.mark.parametrize("name", sorted(MONADS))
def test_derived_structure_laws(name):
    assert check_derived_monad(MONADS[name]).passed


@pytest.mark.parametrize("key", ["VecG_trivial(Z2)", "Fib", "DZn(2)"])
def test_identity_functor(key):
    assert check_tensor_functor(identity_functor(builtin_skeletal(key))).passed


def test_forgetful_on_pointed():
    assert check_tensor_functor(forgetful_functor(vecg_trivial("Z2"))).passed


def test_forgetful_on_fib_is_not_a_tensor_functor():
    F = forgetful_functor(fib_skeletal())
    try:
        ok = check_tensor_functor(F).passed
    except ShapeMismatch:
        ok = False
    assert not ok


def test_object_maps():
    assert from_hopf_algebra(builtin_hopf("2+tau")).T.tolist() == [[2, 1], [1, 3]]
    assert MONADS["Z3-swap"].T.tolist() == [[2, 0, 0], [0, 1, 1], [0, 1, 1]]


def test_group_multiplication_on_t1():
    # μ on T(1) = C[Z2]: copies g, h go to g+h
    d = derived_structure(MONADS["Z2-trivial"])
    mu, cols = d.mu[0, 0], d.mu_cols[0, 0]
    want = np.zeros_like(mu)
    for j, (_, g, h) in enumerate(cols):
        want[(g + h) % 2, j] = 1
    assert np.allclose(mu, want)


def test_h_matrix_sizes_are_square():
    for data in MONADS.values():
        sizes = h_matrix_sizes(data.cat, data.T)
        assert all(r == c for r, c in sizes.values())


def test_double_object_map():
    cat = vecg_trivial("Z2")
    D = double_object_map(cat, identity_monad(cat))
    assert D[:, 0].tolist() == [2, 0]
    fib = fib_skeletal()
    D = double_object_map(fib, identity_monad(fib))
    assert D[:, 0].tolist() == [2, 1]
    one = vecg_trivial("1")
    assert double_object_map(one, identity_monad(one)).tolist() == [[1]]


def test_json_round_trip():
    data = MONADS["2+tau"]
    back = monad_from_json(monad_to_json(data))
    assert np.array_equal(back.T, data.T)
    assert check_hopf_monad(back).passed


def test_bad_eps_shape():
    data = MONADS["2+e"]
    with pytest.raises(ShapeMismatch):
        HopfMonadData(data.cat, data.T, data.H, np.ones(5), data.eta)


def _rejects(data) -> bool:
    try:
        return not check_hopf_monad(data).passed
    except HopfCatError:
        return True


@pytest.mark.parametrize("name", ["Z2-trivial", "Z3-swap", "2+e"])
def test_every_single_entry_perturbation_rejected(name):
    data = MONADS[name]
    for key, M in data.H.items():
        for idx in np.ndindex(M.shape):
            bad = np.array(M, dtype=complex)
            bad[idx] += 0.01
            assert _rejects(dataclasses.replace(data, H={**data.H, key: bad})), (key, idx)


@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_random_perturbation_rejected_2tau(data):
    m = MONADS["2+tau"]
    keys = sorted(m.H)
    key = data.draw(st.sampled_from(keys))
    M = np.array(m.H[key], dtype=complex)
    i = data.draw(st.integers(0, M.shape[0] - 1))
    j = data.draw(st.integers(0, M.shape[1] - 1))
    M[i, j] += data.draw(st.sampled_from([0.01, -0.01, 0.01j]))
    assert _rejects(dataclasses.replace(m, H={**m.H, key: M}))
