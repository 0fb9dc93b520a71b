import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat.errors import UnknownKey
from hopfcat.hopf_algebra import (
    SolverConfig,
    antipode_order,
    builtin_algebra,
    builtin_hopf,
    check_algebra,
    check_hopf_axioms,
    copy_keys,
    decompose_algebra,
    find_integral,
    gauge_transform,
    hopf_fingerprint,
    hopf_from_json,
    hopf_to_json,
    random_gauge,
    solve_hopf_structures,
    structure_flags,
)

KEYS = ["2+e", "1+VecZ3", "2+tau", "C[S3]", "C[Z3]", "unit(Fib)"]


@pytest.mark.parametrize("key", KEYS)
def test_builtin_axioms(key):
    rep = check_hopf_axioms(builtin_hopf(key))
    assert rep.passed and rep.max_residual < 1e-9


@pytest.mark.parametrize("key,order", [("2+e", 2), ("1+VecZ3", 1), ("2+tau", 10), ("C[S3]", 2), ("unit(Fib)", 1)])
def test_antipode_order(key, order):
    assert antipode_order(builtin_hopf(key)) == order


def test_integrals():
    I = find_integral(builtin_hopf("2+e"))
    assert np.allclose(I.vector, [1, -1, 0]) and I.counit_value == pytest.approx(1)
    assert find_integral(builtin_hopf("2+tau")).semisimple


def test_structure_flags():
    assert structure_flags(builtin_hopf("2+e")) == {"commutative": True, "cocommutative": True}
    assert structure_flags(builtin_hopf("C[S3]")) == {"commutative": False, "cocommutative": True}


def test_algebra_checks():
    for key in ("2+e", "1+VecZ3", "1+VecZ(5)"):
        assert check_algebra(builtin_algebra(key)).passed


def test_copy_keys():
    assert copy_keys(builtin_hopf("2+e").base) == ["(1,1)", "(1,2)", "(e,1)"]


def test_decompose_2e():
    blocks = decompose_algebra(builtin_hopf("2+e").base)
    # 2+e = 1 ⊕ (1+e) as algebras
    assert sorted(tuple(b.support) for b in blocks) == [(1, 0), (1, 1)]


def test_unknown_keys():
    with pytest.raises(UnknownKey):
        builtin_hopf("3+e")
    with pytest.raises(UnknownKey):
        builtin_algebra("3+e")


@pytest.mark.parametrize("key", ["2+e", "1+VecZ3", "2+tau"])
def test_json_round_trip(key):
    H = builtin_hopf(key)
    assert hopf_fingerprint(hopf_from_json(hopf_to_json(H))) == hopf_fingerprint(H)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10_000), key=st.sampled_from(["2+e", "1+VecZ3", "2+tau"]))
def test_gauge_invariance(seed, key):
    H = builtin_hopf(key)
    G = gauge_transform(H, random_gauge(H, seed))
    assert check_hopf_axioms(G, 1e-7).passed
    assert hopf_fingerprint(G) == hopf_fingerprint(H)


def test_solver_finds_2e():
    res = solve_hopf_structures(builtin_algebra("2+e"), SolverConfig(restarts=10, seed=1))
    assert len(res.orbits) == 1
    assert hopf_fingerprint(res.orbits[0]) == hopf_fingerprint(builtin_hopf("2+e"))


def test_solver_is_deterministic():
    cfg = SolverConfig(restarts=6, seed=11)
    a = solve_hopf_structures(builtin_algebra("1+VecZ3"), cfg)
    b = solve_hopf_structures(builtin_algebra("1+VecZ3"), cfg)
    assert a.found == b.found and a.log == b.log
    assert [hopf_fingerprint(h) for h in a.orbits] == [hopf_fingerprint(h) for h in b.orbits]
