import cmath
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat.errors import DegenerateForm, InvalidParameter
from hopfcat.group_modules import FiniteAbelianGroup
from hopfcat.pointed_modular import (
    QuadraticForm,
    build_pointed,
    catalog_scan,
    condensable_subgroups,
    is_prime_pointed,
    is_simple,
    orthogonal_sum,
    su2k_report,
    su2k_twists,
)
from hopfcat.skeletal_cat import pointed_skeletal

FORMS = [("omega_p_k", (3, 1, 1)), ("omega_p_k", (3, 2, 2)), ("omega_p_k", (5, 1, 2)), ("omega_p_k", (5, 2, 1)),
         ("omega_2_k", (1, 1)), ("omega_2_k", (2, 3)), ("omega_2_k", (3, 5)), ("E_k", (1,)), ("E_k", (2,)),
         ("F_k", (1,)), ("F_k", (2,))]


@pytest.mark.parametrize("cls,params", FORMS)
def test_twists_match_skeletal(cls, params):
    qf = build_pointed(cls, *params)
    S = pointed_skeletal(cls, *params)
    n = qf.group.orders
    for x in qf.group.elements():
        idx = x[0] if len(n) == 1 else x[0] * n[1] + x[1]
        assert abs(qf.twist(x) - S.theta[idx]) < 1e-9


@pytest.mark.parametrize("cls,params", FORMS)
def test_forms_are_nondegenerate_quadratic(cls, params):
    qf = build_pointed(cls, *params)
    assert qf.is_quadratic() and qf.is_nondegenerate()


def _radical_by_matrix(qf):
    """Kernel of the polarization via its Gram matrix on generators, checked by brute force."""
    G = qf.group
    return [x for x in G.elements() if all(qf.c(x, y) == 0 for y in G.elements())]


def test_degenerate_form_rejected():
    G = FiniteAbelianGroup((2,))
    qf = QuadraticForm(G, {(0,): Fraction(0), (1,): Fraction(0)}, "zero")
    assert not qf.is_nondegenerate() and len(_radical_by_matrix(qf)) == 2
    with pytest.raises(DegenerateForm):
        is_simple(qf)


def test_invalid_params():
    with pytest.raises(InvalidParameter):
        build_pointed("omega_p_k", 4, 1, 1)
    with pytest.raises(InvalidParameter):
        build_pointed("omega_p_k", 3, 1, 3)


@pytest.mark.parametrize("p,k", list(itertools.product((3, 5, 7), (1, 2, 3))))
def test_omega_simple_iff_k1(p, k):
    assert is_simple(build_pointed("omega_p_k", p, k, 1)).simple == (k == 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_e_k_has_isotropic_witness(k):
    qf = build_pointed("E_k", k)
    res = is_simple(qf)
    assert not res.simple and res.witness[0] == "condensable"
    H = res.witness[1]
    assert len(H) > 1 and all(qf.q(x) == 0 and qf.c(x, y) == 0 for x in H for y in H)


def test_f_1_simple():
    assert is_simple(build_pointed("F_k", 1)).simple


@pytest.mark.parametrize("k", [2, 3])
def test_f_k_boson(k):
    # q(2^{k-1}, 0) = 2^{2k-2} / 2^k ∈ Z
    qf = build_pointed("F_k", k)
    x = (2 ** (k - 1), 0)
    assert qf.q(x) == 0 and qf.c(x, x) == 0
    assert any(x in H for H in condensable_subgroups(qf))


def test_prime_cases():
    assert is_prime_pointed(build_pointed("omega_p_k", 3, 1, 1)).prime
    assert is_prime_pointed(build_pointed("F_k", 1)).prime
    s = orthogonal_sum(build_pointed("omega_p_k", 3, 1, 1), build_pointed("omega_p_k", 5, 1, 1))
    res = is_prime_pointed(s)
    assert not res.prime and {len(f) for f in res.factors} == {3, 5}


def test_catalog_scan_rows():
    rows = catalog_scan(ps=(3,), ks=(1, 2))
    assert {r["class"] for r in rows} == {"omega_p_k", "omega_2_k", "E_k", "F_k"}
    assert all(isinstance(r["simple"], bool) for r in rows)


def test_su2k_twist_at_k():
    # θ_k = e^{2πi k/4}
    for k in range(1, 12):
        assert abs(su2k_twists(k)[k] - cmath.exp(2j * math.pi * k / 4)) < 1e-12


@pytest.mark.parametrize("k", range(1, 13))
def test_su2k_mod4_rule(k):
    r = su2k_report(k)
    assert r["splits"] == (k % 2 == 1)
    assert r["condensable_0k"] == (k % 4 == 0)
    assert r["simple"] == (k % 4 == 2)


def test_su2k_examples():
    assert su2k_report(3)["splits"]
    assert su2k_report(4)["condensable_0k"]
    assert su2k_report(6)["simple"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 3), st.integers(1, 6))
def test_omega_twist_is_u_x2(p, k, u):
    if u % p == 0:
        return
    qf = build_pointed("omega_p_k", p, k, u)
    n = p**k
    for x in qf.group.elements():
        assert qf.q(x) == Fraction(u * x[0] ** 2 % n, n)
        assert qf.braiding(x, x) == qf.q(x)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FORMS), st.data())
def test_polarization_biadditive(form, data):
    qf = build_pointed(form[0], *form[1])
    elems = qf.group.elements()
    x, y, z = (data.draw(st.sampled_from(elems)) for _ in range(3))
    assert qf.c(qf.group.add(x, y), z) == (qf.c(x, z) + qf.c(y, z)) % 1
    assert np.isclose(abs(qf.twist(x)), 1)
