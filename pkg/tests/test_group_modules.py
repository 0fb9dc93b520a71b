import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat.errors import InvalidParameter
from hopfcat.group_modules import (
    TABLE1_NAMES,
    Bicharacter,
    FiniteAbelianGroup,
    ModuleCatLabel,
    alternating_bicharacters,
    bimodule_tensor,
    braided_module_to_bimodule,
    dz2_bimodule_products,
    enumerate_module_cats,
    nontrivial_bicharacter_z2z2,
    pushforward,
    pushforward_defect,
    table1,
    trivial_bicharacter,
)

# Table 1 as printed (row ⊠ column)
PRINTED = {
    "M2": ["M2", "M1,1", "M1,2", "M4", "M2,1", "M2,2"],
    "M1,1": ["M1,1", "2M1,1", "M2,1", "M2,1", "2M2,1", "M1,1"],
    "M1,2": ["M1,2", "M2,2", "M2", "M2,1", "M4", "M1,1"],
    "M4": ["M4", "M2,2", "M2,2", "2M4", "M4", "2M2,2"],
    "M2,1": ["M2,1", "M1,1", "M1,1", "2M2,1", "M2,1", "2M2,2"],
    "M2,2": ["M2,2", "2M2,2", "M4", "M4", "2M4", "M2,2"],
}

GROUPS = [FiniteAbelianGroup(o) for o in [(), (2,), (3,), (4,), (2, 2)]]
_CATS: dict = {}


def cats(a, b):
    key = (a.orders, b.orders)
    if key not in _CATS:
        _CATS[key] = enumerate_module_cats(a + b)
    return _CATS[key]


@pytest.fixture(scope="module")
def tab():
    return table1()


@pytest.mark.parametrize("row,col", list(itertools.product(TABLE1_NAMES, repeat=2)))
def test_table1_cell(tab, row, col):
    text = PRINTED[row][TABLE1_NAMES.index(col)]
    want = (int(text[0]), text[1:]) if text[0].isdigit() else (1, text)
    assert tuple(tab[row, col]) == want


@pytest.mark.parametrize("orders,count", [((), 1), ((2,), 2), ((4,), 3), ((2, 2), 5), ((3, 3), 6), ((2, 4), 8)])
def test_subgroup_counts(orders, count):
    assert len(FiniteAbelianGroup(orders).subgroups()) == count


@pytest.mark.parametrize("orders,count", [((), 1), ((2,), 2), ((2, 2), 6), ((3, 3), 8)])
def test_module_category_counts(orders, count):
    assert len(enumerate_module_cats(FiniteAbelianGroup(orders))) == count


def test_alternating_bicharacters_z2z2():
    G = FiniteAbelianGroup((2, 2))
    full = frozenset(G.elements())
    forms = alternating_bicharacters(G, full)
    assert len(forms) == 2
    psi = nontrivial_bicharacter_z2z2()
    assert psi.is_biadditive() and psi.is_alternating() and not psi.is_trivial()
    assert psi((1, 0), (0, 1)) == Fraction(1, 2)


def test_callable_bicharacter_biadditivity():
    G = FiniteAbelianGroup((4,))
    H = frozenset(G.elements())
    assert Bicharacter(G, H, func=lambda x, y: Fraction(x[0] * y[0], 4)).is_biadditive()
    assert not Bicharacter(G, H, func=lambda x, y: Fraction(x[0] ** 2 * y[0], 4)).is_biadditive()


def test_pushforward_well_defined_on_kernel_cosets():
    G = FiniteAbelianGroup((2, 2))
    psi = Bicharacter(G, frozenset(G.elements()), func=lambda x, y: Fraction(x[0] * y[0], 2))
    target = FiniteAbelianGroup((2,))
    image, pushed = pushforward(psi, G.elements(), lambda u: u[:1], target)
    assert len(image) == 2
    assert pushforward_defect(psi, G.elements(), lambda u: u[:1], pushed) == 0
    # a pairing that sees the kernel is not well defined on the image
    bad = Bicharacter(G, frozenset(G.elements()), func=lambda x, y: Fraction(x[1] * y[1], 2))
    _, pushed = pushforward(bad, G.elements(), lambda u: u[:1], target)
    assert pushforward_defect(bad, G.elements(), lambda u: u[:1], pushed) > 0


def test_dz2_products():
    rows = {r["A"]: r for r in dz2_bimodule_products()}
    assert rows["0xZ2"]["multiplicity"] == 2 and rows["0xZ2"]["result_is_M"]
    z = rows["Z2x0"]
    assert z["multiplicity"] == 1 and z["result_is_AxA_trivial"] and z["discrepancy"]


def test_braided_module_rejects_cocycle():
    G = FiniteAbelianGroup((2, 2))
    full = frozenset(G.elements())
    with pytest.raises(InvalidParameter):
        braided_module_to_bimodule(2, full, nontrivial_bicharacter_z2z2())
    label = braided_module_to_bimodule(2, [(0, 0), (0, 1)])
    assert isinstance(label, ModuleCatLabel) and label.rank * len(label.H) == 16


def test_label_json():
    L = enumerate_module_cats(FiniteAbelianGroup((2, 2)))[0]
    js = L.to_json()
    assert set(js) >= {"group", "H", "psi_values"}


def _unit(A):
    G = A + A
    H = frozenset(a + A.neg(a) for a in A.elements())
    return ModuleCatLabel(G, H, trivial_bicharacter(G, H), "unit")


_PAIRS = [(a, b, c) for a, b, c in itertools.product(GROUPS, repeat=3) if (a + b).order <= 16 and (b + c).order <= 16]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(_PAIRS), st.data())
def test_multiplicity_integrality(groups, data):
    A1, A2, A3 = groups
    L1 = data.draw(st.sampled_from(cats(A1, A2)))
    L2 = data.draw(st.sampled_from(cats(A2, A3)))
    prod = bimodule_tensor(L1, L2, A1, A2, A3)
    assert isinstance(prod.multiplicity, int) and prod.multiplicity >= 1
    assert prod.label.psi.is_biadditive() and prod.label.psi.is_alternating()
    # the pushed pairing is independent of the preimages chosen
    n1, n2 = len(A1.orders), len(A2.orders)

    def phi(u):
        return u[:n1] + u[n1 + 2 * n2 :]

    def form(u, v):
        return L1.psi(u[: n1 + n2], v[: n1 + n2]) + L2.psi(u[n1 + n2 :], v[n1 + n2 :])

    assert pushforward_defect(form, prod.complement, phi, prod.label.psi) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([g for g in GROUPS if (g + g).order <= 16]), st.sampled_from(GROUPS), st.data())
def test_unit_law(A, B, data):
    if (A + B).order > 16:
        return
    L = data.draw(st.sampled_from(cats(A, B)))
    prod = bimodule_tensor(_unit(A), L, A, A, B)
    assert prod.multiplicity == 1 and prod.label.same_as(L)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(GROUPS[:3] + GROUPS[4:]), min_size=4, max_size=4), st.data())
def test_associativity(groups, data):
    A = groups
    x = data.draw(st.sampled_from(cats(A[0], A[1])))
    y = data.draw(st.sampled_from(cats(A[1], A[2])))
    z = data.draw(st.sampled_from(cats(A[2], A[3])))
    p12 = bimodule_tensor(x, y, A[0], A[1], A[2])
    left = bimodule_tensor(p12.label, z, A[0], A[2], A[3])
    p23 = bimodule_tensor(y, z, A[1], A[2], A[3])
    right = bimodule_tensor(x, p23.label, A[0], A[1], A[3])
    assert p12.multiplicity * left.multiplicity == p23.multiplicity * right.multiplicity
    assert left.label.same_as(right.label)
