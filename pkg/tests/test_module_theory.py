import numpy as np
import pytest

from hopfcat.fusion_ring import find_ring_isomorphism, rep_s3_ring, validate_fusion_ring
from hopfcat.hopf_algebra import builtin_hopf
from hopfcat.module_theory import (
    check_module,
    dimension_report,
    hom_dimension,
    irreducible_modules,
    is_isomorphic,
    module_from_json,
    module_fusion_ring,
    module_tensor,
    module_to_json,
    multiplicities,
    regular_decomposition,
    regular_module,
    trivial_module,
)

KEYS = ["2+e", "1+VecZ3", "2+tau", "C[S3]"]


HOPF = {k: builtin_hopf(k) for k in KEYS}


@pytest.fixture(scope="module")
def irreps():
    return {k: irreducible_modules(HOPF[k]) for k in KEYS}


@pytest.mark.parametrize("key,dims", [
    ("2+e", [1, 1, 2]),
    ("1+VecZ3", [1, 1, 1, 3]),
    ("2+tau", [1, 1.6180339887, 1.6180339887, 2.6180339887]),
    ("C[S3]", [1, 1, 2]),
])
def test_irreducible_dimensions(irreps, key, dims):
    assert sorted(m.qdim() for m in irreps[key]) == pytest.approx(dims)


@pytest.mark.parametrize("key", KEYS)
def test_modules_valid_and_schur(irreps, key):
    mods = irreps[key]
    for i, M in enumerate(mods):
        assert check_module(M).passed
        for j, N in enumerate(mods):
            assert hom_dimension(M, N) == (i == j)


@pytest.mark.parametrize("key", KEYS)
def test_dimension_identity(irreps, key):
    rep = dimension_report(HOPF[key], irreps[key])
    assert rep["consistent"]
    assert rep["sum_squares"] == pytest.approx(rep["dim_C"] * rep["dim_H"])


@pytest.mark.parametrize("key", KEYS)
def test_module_fusion_ring_valid(irreps, key):
    assert validate_fusion_ring(module_fusion_ring(HOPF[key], irreps[key])).passed


def test_group_algebra_gives_rep_s3(irreps):
    ring = module_fusion_ring(HOPF["C[S3]"], irreps["C[S3]"])
    assert find_ring_isomorphism(ring, rep_s3_ring()) is not None


def test_regular_module_decomposition(irreps):
    H = HOPF["C[S3]"]
    assert sorted(regular_decomposition(H, irreps["C[S3]"]).tolist()) == [1, 1, 2]


def test_tensor_with_trivial_is_identity(irreps):
    H = HOPF["2+e"]
    one = trivial_module(H)
    for M in irreps["2+e"]:
        assert is_isomorphic(module_tensor(one, M), M)
        assert is_isomorphic(module_tensor(M, one), M)


def test_multiplicities_of_regular(irreps):
    H = HOPF["2+e"]
    m = multiplicities(regular_module(H), irreps["2+e"])
    assert np.array_equal(m, regular_decomposition(H, irreps["2+e"]))


def test_json_round_trip(irreps):
    H = HOPF["2+tau"]
    for M in irreps["2+tau"]:
        assert is_isomorphic(module_from_json(module_to_json(M), H), M)
