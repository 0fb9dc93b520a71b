import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat.errors import DimensionMismatch, InputParseError, UnknownKey
from hopfcat.fusion_ring import (
    FusionRing,
    builtin_ring,
    decompose_product,
    deligne_product,
    drinfeld_double_of_group,
    find_ring_isomorphism,
    format_object,
    global_dimension,
    make_ring,
    near_group_ring,
    object_vector,
    quantum_dimensions,
    su2k_ring,
    subring_closed,
    validate_fusion_ring,
)
from hopfcat.groups import group_from_key

SAMPLE_KEYS = [
    "VecG(Z2)", "VecG(Z2xZ2)", "VecG(S3)", "Fib", "Fib_p(3)", "Haag_p(3)", "RepS3", "DoubleOfGroup(Z2)",
    "DoubleOfGroup(S3)", "SU2k(2)", "SU2k(5)", "DHaagCondensed(3)", "SO8GaugedS3", "DFib", "Ising",
    "IsingIsing", "NearGroup(3,2)", "NearGroup(2,1)",
]


@pytest.mark.parametrize("key", SAMPLE_KEYS)
def test_catalog_rings_validate(key):
    ring = builtin_ring(key)
    rep = validate_fusion_ring(ring)
    assert rep.passed, rep.summary()


def test_identity_ring():
    ring = make_ring(["1"], [[[1]]])
    assert validate_fusion_ring(ring).passed
    assert quantum_dimensions(ring).tolist() == [1.0]


def test_broken_associativity_lists_violations():
    N = np.zeros((2, 2, 2), dtype=int)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = 1
    N[1, 1, 0] = 1
    N[1, 1, 1] = 2
    ok = make_ring(["1", "x"], N)
    assert validate_fusion_ring(ok).passed
    N[1, 1, 1] = 1
    N[0, 1, 1] = 0
    bad = FusionRing(("1", "x"), 0, N, (0, 1))
    rep = validate_fusion_ring(bad)
    assert not rep.passed


def test_dimension_mismatch_from_json():
    with pytest.raises(DimensionMismatch):
        FusionRing.from_json({"labels": ["1", "x"], "N": [[[1]]]})


def test_json_round_trip():
    ring = builtin_ring("Haag_p(3)")
    back = FusionRing.from_json(ring.to_json(), ring.name)
    assert back == ring


def test_unknown_key():
    with pytest.raises(UnknownKey):
        builtin_ring("Nope")


def test_parse_and_format():
    ring = builtin_ring("RepS3")
    v = object_vector(ring, "A+2C")
    assert v.tolist() == [1, 0, 2]
    assert format_object(ring, v) == "A+2C"
    with pytest.raises(InputParseError):
        object_vector(ring, "A+Q")
    fib = builtin_ring("Fib")
    assert decompose_product(fib, "t", "t").tolist() == [1, 1]


def test_rep_s3_rules():
    ring = builtin_ring("RepS3")
    A, B, C = (ring.index(x) for x in "ABC")
    assert ring.N[B, B].tolist() == [1, 0, 0]
    assert ring.N[C, C].tolist() == [1, 1, 1]
    assert ring.N[B, C].tolist() == [0, 0, 1]


def test_fib_dimensions():
    d = quantum_dimensions(builtin_ring("Fib"))
    assert d[1] == pytest.approx((1 + math.sqrt(5)) / 2)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 6])
def test_su2k_dimensions_match_verlinde(k):
    # quantum integers [j+1]_q at q = e^{iπ/(k+2)}
    want = [math.sin((j + 1) * math.pi / (k + 2)) / math.sin(math.pi / (k + 2)) for j in range(k + 1)]
    assert np.allclose(quantum_dimensions(su2k_ring(k)), want)


@pytest.mark.parametrize("p", [3, 5])
def test_haag_p_dimension(p):
    ring = builtin_ring(f"Haag_p({p})")
    d = quantum_dimensions(ring)
    # ρ^2 = 1 + Σ ρ_g: d^2 = 1 + p d
    rho = (p + math.sqrt(p * p + 4)) / 2
    assert np.isclose(d.max(), rho)


def test_double_global_dimension():
    for key, order in [("Z2", 2), ("Z3", 3), ("S3", 6)]:
        ring, _ = drinfeld_double_of_group(group_from_key(key))
        assert global_dimension(ring) == pytest.approx(order**2)


def test_double_s3_rank():
    ring, _ = drinfeld_double_of_group(group_from_key("S3"))
    assert ring.rank == 8


def test_near_group_rule():
    ring = near_group_ring(3, 2)
    X = ring.rank - 1
    assert ring.N[X, X].tolist() == [1, 1, 1, 2]


def test_isomorphism_detects_relabeling():
    ring = builtin_ring("SU2k(3)")
    perm = [0, 2, 1, 3]
    N = ring.N[np.ix_(perm, perm, perm)]
    other = make_ring([ring.labels[i] for i in perm], N)
    iso = find_ring_isomorphism(ring, other)
    assert iso is not None
    assert find_ring_isomorphism(ring, builtin_ring("NearGroup(3,2)")) is None


def test_deligne_product_of_fib():
    ff = deligne_product(builtin_ring("Fib"), builtin_ring("Fib"))
    assert ff.rank == 4 and validate_fusion_ring(ff).passed
    assert find_ring_isomorphism(ff, builtin_ring("DFib")) is not None


def test_subring_closed():
    ring = builtin_ring("SU2k(4)")
    assert subring_closed(ring, [0, 2, 4])
    assert not subring_closed(ring, [0, 1])


@settings(max_examples=60, deadline=None)
@given(key=st.sampled_from(SAMPLE_KEYS), data=st.data())
def test_associativity_on_random_triples(key, data):
    ring = builtin_ring(key)
    a, b, c = (data.draw(st.integers(0, ring.rank - 1)) for _ in range(3))
    N = ring.N
    left = np.einsum("e,ed->d", N[a, b], N[:, c, :])
    right = np.einsum("f,fd->d", N[b, c], N[a, :, :])
    assert np.array_equal(left, right)


@settings(max_examples=40, deadline=None)
@given(key=st.sampled_from(SAMPLE_KEYS), data=st.data())
def test_frobenius_reciprocity(key, data):
    ring = builtin_ring(key)
    a, b, c = (data.draw(st.integers(0, ring.rank - 1)) for _ in range(3))
    N, dual = ring.N, ring.dual
    assert N[a, b, c] == N[dual[a], c, b] == N[c, dual[b], a]


@settings(max_examples=30, deadline=None)
@given(key=st.sampled_from(SAMPLE_KEYS))
def test_dimensions_are_a_character(key):
    ring = builtin_ring(key)
    d = quantum_dimensions(ring)
    assert np.allclose(np.einsum("abc,c->ab", ring.N, d), np.outer(d, d))
