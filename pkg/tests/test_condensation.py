import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat.condensation import (
    braided_input,
    canonical_rows,
    check_condensable,
    classify_confinement,
    comonad_object_map,
    condense,
    dhaag_given,
    exhaustive_factorizations,
    factorize,
    hom_count_matrix,
    result_to_json,
    solve_condensed_fusion,
    trivial_given,
    verify_given_condensation,
)
from hopfcat.errors import FactorizationNotFound, MissingTwists
from hopfcat.fusion_ring import builtin_ring, object_vector, validate_fusion_ring

CASES = [("RepS3", "A+C", 2), ("DoubleOfGroup(S3)", "A+C", 6), ("DFib", "11+ttb", 2), ("DoubleOfGroup(Z2)", "1+e", 2)]


@pytest.fixture(scope="module")
def results():
    return {(k, a): condense(braided_input(k), a) for k, a, _ in CASES}


@pytest.mark.parametrize("key,alg,rank", CASES)
def test_condensed_rank_and_gram(results, key, alg, rank):
    res = results[key, alg]
    assert res.condensed.rank == rank
    assert np.array_equal(res.D.T @ res.D, res.M)
    assert validate_fusion_ring(res.condensed).passed


@pytest.mark.parametrize("key,alg,rank", CASES)
def test_d_is_monoidal(results, key, alg, rank):
    res = results[key, alg]
    N, Nc, D = res.input.ring.N, res.condensed.N, res.D
    lhs = np.einsum("cX,dY,cde->XYe", D, D, Nc)
    rhs = np.einsum("XYZ,eZ->XYe", N, D)
    assert np.array_equal(lhs, rhs)


def test_condensability_checks():
    assert check_condensable(braided_input("RepS3"), "A+C").passed
    B = braided_input("DFib")
    assert check_condensable(B, "11+ttb").passed
    # nontrivial twist, disconnected, no unit
    for bad in ("11+t1", "2*11+ttb", "ttb"):
        assert not check_condensable(B, bad).passed


def test_toric_code_boson():
    res = condense(braided_input("DoubleOfGroup(Z2)"), "1+e")
    # condensing e in D(Z2) leaves Vec with the fermion confined
    assert res.condensed.rank == 2
    assert sum(res.confined) == 1


def test_missing_twists_for_confinement():
    res = condense(braided_input("SO8GaugedS3"), "A+C")
    assert res.confined is None
    with pytest.raises(MissingTwists):
        classify_confinement(braided_input("SO8GaugedS3"), res)


def test_comonad_blocks_rep_s3(results):
    rep = comonad_object_map(results["RepS3", "A+C"])
    assert rep.W.tolist() == [2, 1]


def test_json_export(results):
    js = result_to_json(results["RepS3", "A+C"])
    assert js["algebra"] == {"A": 1, "C": 1}
    assert js["E"][results["RepS3", "A+C"].condensed.labels[0]] == {"A": 1, "C": 1}


@pytest.mark.parametrize("p", [3, 5])
def test_dhaag_given(p):
    data = dhaag_given(p)
    assert verify_given_condensation(data).passed
    T = data.D @ data.E
    X = data.condensed.index("X")
    assert T[X, X] == p * p + 2


def test_trivial_given():
    assert verify_given_condensation(trivial_given(builtin_ring("Fib"))).passed


def test_factorize_rejects_non_gram():
    with pytest.raises(FactorizationNotFound):
        factorize(np.array([[1, 1], [1, 1]]) - np.eye(2, dtype=int) * 2)
    with pytest.raises(FactorizationNotFound):
        factorize(np.array([[1, 2], [2, 1]]))


def test_solve_condensed_fusion_unique_for_rep_s3(results):
    res = results["RepS3", "A+C"]
    sols = solve_condensed_fusion(res.input.ring, res.D)
    assert len(sols) == 1 and np.array_equal(sols[0], res.condensed.N)


def _canon(D):
    return sorted(map(tuple, np.asarray(D).tolist()))


@pytest.mark.parametrize("key,obj", [("RepS3", "A+C"), ("DFib", "11+ttb"), ("DoubleOfGroup(S3)", "A+C"),
                                     ("DoubleOfGroup(Z2)", "1+e"), ("SU2k(4)", "0+4")])
def test_factorize_matches_exhaustive_oracle(key, obj):
    ring = builtin_ring(key)
    M = hom_count_matrix(ring, object_vector(ring, obj))
    sols = exhaustive_factorizations(M)
    best = min(len(s) for s in sols)
    oracle = sorted(_canon(s) for s in sols if len(s) == best)
    found = sorted(_canon(D) for D in factorize(M, all_solutions=True))
    assert found == oracle


def _random_gram(seed, n, r, top):
    rng = np.random.default_rng(seed)
    D = rng.integers(0, top + 1, (r, n))
    D[:, 0] = 0
    D = np.vstack([np.eye(1, n, dtype=np.int64), D])
    return D[D.any(axis=1)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6), st.integers(1, 5))
def test_factorize_random_gram(seed, n, r):
    D = _random_gram(seed, n, r, 2)
    M = D.T @ D
    (F,) = factorize(M)
    assert np.array_equal(F.T @ F, M)
    assert len(F) <= len(D)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 3))
def test_factorize_random_gram_is_minimal(seed, n, r):
    D = _random_gram(seed, n, r, 1)
    M = D.T @ D
    (F,) = factorize(M)
    sols = exhaustive_factorizations(M, max_rows=len(D))
    assert len(F) == min(len(s) for s in sols)


def test_canonical_rows_unit_first():
    D = np.array([[0, 1, 1], [1, 0, 1]])
    assert canonical_rows(D, 0)[0].tolist() == [1, 0, 1]
