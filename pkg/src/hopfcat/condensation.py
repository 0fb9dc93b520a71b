"""Anyon condensation at the level of multiplicities.

For a condensable algebra A in a braided category B, Frobenius reciprocity
gives dim Hom(X, A⊗Y) = dim Hom_A(D(X), D(Y)).  Writing D as a nonnegative
integer matrix (rows: simple A-modules, columns: simples of B) this reads
DᵀD = M with M[X, Y] = Σ_a A_a N[a, Y, X].  The factorization is found by a
branch-and-bound search; the condensed fusion rules then follow from
D(X)⊗D(Y) = D(X⊗Y).
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.optimize

from .errors import FactorizationNotFound, FusionInconsistent, InconsistentData, MissingTwists
from .fusion_ring import (
    FusionRing,
    builtin_ring,
    dfib_ring,
    drinfeld_double_data,
    dhaag_condensed_ring,
    fib_ring,
    ising_ring,
    make_ring,
    object_vector,
    quantum_dimensions,
    rep_s3_ring,
    restrict_ring,
    su2k_ring,
    subring_closed,
    validate_fusion_ring,
)
from .groups import group_from_key
from .kernels import candidate_rows, feasible
from .report import ValidationReport, default_tolerance

PHASE_TOL = 1e-6
DIM_TOL = 1e-6
DEFAULT_NODE_LIMIT = 2_000_000


@dataclass(frozen=True, eq=False)
class BraidedInput:
    ring: FusionRing
    twists: np.ndarray  # NaN where unknown
    qdims: np.ndarray
    name: str = ""

    def __post_init__(self):
        tw = np.asarray(self.twists, dtype=complex)
        object.__setattr__(self, "twists", tw)
        object.__setattr__(self, "qdims", np.asarray(self.qdims, dtype=float))
        u = self.ring.unit
        if not np.isnan(tw[u]) and abs(tw[u] - 1) > PHASE_TOL:
            raise InconsistentData("the unit must have trivial twist")

    def twist_known(self, a: int) -> bool:
        return not np.isnan(self.twists[a])


@dataclass(frozen=True, eq=False)
class CondensationResult:
    input: BraidedInput
    algebra: np.ndarray
    condensed: FusionRing
    D: np.ndarray  # condensed × input
    confined: tuple | None
    M: np.ndarray
    alternatives: list = field(default_factory=list)

    @property
    def E(self) -> np.ndarray:
        """E[X, c]: multiplicity of X in E_A(c)."""
        return self.D.T.copy()

    @property
    def T_object(self) -> np.ndarray:
        return self.D @ self.E


def _unit_phase(z) -> bool:
    return abs(z - 1) < PHASE_TOL


# ---------------------------------------------------------------------------
# builtin braided inputs

def _phase(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


def braided_input(name: str) -> BraidedInput:
    """Catalog rings with twists: RepS3, DoubleOfGroup(G), Fib, DFib, Ising, SU2k(k), SO8GaugedS3."""
    key = name.strip()
    if key == "RepS3":
        ring = rep_s3_ring()
        tw = np.ones(ring.rank, dtype=complex)
    elif key.startswith("DoubleOfGroup"):
        g = key[key.index("(") + 1 : key.rindex(")")]
        data = drinfeld_double_data(group_from_key(g))
        ring, tw = data.ring, data.twists
    elif key == "Fib":
        ring = fib_ring()
        tw = np.array([1, _phase(2 / 5)])
    elif key == "DFib":
        ring = dfib_ring()
        t = _phase(2 / 5)
        lookup = {"11": 1, "1tb": t.conjugate(), "t1": t, "ttb": 1}
        tw = np.array([lookup[lab] for lab in ring.labels], dtype=complex)
    elif key == "Ising":
        ring = ising_ring()
        tw = np.array([1, _phase(1 / 16), -1])
    elif key.startswith("SU2k"):
        k = int(key[key.index("(") + 1 : key.rindex(")")])
        ring = su2k_ring(k)
        tw = np.array([_phase(j * (j + 2) / (4 * (k + 2))) for j in range(k + 1)])
    elif key == "SO8GaugedS3":
        ring = builtin_ring("SO8GaugedS3")
        # only the Rep(S3) part is fixed by the data at hand
        tw = np.full(ring.rank, np.nan, dtype=complex)
        for lab in ("A", "B", "C"):
            tw[ring.index(lab)] = 1
    else:
        from .errors import UnknownKey

        raise UnknownKey(f"unknown braided input {name!r}")
    return BraidedInput(ring, tw, quantum_dimensions(ring), key)


# ---------------------------------------------------------------------------
# Frobenius hom counts and factorization

def hom_count_matrix(ring: FusionRing, A) -> np.ndarray:
    """M[X, Y] = dim Hom(X, A ⊗ Y)."""
    A = np.asarray(A, dtype=np.int64)
    return np.einsum("a,aYX->XY", A, ring.N).astype(np.int64)


def _column_order(M: np.ndarray, unit: int) -> list[int]:
    n = M.shape[0]
    rest = sorted((x for x in range(n) if x != unit), key=lambda x: (M[x, x], x))
    return [unit] + rest


def factorize(M: np.ndarray, unit: int = 0, node_limit: int = DEFAULT_NODE_LIMIT, all_solutions: bool = False):
    """Nonnegative integer D with DᵀD = M and the fewest rows.

    Columns are processed in a fixed order; every row is created at its first
    nonzero column (its pivot), and rows sharing a pivot are generated in
    non-increasing order, so each factorization is visited once up to row
    order.  Returns the list of optimal row sets (one when ``all_solutions``
    is false).
    """
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n) or not np.array_equal(M, M.T) or (M < 0).any():
        raise FactorizationNotFound("hom-count matrix must be symmetric and nonnegative")
    order = _column_order(M, unit)
    best: list = []
    best_rows = [math.inf]
    nodes = [0]

    def search(R, k, rows, last):
        nodes[0] += 1
        if nodes[0] > node_limit:
            raise FactorizationNotFound(f"factorization search exceeded {node_limit} nodes")
        while k < n and R[order[k], order[k]] == 0:
            if any(R[order[k], y] for y in order[k:]):
                return
            k += 1
            last = None
        if k == n:
            if len(rows) < best_rows[0]:
                best_rows[0] = len(rows)
                best.clear()
            if len(rows) == best_rows[0] and (all_solutions or not best):
                best.append([r.copy() for r in rows])
            return
        if len(rows) + 1 > best_rows[0]:
            return
        pivot = order[k]
        later = order[k + 1 :]
        for d in candidate_rows(R, pivot, later):
            vec = np.zeros(n, dtype=np.int64)
            for x, v in d.items():
                vec[x] = v
            key = tuple(vec[order])
            if last is not None and key > last:
                continue
            R2 = R - np.outer(vec, vec)
            if not feasible(R2, order[k:]):
                continue
            rows.append(vec)
            search(R2, k, rows, key)
            rows.pop()

    search(M.copy(), 0, [], None)
    if not best:
        raise FactorizationNotFound("no nonnegative integer factorization DᵀD = M")
    return [np.array(rows, dtype=np.int64) for rows in best]


def exhaustive_factorizations(M: np.ndarray, max_rows: int | None = None) -> list[np.ndarray]:
    """All DᵀD = M up to row order by plain enumeration (no pruning beyond entry bounds).

    Independent of ``factorize``; only practical for small ranks.
    """
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    bounds = [math.isqrt(int(M[x, x])) for x in range(n)]
    rows = [
        np.array(v, dtype=np.int64)
        for v in itertools.product(*(range(b + 1) for b in bounds))
        if any(v) and all(v[x] * v[y] <= M[x, y] for x in range(n) for y in range(n))
    ]
    rows.sort(key=lambda v: tuple(-v))
    limit = max_rows if max_rows is not None else int(np.trace(M))
    out = []

    def rec(start, R, chosen):
        if not R.any():
            out.append(np.array(chosen, dtype=np.int64))
            return
        if len(chosen) >= limit:
            return
        for i in range(start, len(rows)):
            R2 = R - np.outer(rows[i], rows[i])
            if (R2 < 0).any() or (np.diag(R2) < 0).any():
                continue
            chosen.append(rows[i])
            rec(i, R2, chosen)
            chosen.pop()

    rec(0, M.copy(), [])
    return out


def canonical_rows(D: np.ndarray, unit: int) -> np.ndarray:
    """Unit row first, then rows by first nonzero column and decreasing entries."""
    rows = list(D)
    first = next(i for i, r in enumerate(rows) if r[unit] == 1)
    head = rows.pop(first)

    def key(r):
        nz = np.nonzero(r)[0]
        return (int(nz[0]), tuple(-r))

    return np.array([head] + sorted(rows, key=key), dtype=np.int64)


# ---------------------------------------------------------------------------
# condensed fusion

def _condensed_dual(ring: FusionRing, D: np.ndarray) -> list[int] | None:
    """c* from D(X*) = D(X)*: the row of c read through the input duality."""
    perm = [ring.dual[x] for x in range(ring.rank)]
    rows = [tuple(r) for r in D]
    out = []
    for r in D:
        target = tuple(r[perm])
        hits = [i for i, q in enumerate(rows) if q == target]
        if len(hits) != 1:
            return None
        out.append(hits[0])
    return out


def _fusion_system(ring: FusionRing, D: np.ndarray):
    """Linear constraints on the flattened N'[c, c', e].

    D is monoidal: D(X)⊗D(Y) = D(X⊗Y).  Projection formulas for the
    forgetful adjoint: E(c⊗D(X)) = E(c)⊗X and E(D(X)⊗c) = X⊗E(c).  Plus
    unit rows and, when the condensed duality is determined, the rigidity
    symmetries N'[a,b,c] = N'[b*,a*,c*] = N'[a*,c,b].
    """
    r, n = D.shape
    N = ring.N
    Df = D.astype(float)
    size = r**3
    rows, rhs = [], []

    def put(entries, value):
        row = np.zeros(size)
        for i, v in entries:
            row[i] += v
        rows.append(row)
        rhs.append(float(value))

    def idx(a, b, c):
        return (a * r + b) * r + c

    tgt = np.einsum("XYZ,eZ->XYe", N, D)
    for X in range(n):
        for Y in range(n):
            for e in range(r):
                put([(idx(c, d, e), Df[c, X] * Df[d, Y]) for c in range(r) for d in range(r)], tgt[X, Y, e])
    left = np.einsum("cY,YXZ->cXZ", D, N)
    right = np.einsum("cY,XYZ->cXZ", D, N)
    for c in range(r):
        for X in range(n):
            for Z in range(n):
                coef = [(d, e, Df[d, X] * Df[e, Z]) for d in range(r) for e in range(r)]
                put([(idx(c, d, e), v) for d, e, v in coef], left[c, X, Z])
                put([(idx(d, c, e), v) for d, e, v in coef], right[c, X, Z])
    for c in range(r):
        for e in range(r):
            put([(idx(0, c, e), 1.0)], c == e)
            put([(idx(c, 0, e), 1.0)], c == e)
    dual = _condensed_dual(ring, D)
    if dual is not None:
        for a, b, c in itertools.product(range(r), repeat=3):
            for other in (idx(dual[b], dual[a], dual[c]), idx(dual[a], c, b)):
                if other != idx(a, b, c):
                    put([(idx(a, b, c), 1.0), (other, -1.0)], 0)
    return np.array(rows), np.array(rhs)


def solve_condensed_fusion(ring: FusionRing, D: np.ndarray, max_solutions: int = 8,
                           node_limit: int = 20_000) -> list[np.ndarray]:
    """Associative integral N' ≥ 0 satisfying ``_fusion_system``; row 0 of D is the unit.

    Coordinates whose bound is zero are dropped; the rest are branched on one
    undetermined coordinate at a time, with an LP relaxation as the prune.
    """
    r = D.shape[0]
    A, b = _fusion_system(ring, D)
    ub = _upper_bounds(ring, D)
    live = np.nonzero(ub > 0)[0]
    A, ub = A[:, live], ub[live].astype(float)
    x0, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.abs(A @ x0 - b).max(initial=0) > 1e-8:
        return []
    _, sv, Vh = np.linalg.svd(A, full_matrices=A.shape[0] < A.shape[1])
    rank = int((sv > 1e-9 * max(1.0, sv[0])).sum())
    null = Vh[rank:]  # solutions are x0 + t @ null
    out: list[np.ndarray] = []
    nodes = [0]

    def emit(x):
        full = np.zeros(r**3)
        full[live] = x
        Nn = np.rint(full).astype(np.int64)
        if np.abs(full - Nn).max() > 1e-8 or (Nn < 0).any():
            return
        Nn = Nn.reshape(r, r, r)
        if _associative(Nn):
            out.append(Nn)

    def rec(fixed):
        nodes[0] += 1
        if nodes[0] > node_limit:
            raise FusionInconsistent(f"condensed fusion enumeration exceeded {node_limit} nodes")
        k = null.shape[0]
        if fixed:
            C = null[:, [j for j, _ in fixed]].T
            rhs = np.array([v - x0[j] for j, v in fixed])
            t0, *_ = np.linalg.lstsq(C, rhs, rcond=None)
            if np.abs(C @ t0 - rhs).max() > 1e-8:
                return
            _, sv, Vh = np.linalg.svd(C, full_matrices=True)
            K = Vh[int((sv > 1e-9).sum()):]
        else:
            t0, K = np.zeros(k), np.eye(k)
        base = x0 + t0 @ null
        if K.shape[0] == 0:
            emit(base)
            return
        dirs = K @ null
        lp = scipy.optimize.linprog(np.zeros(K.shape[0]), A_ub=np.vstack([dirs.T, -dirs.T]),
                                    b_ub=np.concatenate([ub - base, base]),
                                    bounds=[(None, None)] * K.shape[0], method="highs")
        if lp.status != 0:
            return
        # branch on the coordinate that moves most along the remaining family
        j = int(np.argmax(np.abs(dirs).max(axis=0)))
        for v in range(int(ub[j]) + 1):
            rec(fixed + [(j, v)])
            if len(out) >= max_solutions:
                return

    rec([])
    out.sort(key=lambda a: tuple(a.ravel()))
    return out


def _upper_bounds(ring: FusionRing, D: np.ndarray) -> np.ndarray:
    """N'[c,c',e] ≤ (D(X)⊗D(Y))_e / (D[c,X] D[c',Y]) for every X, Y under c, c'."""
    r, n = D.shape
    tgt = np.einsum("XYZ,eZ->XYe", ring.N, D)
    ub = np.full((r, r, r), 1 << 20, dtype=np.int64)
    for c in range(r):
        for d in range(r):
            for X in np.nonzero(D[c])[0]:
                for Y in np.nonzero(D[d])[0]:
                    ub[c, d] = np.minimum(ub[c, d], tgt[X, Y] // (D[c, X] * D[d, Y]))
    return ub.ravel()


def _associative(N) -> bool:
    return np.array_equal(np.einsum("abx,xcd->abcd", N, N), np.einsum("bcy,ayd->abcd", N, N))


def _condensed_labels(ring: FusionRing, D: np.ndarray) -> list[str]:
    labels = []
    used: dict = {}
    for i, row in enumerate(D):
        if i == 0:
            base = "1"
        else:
            base = f"D{ring.labels[int(np.nonzero(row)[0][0])]}"
        used[base] = used.get(base, 0) + 1
        labels.append(base if used[base] == 1 else f"{base}.{used[base]}")
    # disambiguate the first occurrence when a base repeats
    counts = {b: c for b, c in used.items() if c > 1}
    return [f"{lab}.1" if lab in counts else lab for lab in labels]


# ---------------------------------------------------------------------------
# public operations

def check_condensable(B: BraidedInput, A, tolerance: float | None = None) -> ValidationReport:
    tol = default_tolerance() if tolerance is None else tolerance
    ring = B.ring
    A = object_vector(ring, A)
    rep = ValidationReport(f"condensable {B.name}", tol)
    if A[ring.unit] != 1:
        rep.fail("connected", (ring.labels[ring.unit],), f"unit appears {A[ring.unit]} times in A")
    else:
        rep.record("connected", (), 0.0)
    for a in np.nonzero(A)[0]:
        if not B.twist_known(a):
            rep.fail("trivial_twist", (ring.labels[a],), f"twist of {ring.labels[a]} unknown")
            continue
        rep.record("trivial_twist", (ring.labels[a],), abs(B.twists[a] - 1))
    M = hom_count_matrix(ring, A)
    rep.record("hom_symmetric", (), float(np.abs(M - M.T).max()))
    ev = np.linalg.eigvalsh(M.astype(float))
    rep.record("hom_psd", (), max(0.0, -float(ev.min())))
    try:
        D = factorize(M, ring.unit)[0]
        if not solve_condensed_fusion(ring, D):
            rep.fail("factorization", (), "no condensed fusion rules fit the factorization")
        else:
            rep.record("factorization", (), 0.0)
    except (FactorizationNotFound, FusionInconsistent) as exc:
        rep.fail("factorization", (), str(exc))
    return rep


def condense(B: BraidedInput, A, node_limit: int = DEFAULT_NODE_LIMIT) -> CondensationResult:
    ring = B.ring
    A = object_vector(ring, A)
    M = hom_count_matrix(ring, A)
    candidates = factorize(M, ring.unit, node_limit, all_solutions=True)
    results = []
    for Dc in candidates:
        try:
            Dc = canonical_rows(Dc, ring.unit)
        except StopIteration:
            continue
        sols = solve_condensed_fusion(ring, Dc)
        for Nn in sols:
            if Nn[0].tolist() == np.eye(len(Dc), dtype=np.int64).tolist():
                results.append((Dc, Nn))
    if not results:
        raise FusionInconsistent("no associative condensed fusion rules with D_A(1) the unit")
    results.sort(key=lambda t: (tuple(t[0].ravel()), tuple(t[1].ravel())))
    D, Nn = results[0]
    labels = _condensed_labels(ring, D)
    cring = make_ring(labels, Nn, 0, f"{B.name}_A")
    rep = validate_fusion_ring(cring)
    if not rep.passed:
        raise FusionInconsistent(f"condensed ring invalid: {rep.summary()}")
    conf = None
    try:
        conf = _confinement(B, D)
    except MissingTwists:
        pass
    return CondensationResult(B, A, cring, D, conf, M, [r for r in results[1:9]])


def _confinement(B: BraidedInput, D: np.ndarray) -> tuple:
    out = []
    for row in D:
        cols = np.nonzero(row)[0]
        if any(not B.twist_known(x) for x in cols):
            raise MissingTwists("twists of some preimages are unknown")
        tw = [B.twists[x] for x in cols]
        out.append(not all(abs(t - tw[0]) < PHASE_TOL for t in tw))
    return tuple(out)


def classify_confinement(B: BraidedInput, res: CondensationResult) -> tuple:
    """True where the condensed simple is confined (preimage twists disagree)."""
    return _confinement(B, res.D)


@dataclass(frozen=True)
class ComonadReport:
    T: np.ndarray
    W: np.ndarray | None  # T = W ⊗ − when it exists
    blocks: list  # [(W, [condensed labels])]


def _tensor_solutions(ring: FusionRing, target: np.ndarray, c: int, limit: int = 2000) -> list[tuple]:
    """All W ≥ 0 with W ⊗ c = target."""
    n = ring.rank
    cols = [ring.N[i, c] for i in range(n)]
    ub = []
    for i in range(n):
        nz = np.nonzero(cols[i])[0]
        ub.append(int(min(target[k] // cols[i][k] for k in nz)) if nz.size else 0)
    out = []

    def rec(i, resid, w):
        if len(out) > limit:
            return
        if i == n:
            if not resid.any():
                out.append(tuple(w))
            return
        for v in range(ub[i], -1, -1):
            r2 = resid - v * cols[i]
            if (r2 < 0).any():
                continue
            w.append(v)
            rec(i + 1, r2, w)
            w.pop()

    rec(0, np.asarray(target, dtype=np.int64), [])
    return out


def comonad_object_map(res: CondensationResult) -> ComonadReport:
    ring = res.condensed
    T = res.T_object
    n = ring.rank
    sols = {c: set(_tensor_solutions(ring, T[:, c], c)) for c in range(n)}
    common = set.intersection(*sols.values()) if sols else set()
    W = None
    if common:
        W = np.array(sorted(common, reverse=True)[0], dtype=np.int64)
    blocks = []
    remaining = set(range(n))
    while remaining:
        counts: dict = {}
        for c in remaining:
            for w in sols[c]:
                counts.setdefault(w, []).append(c)
        if not counts:
            break
        w, members = max(counts.items(), key=lambda kv: (len(kv[1]), -min(kv[1]), kv[0]))
        blocks.append((np.array(w, dtype=np.int64), [ring.labels[c] for c in sorted(members)]))
        remaining -= set(members)
    return ComonadReport(T, W, blocks)


# ---------------------------------------------------------------------------
# given condensation data (rings not fully specified)

@dataclass(frozen=True)
class GivenCondensation:
    input_labels: tuple
    input_dims: np.ndarray
    algebra: np.ndarray
    condensed: FusionRing
    D: np.ndarray  # condensed × input
    E: np.ndarray  # input × condensed
    T_stated: np.ndarray | None = None


def verify_given_condensation(data: GivenCondensation, tolerance: float = DIM_TOL) -> ValidationReport:
    """Internal consistency of stated D_A/E_A maps without the ambient fusion rules."""
    rep = ValidationReport("given condensation", tolerance)
    D, E = np.asarray(data.D), np.asarray(data.E)
    ring = data.condensed
    if D.shape != (ring.rank, len(data.input_labels)) or E.shape != D.T.shape:
        raise InconsistentData("D must be condensed × input and E its transpose shape")
    rep.record("adjoint", (), float(np.abs(E - D.T).max()))
    d_out = quantum_dimensions(ring)
    d_in = np.asarray(data.input_dims, dtype=float)
    # dim D(X) = dim X
    for x, lab in enumerate(data.input_labels):
        rep.record("D_dimension", (lab,), abs(float(D[:, x] @ d_out) - d_in[x]))
    # dim E(c) = dim A · dim c
    dim_a = float(np.asarray(data.algebra) @ d_in)
    for c, lab in enumerate(ring.labels):
        rep.record("E_dimension", (lab,), abs(float(E[:, c] @ d_in) - dim_a * d_out[c]))
    rep.record("D_unit", (), float(abs(D[:, 0] - np.eye(ring.rank, dtype=np.int64)[0]).sum()))
    if data.T_stated is not None:
        T = D @ E
        rep.record("T_stated", (), float(np.abs(T - data.T_stated).max()))
    return rep


def dhaag_given(p: int) -> GivenCondensation:
    """D_A, E_A for A = 1+b in the doubled Haagerup category at an odd prime p."""
    from .errors import InvalidParameter

    if p < 3 or p % 2 == 0:
        raise InvalidParameter("DHaag data needs an odd prime")
    ring = dhaag_condensed_ring(p)
    delta = (p + math.sqrt(p * p + 4)) / 2
    nh, nl = (p * p - 1) // 2, (p * p + 3) // 2
    labels = ("1", "b") + tuple(f"a{h}" for h in range(1, nh + 1)) + tuple(f"d{l}" for l in range(1, nl + 1))
    dims = np.array([1.0, p * delta + 1] + [p * delta + 2] * nh + [p * delta] * nl)
    r, n = ring.rank, len(labels)
    X = ring.index("X")
    D = np.zeros((r, n), dtype=np.int64)
    D[0, 0] = 1
    D[0, 1] = D[X, 1] = 1
    # pair each nontrivial α with its inverse; a_h ↦ X + α + α*
    pairs, seen = [], set()
    for i, j in itertools.product(range(p), repeat=2):
        if (i, j) == (0, 0) or (i, j) in seen:
            continue
        inv = ((-i) % p, (-j) % p)
        seen |= {(i, j), inv}
        pairs.append((ring.index(f"a{i}{j}"), ring.index(f"a{inv[0]}{inv[1]}")))
    for h, (a, b) in enumerate(pairs):
        col = 2 + h
        D[X, col] = 1
        D[a, col] += 1
        D[b, col] += 1
    for l in range(nl):
        D[X, 2 + nh + l] = 1
    T = np.zeros((r, r), dtype=np.int64)
    T[0, 0], T[X, 0] = 2, 1
    for a in range(1, X):
        inv = ring.dual[a]
        T[a, a] += 1
        T[inv, a] += 1
        T[X, a] += 1
    T[:X, X] = 1
    T[X, X] = p * p + 2
    algebra = np.zeros(n, dtype=np.int64)
    algebra[:2] = 1
    return GivenCondensation(labels, dims, algebra, ring, D, D.T.copy(), T)


def trivial_given(ring: FusionRing) -> GivenCondensation:
    d = quantum_dimensions(ring)
    eye = np.eye(ring.rank, dtype=np.int64)
    alg = eye[ring.unit]
    return GivenCondensation(ring.labels, d, alg, ring, eye, eye, eye)


# ---------------------------------------------------------------------------
# subrings

def closed_subrings(ring: FusionRing, size: int) -> list[tuple[int, ...]]:
    """Label subsets of the given size containing the unit and closed under fusion."""
    others = [x for x in range(ring.rank) if x != ring.unit]
    out = []
    for combo in itertools.combinations(others, size - 1):
        sub = (ring.unit,) + combo
        if subring_closed(ring, sub):
            out.append(tuple(sorted(sub)))
    return out


def deconfined_subring(res: CondensationResult) -> FusionRing | None:
    if res.confined is None:
        return None
    keep = [c for c, conf in enumerate(res.confined) if not conf]
    if not subring_closed(res.condensed, keep):
        return None
    return restrict_ring(res.condensed, keep)


def result_to_json(res: CondensationResult) -> dict:
    ring, cring = res.input.ring, res.condensed
    return {
        "input": res.input.name,
        "algebra": {ring.labels[a]: int(v) for a, v in enumerate(res.algebra) if v},
        "condensed": cring.to_json(),
        "D": {ring.labels[x]: {cring.labels[c]: int(res.D[c, x]) for c in range(cring.rank) if res.D[c, x]} for x in range(ring.rank)},
        "E": {cring.labels[c]: {ring.labels[x]: int(res.D[c, x]) for x in range(ring.rank) if res.D[c, x]} for c in range(cring.rank)},
        "confined": None if res.confined is None else {cring.labels[c]: bool(v) for c, v in enumerate(res.confined)},
        "T": res.T_object.tolist(),
    }


__all__ = [
    "BraidedInput",
    "CondensationResult",
    "braided_input",
    "hom_count_matrix",
    "factorize",
    "exhaustive_factorizations",
    "canonical_rows",
    "solve_condensed_fusion",
    "check_condensable",
    "condense",
    "classify_confinement",
    "ComonadReport",
    "comonad_object_map",
    "GivenCondensation",
    "verify_given_condensation",
    "dhaag_given",
    "trivial_given",
    "closed_subrings",
    "deconfined_subring",
    "result_to_json",
]
