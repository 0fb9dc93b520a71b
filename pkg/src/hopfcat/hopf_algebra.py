"""Hopf algebras inside braided multiplicity-free fusion categories.

Structure maps are coefficient tensors over the copies of the underlying
object (see ``diagram``): ``m[i, j, k]`` is the coefficient of copy k in
copy i · copy j, ``Delta[p, q, i]`` the coefficient of p ⊗ q in Δ(i),
``counit[i]`` and ``unit[i]`` live on unit copies and ``antipode[o, i]`` is
label preserving.
"""

from __future__ import annotations

import math
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from . import diagram as D
from .errors import (
    InputParseError,
    MissingBraiding,
    NoIntegralFound,
    ShapeMismatch,
    SolverBudgetExceeded,
    UnknownKey,
)
from .fusion_ring import format_object
from .report import ValidationReport, default_tolerance
from .skeletal_cat import PHI, SkeletalData, builtin_skeletal, fib_skeletal, vecg_trivial

ANTIPODE_BOUND = 64


@dataclass(frozen=True, eq=False)
class AlgebraData:
    ambient: SkeletalData
    obj: np.ndarray
    m: np.ndarray
    unit: np.ndarray
    name: str = ""

    def __post_init__(self):
        obj = np.asarray(self.obj, dtype=np.int64)
        object.__setattr__(self, "obj", obj)
        n = int(obj.sum())
        m = np.asarray(self.m, dtype=complex)
        u = np.asarray(self.unit, dtype=complex)
        if obj.shape != (self.ambient.rank,):
            raise ShapeMismatch(f"object vector length {obj.shape} ≠ rank {self.ambient.rank}")
        if m.shape != (n, n, n) or u.shape != (n,):
            raise ShapeMismatch(f"algebra tensors must be ({n},{n},{n}) and ({n},)")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "unit", u)

    @cached_property
    def slot(self) -> D.Slot:
        return D.copies(self.obj)

    @property
    def dim(self) -> int:
        return len(self.slot)

    def copy_names(self) -> list[str]:
        labels = self.ambient.ring.labels
        seen: dict = {}
        out = []
        for lab in self.slot:
            seen[lab] = seen.get(lab, 0) + 1
            out.append(f"{labels[lab]}_{seen[lab]}" if self.obj[lab] > 1 else labels[lab])
        return out


@dataclass(frozen=True, eq=False)
class HopfAlgebraData:
    base: AlgebraData
    Delta: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    name: str = ""

    def __post_init__(self):
        n = self.base.dim
        for arr, shape, what in (
            (self.Delta, (n, n, n), "Delta"),
            (self.counit, (n,), "counit"),
            (self.antipode, (n, n), "antipode"),
        ):
            a = np.asarray(arr, dtype=complex)
            if a.shape != shape:
                raise ShapeMismatch(f"{what} has shape {a.shape}, expected {shape}")
            object.__setattr__(self, what, a)

    @property
    def ambient(self) -> SkeletalData:
        return self.base.ambient

    @property
    def slot(self) -> D.Slot:
        return self.base.slot

    @property
    def m(self) -> np.ndarray:
        return self.base.m

    @property
    def unit(self) -> np.ndarray:
        return self.base.unit


# ---------------------------------------------------------------------------
# structure-map operators

class _Ops:
    """Operators of the structure maps on words of copies of H."""

    def __init__(self, data: SkeletalData, H: D.Slot):
        self.data, self.H = data, H

    def w(self, n: int) -> D.Word:
        return (self.H,) * n

    def mul(self, m, n, k):
        return D.fuse(self.data, self.w(n), k, m, self.H)

    def comul(self, Delta, n, k):
        return D.split(self.data, self.w(n), k, Delta, (self.H, self.H))

    def eta(self, u, n, k):
        return D.unit(self.data, self.w(n), k, u, self.H)

    def eps(self, e, n, k):
        return D.counit(self.data, self.w(n), k, e)

    def apply(self, M, n, k):
        return D.apply(self.data, self.w(n), k, M, self.H)

    def braid(self, n, k, inverse=False):
        return D.braid(self.data, self.w(n), k, inverse)

    def ident(self, n):
        return D.identity(self.data.ring, self.w(n))


def _residual(a: D.Op, b: D.Op) -> float:
    return float(np.max(np.abs((a - b).mat.data), initial=0.0))


def _admissibility(rep: ValidationReport, ring, slot, T, what, kind):
    """Record nonzero coefficients on inadmissible copy triples."""
    bad = 0.0
    for idx in zip(*np.nonzero(np.abs(T) > 0)):
        if kind == "fuse":
            i, j, o = idx
            ok = ring.N[slot[i], slot[j], slot[o]]
        elif kind == "split":
            p, q, i = idx
            ok = ring.N[slot[p], slot[q], slot[i]]
        elif kind == "local":
            o, i = idx
            ok = slot[o] == slot[i]
        else:
            (i,) = idx
            ok = slot[i] == ring.unit
        if not ok:
            bad = max(bad, abs(T[idx]))
    rep.record(f"{what}_admissible", (), bad)


def check_algebra(A: AlgebraData, tolerance: float | None = None) -> ValidationReport:
    tol = default_tolerance() if tolerance is None else tolerance
    rep = ValidationReport(f"algebra {A.name}".strip(), tol)
    ring = A.ambient.ring
    _admissibility(rep, ring, A.slot, A.m, "m", "fuse")
    _admissibility(rep, ring, A.slot, A.unit, "unit", "unit")
    o = _Ops(A.ambient, A.slot)
    m, u = A.m, A.unit
    rep.record("associativity", (), _residual(o.mul(m, 2, 0) @ o.mul(m, 3, 0), o.mul(m, 2, 0) @ o.mul(m, 3, 1)))
    rep.record("left_unit", (), _residual(o.mul(m, 2, 0) @ o.eta(u, 1, 0), o.ident(1)))
    rep.record("right_unit", (), _residual(o.mul(m, 2, 0) @ o.eta(u, 1, 1), o.ident(1)))
    return rep


def check_hopf_axioms(H: HopfAlgebraData, tolerance: float | None = None) -> ValidationReport:
    if not H.ambient.braided:
        raise MissingBraiding("Hopf axioms need a braided ambient category")
    tol = default_tolerance() if tolerance is None else tolerance
    rep = ValidationReport(f"hopf {H.name}".strip(), tol)
    rep.merge(check_algebra(H.base, tol))
    ring = H.ambient.ring
    _admissibility(rep, ring, H.slot, H.Delta, "Delta", "split")
    _admissibility(rep, ring, H.slot, H.counit, "counit", "unit")
    _admissibility(rep, ring, H.slot, H.antipode, "antipode", "local")
    o = _Ops(H.ambient, H.slot)
    m, u, Dl, e, S = H.m, H.unit, H.Delta, H.counit, H.antipode
    d1 = o.comul(Dl, 1, 0)
    rep.record("coassociativity", (), _residual(o.comul(Dl, 2, 0) @ d1, o.comul(Dl, 2, 1) @ d1))
    rep.record("left_counit", (), _residual(o.eps(e, 2, 0) @ d1, o.ident(1)))
    rep.record("right_counit", (), _residual(o.eps(e, 2, 1) @ d1, o.ident(1)))
    lhs = o.comul(Dl, 1, 0) @ o.mul(m, 2, 0)
    rhs = o.mul(m, 3, 0) @ o.mul(m, 4, 2) @ o.braid(4, 1) @ o.comul(Dl, 3, 0) @ o.comul(Dl, 2, 1)
    rep.record("bialgebra", (), _residual(lhs, rhs))
    rep.record("counit_multiplicative", (), _residual(o.eps(e, 1, 0) @ o.mul(m, 2, 0), o.eps(e, 1, 0) @ o.eps(e, 2, 0)))
    e0 = o.eta(u, 0, 0)
    rep.record("comultiplication_unital", (), _residual(o.comul(Dl, 1, 0) @ e0, o.eta(u, 1, 1) @ e0))
    rep.record("counit_unit", (), _residual(o.eps(e, 1, 0) @ e0, o.ident(0)))
    ue = o.eta(u, 0, 0) @ o.eps(e, 1, 0)
    rep.record("antipode_left", (), _residual(o.mul(m, 2, 0) @ o.apply(S, 2, 0) @ d1, ue))
    rep.record("antipode_right", (), _residual(o.mul(m, 2, 0) @ o.apply(S, 2, 1) @ d1, ue))
    return rep


# ---------------------------------------------------------------------------
# invariants

def antipode_order(H: HopfAlgebraData, bound: int = ANTIPODE_BOUND, tolerance: float | None = None) -> int | None:
    """Least n ≤ bound with Sⁿ = id, or None (unbounded within the bound)."""
    tol = default_tolerance() if tolerance is None else tolerance
    S = H.antipode
    P = np.eye(len(S), dtype=complex)
    for n in range(1, bound + 1):
        P = S @ P
        if np.max(np.abs(P - np.eye(len(S))), initial=0.0) < max(tol, 1e-12) * 10:
            return n
    return None


@dataclass(frozen=True)
class Integral:
    vector: np.ndarray
    counit_value: complex
    semisimple: bool


def find_integral(H: HopfAlgebraData, tolerance: float | None = None) -> Integral:
    """Two-sided integral Λ: m(h ⊗ Λ) = ε(h)Λ = m(Λ ⊗ h)."""
    tol = default_tolerance() if tolerance is None else tolerance
    o = _Ops(H.ambient, H.slot)
    ucopies = [i for i, lab in enumerate(H.slot) if lab == H.ambient.ring.unit]
    cols = []
    for i in ucopies:
        v = np.zeros(H.base.dim, dtype=complex)
        v[i] = 1
        left = o.mul(H.m, 2, 0) @ o.eta(v, 1, 1) - o.eta(v, 0, 0) @ o.eps(H.counit, 1, 0)
        right = o.mul(H.m, 2, 0) @ o.eta(v, 1, 0) - o.eta(v, 0, 0) @ o.eps(H.counit, 1, 0)
        cols.append(np.concatenate([left.dense().ravel(), right.dense().ravel()]))
    if not cols:
        raise NoIntegralFound("object has no unit summand")
    A = np.stack(cols, axis=1)
    _, s, vh = np.linalg.svd(A)
    scale = max(1.0, float(s[0]) if len(s) else 1.0)
    null = [vh[k].conj() for k in range(len(ucopies)) if k >= len(s) or s[k] < 1e-8 * scale]
    if not null:
        raise NoIntegralFound("no two-sided integral within tolerance")
    lam = np.zeros(H.base.dim, dtype=complex)
    lam[ucopies] = null[0]
    ev = complex(H.counit @ lam)
    if abs(ev) > tol:
        lam = lam / ev
        ev = 1.0 + 0j
    else:
        lam = lam / lam[np.argmax(np.abs(lam))]
    lam = _clean(lam)
    return Integral(lam, ev, abs(ev) > tol)


def _clean(v: np.ndarray, eps: float = 1e-13) -> np.ndarray:
    v = np.array(v, dtype=complex)
    v.real[np.abs(v.real) < eps] = 0.0
    v.imag[np.abs(v.imag) < eps] = 0.0
    return v


def structure_flags(H: HopfAlgebraData, tolerance: float | None = None) -> dict:
    if not H.ambient.braided:
        raise MissingBraiding("commutativity needs a braiding")
    tol = default_tolerance() if tolerance is None else tolerance
    o = _Ops(H.ambient, H.slot)
    comm = _residual(o.mul(H.m, 2, 0) @ o.braid(2, 0), o.mul(H.m, 2, 0))
    cocomm = _residual(o.braid(2, 0) @ o.comul(H.Delta, 1, 0), o.comul(H.Delta, 1, 0))
    return {"commutative": comm < tol, "cocommutative": cocomm < tol}


@dataclass(frozen=True)
class AlgebraBlock:
    idempotent: np.ndarray
    support: np.ndarray


def decompose_algebra(A: AlgebraData, seed: int = 0) -> list[AlgebraBlock]:
    """Primitive central idempotents (elements on unit copies) and the objects they cut out."""
    o = _Ops(A.ambient, A.slot)
    ring = A.ambient.ring
    ucopies = [i for i, lab in enumerate(A.slot) if lab == ring.unit]
    # left and right multiplication by an element z supported on unit copies
    def lmul(z):
        return (o.mul(A.m, 2, 0) @ o.eta(z, 1, 0)).dense()

    def rmul(z):
        return (o.mul(A.m, 2, 0) @ o.eta(z, 1, 1)).dense()

    basis = []
    for i in ucopies:
        z = np.zeros(A.dim, dtype=complex)
        z[i] = 1
        basis.append(z)
    # centre: span of z with lmul(z) = rmul(z)
    M = np.stack([(lmul(z) - rmul(z)).ravel() for z in basis], axis=1)
    _, s, vh = np.linalg.svd(M)
    scale = max(1.0, float(s[0]) if len(s) else 1.0)
    null = [vh[k].conj() for k in range(len(basis)) if k >= len(s) or s[k] < 1e-9 * scale]
    center = [sum(c * b for c, b in zip(v, basis)) for v in null]
    if not center:
        return [AlgebraBlock(A.unit.copy(), A.obj.copy())]
    # multiplication by a random central element, restricted to the centre, on the unit copies
    rng = np.random.default_rng(seed)
    C = np.stack([z[ucopies] for z in center], axis=1)
    r = sum(rng.normal() * z for z in center)
    tb = D.tree_basis(ring, (A.slot,))
    pos = {s[0][0]: i for i, s in enumerate(tb.states)}
    Lr = lmul(r)
    # action on the centre's coordinates: r·z_j expanded back in the centre basis
    imgs = np.stack([(Lr @ _coords(z, pos, tb))[[pos[i] for i in ucopies]] for z in center], axis=1)
    X, *_ = np.linalg.lstsq(C, imgs, rcond=None)
    vals, vecs = np.linalg.eig(X)
    blocks = []
    groups = _cluster(vals)
    for g in groups:
        # idempotent e = projector onto eigenspace, realized as the element solving e·z = z on that space
        P = _spectral_projector(X, vals, g)
        coeff = P @ np.linalg.lstsq(C, A.unit[ucopies], rcond=None)[0]
        e = sum(c * z for c, z in zip(coeff, center))
        e = _clean(e, 1e-10)
        img = lmul(e)
        support = np.zeros(ring.rank, dtype=np.int64)
        for lab in range(ring.rank):
            rows = [i for i, st in enumerate(tb.states) if A.slot[st[0][0]] == lab]
            if rows:
                support[lab] = np.linalg.matrix_rank(img[np.ix_(rows, rows)], tol=1e-6)
        blocks.append(AlgebraBlock(e, support))
    blocks.sort(key=lambda b: (int(b.support.sum()), tuple(b.support.tolist())))
    return blocks


def _coords(z, pos, tb):
    v = np.zeros(tb.size, dtype=complex)
    for i, c in enumerate(z):
        if c != 0:
            v[pos[i]] = c
    return v


def _cluster(vals, tol=1e-6):
    groups: list[list[int]] = []
    for i, v in enumerate(vals):
        for g in groups:
            if abs(vals[g[0]] - v) < tol:
                g.append(i)
                break
        else:
            groups.append([i])
    return groups


def _spectral_projector(X, vals, group):
    n = len(X)
    P = np.eye(n, dtype=complex)
    lam = vals[group[0]]
    others = [g[0] for g in _cluster(vals) if g[0] not in group]
    for j in others:
        P = P @ (X - vals[j] * np.eye(n)) / (lam - vals[j])
    return P


# ---------------------------------------------------------------------------
# builtins

def _algebra_2e() -> AlgebraData:
    cat = vecg_trivial("Z2")
    # copies: 1, x (on the unit), y (on e)
    m = np.zeros((3, 3, 3))
    for a in range(3):
        m[0, a, a] = m[a, 0, a] = 1
    m[1, 1, 1] = m[2, 2, 1] = 1
    m[1, 2, 2] = m[2, 1, 2] = 1
    return AlgebraData(cat, np.array([2, 1]), m, np.array([1, 0, 0]), "2+e")


def _hopf_2e() -> HopfAlgebraData:
    A = _algebra_2e()
    Dl = np.zeros((3, 3, 3))
    Dl[0, 0, 0] = 1
    # Δ(x) = 1⊗x + x⊗1 − 3/2 x⊗x + 1/2 y⊗y
    Dl[0, 1, 1], Dl[1, 0, 1], Dl[1, 1, 1], Dl[2, 2, 1] = 1, 1, -1.5, 0.5
    # Δ(y) = 1⊗y − 3/2 x⊗y + y⊗1 − 3/2 y⊗x
    Dl[0, 2, 2], Dl[1, 2, 2], Dl[2, 0, 2], Dl[2, 1, 2] = 1, -1.5, 1, -1.5
    return HopfAlgebraData(A, Dl, np.array([1, 0, 0]), np.diag([1, 1, -1]), "2+e")


# 1 ⊕ Vec_Z3 = C[y]/(y⁴ − y); copies 1, y³ (unit), y (e), y² (e²)
_Z3_EXP = (0, 3, 1, 2)


def _algebra_1z(p: int) -> AlgebraData:
    """1 ⊕ Vec_Zp as C[y]/(y^{p+1} − y), copies ordered 1, y^p, y, …, y^{p−1}."""
    cat = vecg_trivial(f"Z{p}")
    exps = (0, p) + tuple(range(1, p))
    pos = {e: i for i, e in enumerate(exps)}
    n = p + 1

    def red(s):
        return s if s <= p else s - p

    m = np.zeros((n, n, n))
    for i, a in enumerate(exps):
        for j, b in enumerate(exps):
            m[i, j, pos[red(a + b)]] = 1
    obj = np.ones(p, dtype=np.int64)
    obj[0] = 2
    u = np.zeros(n)
    u[0] = 1
    return AlgebraData(cat, obj, m, u, f"1+VecZ{p}")


def _hopf_1z3() -> HopfAlgebraData:
    A = _algebra_1z(3)
    pos = {e: i for i, e in enumerate(_Z3_EXP)}
    Dl = np.zeros((4, 4, 4))

    def put(a, b, k, v):
        Dl[pos[a], pos[b], pos[k]] += v

    put(0, 0, 0, 1)
    put(0, 3, 3, 1), put(3, 0, 3, 1), put(3, 3, 3, -4 / 3), put(1, 2, 3, -1 / 3), put(2, 1, 3, -1 / 3)
    put(0, 1, 1, 1), put(1, 0, 1, 1), put(2, 2, 1, 2 / 3), put(1, 3, 1, -4 / 3), put(3, 1, 1, -4 / 3)
    put(0, 2, 2, 1), put(2, 0, 2, 1), put(1, 1, 2, 2 / 3), put(2, 3, 2, -4 / 3), put(3, 2, 2, -4 / 3)
    return HopfAlgebraData(A, Dl, np.array([1, 0, 0, 0]), np.eye(4), "1+VecZ3")


def fib_hopf_constants() -> dict:
    phi = PHI
    V = complex(-(phi**-2) / 2, 5**0.25 * phi**-0.5 / 2)
    inner = 5 * complex(-9 + 4 * math.sqrt(5), -math.sqrt(1525 - 682 * math.sqrt(5)))
    U = 1j * inner**0.25 / 2**0.75
    s_tau = -complex(phi**-1 / 2, 5**0.25 * phi**0.5 / 2)
    return {"V": V, "U": U, "S_tau": s_tau, "m_ttt": -math.sqrt(2) * phi**-0.75}


def _hopf_2tau() -> HopfAlgebraData:
    cat = fib_skeletal()
    c = fib_hopf_constants()
    # copies: 1_1 (the unit element), 1_2, τ
    m = np.zeros((3, 3, 3), dtype=complex)
    m[0, 0, 0] = m[0, 1, 1] = m[1, 0, 1] = m[1, 1, 0] = 1
    m[2, 2, 0], m[2, 2, 1] = 1, -1
    m[0, 2, 2], m[1, 2, 2], m[2, 0, 2], m[2, 1, 2] = 1, -1, 1, -1
    m[2, 2, 2] = c["m_ttt"]
    A = AlgebraData(cat, np.array([2, 1]), m, np.array([1, 0, 0]), "2+tau")
    a, b = 1 / (2 * PHI), math.sqrt(5) / (2 * PHI)
    Dl = np.zeros((3, 3, 3), dtype=complex)
    Dl[0, 0, 0] = 1
    Dl[0, 0, 1], Dl[0, 1, 1], Dl[1, 0, 1], Dl[1, 1, 1], Dl[2, 2, 1] = -a, a, a, b, c["V"]
    Dl[0, 2, 2], Dl[1, 2, 2], Dl[2, 0, 2], Dl[2, 1, 2], Dl[2, 2, 2] = a, b, a, b, -c["U"]
    S = np.diag([1, 1, c["S_tau"]])
    return HopfAlgebraData(A, Dl, np.array([1, 1, 0]), S, "2+tau")


def _hopf_group(key: str) -> HopfAlgebraData:
    """Group algebra C[G] in Vec (everything on the unit)."""
    from .groups import group_from_key

    G = group_from_key(key)
    cat = vecg_trivial("1")
    n = G.order
    m = np.zeros((n, n, n))
    Dl = np.zeros((n, n, n))
    for x in range(n):
        Dl[x, x, x] = 1
        for y in range(n):
            m[x, y, G.mul(x, y)] = 1
    u = np.zeros(n)
    u[0] = 1
    S = np.zeros((n, n))
    for x in range(n):
        S[G.inv(x), x] = 1
    A = AlgebraData(cat, np.array([n]), m, u, f"C[{G.name}]")
    return HopfAlgebraData(A, Dl, np.ones(n), S, f"C[{G.name}]")


def _hopf_unit(cat_key: str = "Fib") -> HopfAlgebraData:
    cat = builtin_skeletal(cat_key)
    obj = np.zeros(cat.rank, dtype=np.int64)
    obj[cat.ring.unit] = 1
    one = np.ones((1, 1, 1))
    A = AlgebraData(cat, obj, one, np.ones(1), "unit")
    return HopfAlgebraData(A, one, np.ones(1), np.ones((1, 1)), "unit")


HOPF_KEYS = ("2+e", "1+VecZ3", "2+tau", "C[G]", "unit(cat)")


def builtin_hopf(name: str) -> HopfAlgebraData:
    key = name.strip().replace(" ", "").replace("τ", "tau").replace("⊕", "+")
    if key == "2+e":
        return _hopf_2e()
    if key in ("1+VecZ3", "1+Vec_Z3"):
        return _hopf_1z3()
    if key == "2+tau":
        return _hopf_2tau()
    if key.startswith("C[") and key.endswith("]"):
        return _hopf_group(key[2:-1])
    if key.startswith("unit"):
        arg = key[5:-1] if key.startswith("unit(") else "Fib"
        return _hopf_unit(arg or "Fib")
    raise UnknownKey(f"unknown Hopf algebra {name!r}; known: {', '.join(HOPF_KEYS)}")


ALGEBRA_KEYS = ("2+e", "1+VecZ(p)")


def builtin_algebra(name: str) -> AlgebraData:
    key = name.strip().replace(" ", "").replace("⊕", "+")
    if key == "2+e":
        return _algebra_2e()
    for prefix in ("1+VecZ", "1+Vec_Z"):
        if key.startswith(prefix):
            try:
                p = int(key[len(prefix):].strip("()"))
            except ValueError:
                break
            return _algebra_1z(p)
    try:
        return builtin_hopf(name).base
    except UnknownKey:
        raise UnknownKey(f"unknown algebra {name!r}; known: {', '.join(ALGEBRA_KEYS)}") from None


# ---------------------------------------------------------------------------
# gauge transport and JSON

def gauge_transform(H: HopfAlgebraData, g: np.ndarray) -> HopfAlgebraData:
    """Transport all structure maps along a label-preserving change of copy basis ``g``."""
    g = np.asarray(g, dtype=complex)
    gi = np.linalg.inv(g)
    m = np.einsum("kc,abc,ai,bj->ijk", g, H.m, gi, gi)
    Dl = np.einsum("pa,qb,abc,ci->pqi", g, g, H.Delta, gi)
    A = AlgebraData(H.ambient, H.base.obj, m, g @ H.unit, H.base.name)
    return HopfAlgebraData(A, Dl, H.counit @ gi, g @ H.antipode @ gi, H.name)


def random_gauge(H: HopfAlgebraData, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    n = H.base.dim
    g = np.zeros((n, n), dtype=complex)
    for lab in set(H.slot):
        idx = [i for i, s in enumerate(H.slot) if s == lab]
        blk = rng.normal(size=(len(idx), len(idx))) + 1j * rng.normal(size=(len(idx), len(idx)))
        g[np.ix_(idx, idx)] = blk + len(idx) * np.eye(len(idx))
    return g


def _key(names, i):
    return names[i]


_COPY_RE = re.compile(r"\(\s*([^,()]+?)\s*,\s*(\d+)\s*\)")


def copy_keys(A: AlgebraData) -> list[str]:
    """``(a,i)`` per copy, i counted from 1 within each label."""
    labels = A.ambient.ring.labels
    seen: dict = {}
    out = []
    for lab in A.slot:
        seen[lab] = seen.get(lab, 0) + 1
        out.append(f"({labels[lab]},{seen[lab]})")
    return out


def _parse_copies(text: str, idx: dict) -> list[int]:
    found = _COPY_RE.findall(text)
    if not found:
        raise ValueError(f"no (label,index) pair in {text!r}")
    return [idx[f"({a},{int(i)})"] for a, i in found]


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def hopf_to_json(H: HopfAlgebraData) -> dict:
    """Coefficients keyed ``"(a,i),(b,j)->(c,k)"``; Δ keys read ``"(c,k)->(a,i),(b,j)"``."""
    names = copy_keys(H.base)

    def tensor3(T, fuse):
        out = {}
        for i, j, k in zip(*np.nonzero(np.abs(T) > 1e-15)):
            key = f"{names[i]},{names[j]}->{names[k]}" if fuse else f"{names[k]}->{names[i]},{names[j]}"
            out[key] = _pair(T[i, j, k])
        return out

    def vec(v):
        return {names[i]: _pair(z) for i, z in enumerate(v) if abs(z) > 1e-15}

    return {
        "name": H.name,
        "ambient": H.ambient.name,
        "object": format_object(H.ambient.ring, H.base.obj),
        "copies": names,
        "m": tensor3(H.m, True),
        "Delta": tensor3(H.Delta, False),
        "unit": vec(H.unit),
        "counit": vec(H.counit),
        "antipode": {
            f"{names[i]}->{names[o]}": _pair(H.antipode[o, i])
            for o, i in zip(*np.nonzero(np.abs(H.antipode) > 1e-15))
        },
    }


def hopf_from_json(obj: dict) -> HopfAlgebraData:
    from .fusion_ring import parse_object

    try:
        cat = builtin_skeletal(obj["ambient"])
        vec = parse_object(cat.ring, obj["object"])
        n = int(vec.sum())
        A0 = AlgebraData(cat, vec, np.zeros((n,) * 3), np.zeros(n))
        names = copy_keys(A0)
        idx = {nm: i for i, nm in enumerate(names)}

        def z(v):
            return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)

        m = np.zeros((n, n, n), dtype=complex)
        for k, v in obj["m"].items():
            src, dst = k.split("->")
            a, b = _parse_copies(src, idx)
            (c,) = _parse_copies(dst, idx)
            m[a, b, c] = z(v)
        Dl = np.zeros((n, n, n), dtype=complex)
        for k, v in obj["Delta"].items():
            src, dst = k.split("->")
            (c,) = _parse_copies(src, idx)
            a, b = _parse_copies(dst, idx)
            Dl[a, b, c] = z(v)
        u = np.zeros(n, dtype=complex)
        for k, v in obj["unit"].items():
            (i,) = _parse_copies(k, idx)
            u[i] = z(v)
        e = np.zeros(n, dtype=complex)
        for k, v in obj["counit"].items():
            (i,) = _parse_copies(k, idx)
            e[i] = z(v)
        S = np.zeros((n, n), dtype=complex)
        for k, v in obj["antipode"].items():
            src, dst = k.split("->")
            (i,) = _parse_copies(src, idx)
            (o,) = _parse_copies(dst, idx)
            S[o, i] = z(v)
    except (KeyError, ValueError, AttributeError, TypeError) as exc:
        raise InputParseError(f"malformed Hopf JSON: {exc}") from exc
    A = AlgebraData(cat, vec, m, u, obj.get("name", ""))
    return HopfAlgebraData(A, Dl, e, S, obj.get("name", ""))


# ---------------------------------------------------------------------------
# solver

@dataclass(frozen=True)
class SolverConfig:
    restarts: int = 100
    seed: int = 0
    max_iter: int = 500
    tol: float = 1e-10
    verify_tol: float = 1e-8
    bound: int = ANTIPODE_BOUND
    generator_relations: bool = False
    threads: int = 1
    budget_seconds: float | None = None
    stall_window: int = 40


class _ParamOp:
    """Operator linear in a slice of the unknown vector: M(x) = Σ_p x[p] B_p."""

    def __init__(self, family, offset, shape):
        self.shape = shape
        rows, cols, vals, pidx = [], [], [], []
        for local, op in family:
            coo = op.mat.tocoo()
            rows.append(coo.row)
            cols.append(coo.col)
            vals.append(coo.data)
            pidx.append(np.full(coo.nnz, offset + local, dtype=np.int64))
        cat = lambda xs, dt: np.concatenate(xs) if xs else np.zeros(0, dtype=dt)  # noqa: E731
        self.rows, self.cols = cat(rows, np.int64), cat(cols, np.int64)
        self.vals, self.pidx = cat(vals, complex), cat(pidx, np.int64)
        order = np.argsort(self.pidx, kind="stable")
        self.rows, self.cols, self.vals, self.pidx = (a[order] for a in (self.rows, self.cols, self.vals, self.pidx))
        self.params, starts = np.unique(self.pidx, return_index=True)
        self.bounds = list(zip(starts, list(starts[1:]) + [len(self.pidx)]))

    def value(self, x):
        return sp.csr_matrix((self.vals * x[self.pidx], (self.rows, self.cols)), shape=self.shape)

    def jac(self, pre, post, J, rowslice, sign=1.0):
        """Add sign · d(pre · M · post)/dx into J[rowslice, :]."""
        W = pre[:, self.rows] * (sign * self.vals)
        Q = post[self.cols, :]
        for p, (s, e) in zip(self.params, self.bounds):
            J[rowslice, p] += (W[:, s:e] @ Q[s:e, :]).ravel()


def _dense(M) -> np.ndarray:
    return M.toarray() if sp.issparse(M) else np.asarray(M)


class _System:
    """All Hopf axioms as chains of fixed and parameter-linear operators.

    Unknowns: admissible entries of Δ, counit on unit copies, label-preserving
    entries of S.  Equations are holomorphic, so complex Gauss-Newton applies.
    """

    def __init__(self, A: AlgebraData, generator_relations: bool = False):
        self.A = A
        data, H = A.ambient, A.slot
        ring = data.ring
        n = A.dim
        self.n = n
        o = _Ops(data, H)
        self.o = o
        self.dpos = [p for p in np.ndindex(n, n, n) if ring.N[H[p[0]], H[p[1]], H[p[2]]]]
        self.epos = [i for i in range(n) if H[i] == ring.unit]
        self.spos = [p for p in np.ndindex(n, n) if H[p[0]] == H[p[1]]]
        self.nd, self.ne, self.ns = len(self.dpos), len(self.epos), len(self.spos)
        self.size = self.nd + self.ne + self.ns
        self._cache: dict = {}
        m, u = A.m, A.unit

        def fixed(op):
            return ("F", op.mat)

        def Dl(nw, k):
            return ("P", self._param("D", nw, k))

        def Ep(nw, k):
            return ("P", self._param("E", nw, k))

        def Sp(nw, k):
            return ("P", self._param("S", nw, k))

        I1 = fixed(o.ident(1))
        e0 = fixed(o.eta(u, 0, 0))
        # chains are listed in application order (rightmost factor first)
        self.eqs = [
            ("coassociativity", [Dl(1, 0), Dl(2, 0)], [Dl(1, 0), Dl(2, 1)]),
            ("left_counit", [Dl(1, 0), Ep(2, 0)], [I1]),
            ("right_counit", [Dl(1, 0), Ep(2, 1)], [I1]),
            (
                "bialgebra",
                [fixed(o.mul(m, 2, 0)), Dl(1, 0)],
                [Dl(2, 1), Dl(3, 0), fixed(o.braid(4, 1)), fixed(o.mul(m, 4, 2)), fixed(o.mul(m, 3, 0))],
            ),
            ("counit_multiplicative", [fixed(o.mul(m, 2, 0)), Ep(1, 0)], [Ep(2, 0), Ep(1, 0)]),
            ("comultiplication_unital", [e0, Dl(1, 0)], [e0, fixed(o.eta(u, 1, 1))]),
            ("counit_unit", [e0, Ep(1, 0)], [fixed(o.ident(0))]),
            ("antipode_left", [Dl(1, 0), Sp(2, 0), fixed(o.mul(m, 2, 0))], [Ep(1, 0), e0]),
            ("antipode_right", [Dl(1, 0), Sp(2, 1), fixed(o.mul(m, 2, 0))], [Ep(1, 0), e0]),
        ]
        self.generator = None
        if generator_relations:
            self._add_generator_relations()

    def _param(self, kind, nw, k):
        key = (kind, nw, k)
        if key not in self._cache:
            o, n = self.o, self.n
            fam = []
            if kind == "D":
                for local, p in enumerate(self.dpos):
                    T = np.zeros((n, n, n))
                    T[p] = 1
                    fam.append((local, o.comul(T, nw, k)))
                offset = 0
            elif kind == "E":
                for local, i in enumerate(self.epos):
                    v = np.zeros(n)
                    v[i] = 1
                    fam.append((local, o.eps(v, nw, k)))
                offset = self.nd
            else:
                for local, p in enumerate(self.spos):
                    M = np.zeros((n, n))
                    M[p] = 1
                    fam.append((local, o.apply(M, nw, k)))
                offset = self.nd + self.ne
            self._cache[key] = _ParamOp(fam, offset, fam[0][1].mat.shape)
        return self._cache[key]

    def _find_generator(self):
        A = self.A
        ring = A.ambient.ring
        if not all(ring.N[a, b].sum() == 1 for a in range(ring.rank) for b in range(ring.rank)):
            return None
        n = self.n
        for g in range(n):
            if A.slot[g] == ring.unit:
                continue
            ev = np.zeros(n)
            ev[g] = 1
            powers, cur = [A.unit.astype(complex)], A.unit.astype(complex)
            for _ in range(n):
                cur = np.einsum("i,j,ijk->k", cur, ev, A.m)
                powers.append(cur)
            if np.linalg.matrix_rank(np.stack(powers), tol=1e-9) == n:
                return g
        return None

    def _add_generator_relations(self):
        """Δ(gⁱ) = Δ(g)ⁱ for a copy g generating the algebra (pointed ambient only)."""
        g = self._find_generator()
        if g is None:
            return
        self.generator = g
        A, data, H, n = self.A, self.A.ambient, self.A.slot, self.n
        G = (A.slot[g],)
        m = A.m
        iota = np.zeros((n, 1))
        iota[g, 0] = 1
        gfam = [(local, p) for local, p in enumerate(self.dpos) if p[2] == g]

        def dg(word, k):
            fam = []
            for local, p in gfam:
                T = np.zeros((n, n, 1))
                T[p[0], p[1], 0] = 1
                fam.append((local, D.split(data, word, k, T, (H, H))))
            return ("P", _ParamOp(fam, 0, fam[0][1].mat.shape))

        for i in range(2, max(3, n)):
            word = (G,) * i
            # gⁱ as a morphism G^{⊗i} → H, left to right
            lhs_op = D.apply(data, word, 0, iota, H)
            w = lhs_op.dst
            while len(w) > 1:
                step = D.apply(data, w, 1, iota, H)
                step = D.fuse(data, step.dst, 0, m, H) @ step
                lhs_op = step @ lhs_op
                w = step.dst
            lhs = [("F", lhs_op.mat), ("P", self._param("D", 1, 0))]
            # Δ(g) on the first slot, then multiply in one more Δ(g) at a time
            rhs = [dg(word, 0)]
            w = (H, H) + word[1:]
            while len(w) > 2:
                split = dg(w, 2)
                w4 = (H, H, H, H) + w[3:]
                br = D.braid(data, w4, 1)
                f2 = D.fuse(data, br.dst, 2, m, H)
                f0 = D.fuse(data, f2.dst, 0, m, H)
                rhs += [split, ("F", (f0 @ f2 @ br).mat)]
                w = f0.dst
            self.eqs.append((f"generator_power_{i}", lhs, rhs))

    def unpack(self, x):
        n = self.n
        Dl = np.zeros((n, n, n), dtype=complex)
        for v, p in zip(x[: self.nd], self.dpos):
            Dl[p] = v
        e = np.zeros(n, dtype=complex)
        e[self.epos] = x[self.nd : self.nd + self.ne]
        S = np.zeros((n, n), dtype=complex)
        for v, p in zip(x[self.nd + self.ne :], self.spos):
            S[p] = v
        return Dl, e, S

    def pack(self, Dl, e, S):
        return np.concatenate(
            [np.array([Dl[p] for p in self.dpos]), np.asarray(e)[self.epos], np.array([S[p] for p in self.spos])]
        ).astype(complex)

    @staticmethod
    def _chain(vals):
        M = vals[0]
        for V in vals[1:]:
            M = V @ M
        return M

    def residual(self, x, jac=False, names=None):
        parts, mats = [], []
        for name, lhs, rhs in self.eqs:
            if names is not None and name not in names:
                continue
            lv = [f[1] if f[0] == "F" else f[1].value(x) for f in lhs]
            rv = [f[1] if f[0] == "F" else f[1].value(x) for f in rhs]
            mats.append((lhs, lv, rhs, rv))
            parts.append(_dense(self._chain(lv) - self._chain(rv)).ravel())
        r = np.concatenate(parts)
        if not jac:
            return r
        J = np.zeros((len(r), self.size), dtype=complex)
        start = 0
        for (lhs, lv, rhs, rv), part in zip(mats, parts):
            sl = slice(start, start + len(part))
            for chain, vals, sign in ((lhs, lv, 1.0), (rhs, rv, -1.0)):
                for i, f in enumerate(chain):
                    if f[0] != "P":
                        continue
                    post = _dense(self._chain(vals[:i])) if i else np.eye(vals[0].shape[1], dtype=complex)
                    if i + 1 < len(vals):
                        pre = _dense(self._chain(vals[i + 1 :]))
                    else:
                        pre = np.eye(vals[i].shape[0], dtype=complex)
                    f[1].jac(pre, post, J, sl, sign)
            start += len(part)
        return r, J

    def characters(self, seed=0) -> list[np.ndarray]:
        """Candidate counits: characters of the unit-graded subalgebra, zero elsewhere."""
        A = self.A
        u = self.epos
        sub = A.m[np.ix_(u, u, u)]
        rng = np.random.default_rng(seed)
        r = rng.normal(size=len(u))
        Lr = np.einsum("i,ijk->kj", r, sub)
        vals, vecs = np.linalg.eig(Lr.T)
        unit_u = A.unit[u]
        chars = []
        for k in range(len(vals)):
            chi = vecs[:, k]
            norm = chi @ unit_u
            if abs(norm) < 1e-9:
                continue
            chi = chi / norm
            if np.max(np.abs(np.einsum("ijk,k->ij", sub, chi) - np.outer(chi, chi)), initial=0) < 1e-8:
                full = np.zeros(A.dim, dtype=complex)
                full[u] = chi
                chars.append(full)
        return chars or [np.asarray(A.unit, dtype=complex)]


@dataclass
class SolveResult:
    orbits: list
    log: list
    restarts: int
    found: int

    @property
    def summary(self) -> str:
        if not self.orbits:
            return f"not found after {self.restarts} restarts"
        return f"{len(self.orbits)} orbit(s) from {self.found} converged start(s) of {self.restarts}"


_LINEAR_EQS = ("left_counit", "right_counit", "comultiplication_unital", "counit_unit", "counit_multiplicative")
_ANTIPODE_EQS = ("antipode_left", "antipode_right")


def _affine_reduction(system: _System, chi):
    """Δ restricted to the solutions of the equations that are affine once ε = chi.

    Returns (x_particular, N) with Δ = x_particular + N y, or None when the
    counit candidate is inconsistent with the algebra.
    """
    x0 = np.zeros(system.size, dtype=complex)
    ecols = slice(system.nd, system.nd + system.ne)
    x0[ecols] = chi[system.epos]
    r, J = system.residual(x0, jac=True, names=_LINEAR_EQS)
    Jd = J[:, : system.nd]
    sol, *_ = np.linalg.lstsq(Jd, -r, rcond=None)
    if np.max(np.abs(Jd @ sol + r), initial=0.0) > 1e-9:
        return None
    _, sv, vh = np.linalg.svd(Jd)
    rank = int((sv > 1e-9 * max(1.0, sv[0] if len(sv) else 1.0)).sum())
    N = np.zeros((system.size, system.nd - rank), dtype=complex)
    N[: system.nd] = vh[rank:].conj().T
    x0[: system.nd] = sol
    return x0, N


def _lm(system: _System, xp, N, y, cfg: SolverConfig, names):
    """Levenberg-Marquardt over y for the residual of ``names`` at xp + N y."""
    x = xp + N @ y
    r = system.residual(x, names=names)
    cost = float(np.vdot(r, r).real)
    lam = 1e-3
    history = [cost]
    it = 0
    J = None
    for it in range(1, cfg.max_iter + 1):
        if np.max(np.abs(r), initial=0.0) < cfg.tol:
            break
        if J is None:
            _, Jx = system.residual(x, jac=True, names=names)
            J = Jx @ N
            JhJ = J.conj().T @ J
            g = J.conj().T @ r
            diag = np.maximum(np.real(np.diag(JhJ)), 1e-12)
        step = np.linalg.solve(JhJ + lam * np.diag(diag), g)
        yn = y - step
        xn = xp + N @ yn
        rn = system.residual(xn, names=names)
        cn = float(np.vdot(rn, rn).real)
        if cn < cost:
            y, x, r, cost = yn, xn, rn, cn
            lam = max(lam / 5, 1e-12)
            J = None
        else:
            lam *= 4
            if lam > 1e10:
                break
        history.append(cost)
        w = cfg.stall_window
        if len(history) > w and history[-1] > 0.25 * history[-1 - w] and history[-1] > 1e-10:
            break
    return x, float(np.max(np.abs(r), initial=0.0)), it


def _solve_antipode(system: _System, x):
    """S from the antipode equations, which are affine in S once Δ and ε are fixed."""
    x = x.copy()
    scols = slice(system.nd + system.ne, system.size)
    x[scols] = 0
    r, J = system.residual(x, jac=True, names=_ANTIPODE_EQS)
    Js = J[:, scols]
    sol, *_ = np.linalg.lstsq(Js, -r, rcond=None)
    x[scols] = sol
    return x, float(np.max(np.abs(Js @ sol + r), initial=0.0))


def _fingerprint(H: HopfAlgebraData, bound: int) -> tuple:
    o = _Ops(H.ambient, H.slot)
    md = (o.mul(H.m, 2, 0) @ o.comul(H.Delta, 1, 0)).dense()
    tb = D.tree_basis(H.ambient.ring, (H.slot,))
    traces = []
    for lab in sorted(set(H.slot)):
        idx = [i for i, s in enumerate(tb.states) if H.slot[s[0][0]] == lab]
        traces.append(complex(np.trace(md[np.ix_(idx, idx)])))
    blocks = decompose_algebra(H.base)
    eps_idem = [complex(H.counit @ b.idempotent) for b in blocks]
    ev = np.linalg.eigvals(H.antipode)
    order = antipode_order(H, bound, 1e-7)

    def rnd(z):
        z = complex(z)
        return (round(z.real, 5) + 0.0, round(z.imag, 5) + 0.0)

    return (
        order,
        tuple(sorted(rnd(z) for z in ev)),
        tuple(rnd(z) for z in traces),
        tuple(sorted(rnd(z) for z in eps_idem)),
    )


def hopf_fingerprint(H: HopfAlgebraData, bound: int = ANTIPODE_BOUND) -> tuple:
    """Gauge-invariant summary used to deduplicate solver solutions."""
    return _fingerprint(H, bound)


def solve_hopf_structures(A: AlgebraData, config: SolverConfig | None = None) -> SolveResult:
    """Multi-start search for Hopf structures (Δ, ε, S) on a fixed algebra.

    ε runs over the characters of the unit-graded subalgebra; for each, Δ is
    confined to the affine space cut out by the counit and unit equations and
    coassociativity plus the bialgebra law are solved by Levenberg-Marquardt.
    The antipode is then a linear solve.  Converged starts are verified and
    grouped by ``hopf_fingerprint``.
    """
    cfg = config or SolverConfig()
    if not A.ambient.braided:
        raise MissingBraiding("Hopf structures need a braided ambient category")
    system = _System(A, cfg.generator_relations)
    nonlinear = ("coassociativity", "bialgebra") + tuple(
        name for name, _, _ in system.eqs if name.startswith("generator_power")
    )
    reductions = [red for chi in system.characters(cfg.seed) if (red := _affine_reduction(system, chi)) is not None]
    t0 = time.monotonic()

    def attempt(k):
        if cfg.budget_seconds is not None and time.monotonic() - t0 > cfg.budget_seconds:
            return k, None, None, 0, "skipped"
        if not reductions:
            return k, None, None, 0, "no counit"
        xp, N = reductions[k % len(reductions)]
        rng = np.random.default_rng([cfg.seed, k])
        y = rng.normal(size=N.shape[1]) + 1j * rng.normal(size=N.shape[1])
        x, res, its = _lm(system, xp, N, y, cfg, nonlinear)
        if res >= cfg.tol:
            return k, x, res, its, "stalled"
        x, sres = _solve_antipode(system, x)
        return k, x, max(res, sres), its, "converged" if sres < cfg.verify_tol else "no antipode"

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            results = list(ex.map(attempt, range(cfg.restarts)))
    else:
        results = [attempt(k) for k in range(cfg.restarts)]
    if any(t[4] == "skipped" for t in results):
        done = sum(t[4] != "skipped" for t in results)
        raise SolverBudgetExceeded(f"time budget exhausted after {done} of {cfg.restarts} restarts")
    log, orbits, prints = [], [], []
    found = 0
    for k, x, res, its, status in results:
        entry = {"restart": k, "iterations": its, "residual": res, "status": status}
        if status == "converged":
            Dl, e, S = system.unpack(x)
            H = HopfAlgebraData(A, _clean(Dl, 1e-12), _clean(e, 1e-12), _clean(S, 1e-12), f"{A.name} (solution)")
            rep = check_hopf_axioms(H, cfg.verify_tol)
            entry["verified"] = rep.passed
            if rep.passed:
                found += 1
                fp = _fingerprint(H, cfg.bound)
                entry["fingerprint"] = repr(fp)
                if fp not in prints:
                    prints.append(fp)
                    orbits.append(H)
                entry["orbit"] = prints.index(fp)
        log.append(entry)
    return SolveResult(orbits, log, cfg.restarts, found)


__all__ = [
    "AlgebraData",
    "HopfAlgebraData",
    "check_algebra",
    "check_hopf_axioms",
    "antipode_order",
    "find_integral",
    "Integral",
    "structure_flags",
    "decompose_algebra",
    "AlgebraBlock",
    "builtin_hopf",
    "builtin_algebra",
    "fib_hopf_constants",
    "gauge_transform",
    "random_gauge",
    "hopf_to_json",
    "hopf_from_json",
    "SolverConfig",
    "SolveResult",
    "solve_hopf_structures",
    "hopf_fingerprint",
]
