"""Modules over Hopf algebras in braided fusion categories.

A module (M, r) stores ``action[i, j, k]``: the coefficient of copy k of M in
copy i of H acting on copy j of M.  Module maps are label-preserving
matrices on copies, so every Hom space is the nullspace of a small linear
system built with the diagram engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import diagram as D
from .errors import DecompositionAmbiguous, MixedHopfAlgebras, NotSemisimple, ShapeMismatch
from .fusion_ring import FusionRing, format_object, make_ring, validate_fusion_ring
from .hopf_algebra import HopfAlgebraData, find_integral
from .report import ValidationReport, default_tolerance
from .skeletal_cat import PHI

RANK_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class ModuleData:
    hopf: HopfAlgebraData
    obj: np.ndarray
    action: np.ndarray
    name: str = ""

    def __post_init__(self):
        obj = np.asarray(self.obj, dtype=np.int64)
        object.__setattr__(self, "obj", obj)
        if obj.shape != (self.hopf.ambient.rank,) or (obj < 0).any():
            raise ShapeMismatch("module object must be a nonnegative vector over the labels")
        n, h = int(obj.sum()), self.hopf.base.dim
        r = np.asarray(self.action, dtype=complex)
        if r.shape != (h, n, n):
            raise ShapeMismatch(f"action has shape {r.shape}, expected ({h}, {n}, {n})")
        object.__setattr__(self, "action", r)

    @cached_property
    def slot(self) -> D.Slot:
        return D.copies(self.obj)

    @property
    def dim(self) -> int:
        return len(self.slot)

    @property
    def label(self) -> str:
        return self.name or format_object(self.hopf.ambient.ring, self.obj)

    def qdim(self) -> float:
        d = self.hopf.ambient.dims
        return float(np.real(sum(d[a] for a in self.slot)))


def _residual(a: D.Op, b: D.Op) -> float:
    return float(np.max(np.abs((a - b).mat.data), initial=0.0))


def check_module(M: ModuleData, tolerance: float | None = None) -> ValidationReport:
    """r(m ⊗ id) = r(id ⊗ r) and r(η ⊗ id) = id."""
    tol = default_tolerance() if tolerance is None else tolerance
    rep = ValidationReport(f"module {M.label}", tol)
    H = M.hopf
    data, ring = H.ambient, H.ambient.ring
    Hs, Ms = H.slot, M.slot
    bad = 0.0
    for i, j, k in zip(*np.nonzero(np.abs(M.action) > 0)):
        if not ring.N[Hs[i], Ms[j], Ms[k]]:
            bad = max(bad, abs(M.action[i, j, k]))
    rep.record("action_admissible", (), bad)
    r = M.action
    act = D.fuse(data, (Hs, Ms), 0, r, Ms)
    lhs = act @ D.fuse(data, (Hs, Hs, Ms), 0, H.m, Hs)
    rhs = act @ D.fuse(data, (Hs, Hs, Ms), 1, r, Ms)
    rep.record("associativity", (), _residual(lhs, rhs))
    rep.record("unit", (), _residual(act @ D.unit(data, (Ms,), 0, H.unit, Hs), D.identity(ring, (Ms,))))
    return rep


# ---------------------------------------------------------------------------
# constructions

def _tree_coefficients(H: HopfAlgebraData, op: D.Op, word, tree, pairs_src, pairs_dst, n_src, n_dst):
    """Read an action H ⊗ (A ⊗ B) → A ⊗ B off an operator on ``word``.

    ``pairs_src``/``pairs_dst`` map (copy of A, copy of B, label) to a copy of
    the product object.
    """
    data = H.ambient
    states, P = D.tree_to_left(data, word, tree)
    M = (op.mat @ P).toarray()
    dst_states = op.dst_basis.states
    r = np.zeros((H.base.dim, n_src, n_dst), dtype=complex)
    for col, st in enumerate(states):
        i, (j1, j2, c), _ = st
        jj = pairs_src[(j1, j2, c)]
        for row in np.nonzero(np.abs(M[:, col]) > 1e-14)[0]:
            (k1, k2), (d,) = dst_states[row]
            r[i, jj, pairs_dst[(k1, k2, d)]] += M[row, col]
    return r


def _product_copies(ring, A: D.Slot, B: D.Slot):
    """Copies of A ⊗ B, grouped by label: returns (object vector, {(i, j, c): copy})."""
    triples = [(i, j, c) for i, a in enumerate(A) for j, b in enumerate(B) for c in ring.outcomes(a, b)]
    triples.sort(key=lambda t: t[2])
    obj = np.zeros(ring.rank, dtype=np.int64)
    for _, _, c in triples:
        obj[c] += 1
    return obj, {t: n for n, t in enumerate(triples)}


def free_module(H: HopfAlgebraData, x: int) -> ModuleData:
    """H ⊗ x with H acting by multiplication on the left factor."""
    data, ring = H.ambient, H.ambient.ring
    Hs = H.slot
    X = (x,)
    obj, pairs = _product_copies(ring, Hs, X)
    word = (Hs, Hs, X)
    op = D.fuse(data, word, 0, H.m, Hs)
    r = _tree_coefficients(H, op, word, (0, (1, 2)), pairs, pairs, len(pairs), len(pairs))
    return ModuleData(H, obj, r, f"H⊗{ring.labels[x]}")


def regular_module(H: HopfAlgebraData) -> ModuleData:
    return ModuleData(H, H.base.obj, H.m, "H")


def counit_module(H: HopfAlgebraData, h: int) -> ModuleData:
    """(h, ε ⊗ id): H acts through its counit on a simple h."""
    ring = H.ambient.ring
    obj = np.zeros(ring.rank, dtype=np.int64)
    obj[h] = 1
    r = np.zeros((H.base.dim, 1, 1), dtype=complex)
    r[:, 0, 0] = H.counit
    return ModuleData(H, obj, r, f"ε⊗{ring.labels[h]}")


def trivial_module(H: HopfAlgebraData) -> ModuleData:
    return counit_module(H, H.ambient.ring.unit)


def module_tensor(M1: ModuleData, M2: ModuleData) -> ModuleData:
    """(r1 ⊗ r2)(id ⊗ c ⊗ id)(Δ ⊗ id ⊗ id) on M1 ⊗ M2."""
    if M1.hopf is not M2.hopf:
        raise MixedHopfAlgebras("modules over different Hopf algebras")
    H = M1.hopf
    data, ring = H.ambient, H.ambient.ring
    Hs, A, B = H.slot, M1.slot, M2.slot
    obj, pairs = _product_copies(ring, A, B)
    word = (Hs, A, B)
    op = D.split(data, word, 0, H.Delta, (Hs, Hs))
    op = D.braid(data, op.dst, 1) @ op
    op = D.fuse(data, op.dst, 2, M2.action, B) @ op
    op = D.fuse(data, op.dst, 0, M1.action, A) @ op
    r = _tree_coefficients(H, op, word, (0, (1, 2)), pairs, pairs, len(pairs), len(pairs))
    return ModuleData(H, obj, r, f"{M1.label}⊗{M2.label}")


# ---------------------------------------------------------------------------
# module maps

def _hom_basis_unknowns(M1: ModuleData, M2: ModuleData):
    return [(o, i) for o, b in enumerate(M2.slot) for i, a in enumerate(M1.slot) if a == b]


def hom_space(M1: ModuleData, M2: ModuleData) -> list[np.ndarray]:
    """Basis of module maps M1 → M2 as (dim M2 × dim M1) matrices."""
    if M1.hopf is not M2.hopf:
        raise MixedHopfAlgebras("modules over different Hopf algebras")
    unknowns = _hom_basis_unknowns(M1, M2)
    if not unknowns:
        return []
    H = M1.hopf
    data = H.ambient
    Hs, A, B = H.slot, M1.slot, M2.slot
    act1 = D.fuse(data, (Hs, A), 0, M1.action, A)
    act2 = D.fuse(data, (Hs, B), 0, M2.action, B)
    cols = []
    for o, i in unknowns:
        f = np.zeros((len(B), len(A)), dtype=complex)
        f[o, i] = 1
        lhs = D.apply(data, (A,), 0, f, B) @ act1
        rhs = act2 @ D.apply(data, (Hs, A), 1, f, B)
        cols.append((lhs - rhs).mat.toarray().ravel())
    S = np.stack(cols, axis=1)
    # the system is built from structure constants of size ~1, so the rank
    # threshold is relative to max(1, ‖S‖) rather than to ‖S‖ alone
    _, sv, Vh = np.linalg.svd(S)
    tol = RANK_RTOL * max(1.0, sv[0] if sv.size else 0.0)
    rank = int((sv > tol).sum())
    ns = Vh[rank:].conj().T
    out = []
    for v in ns.T:
        f = np.zeros((len(B), len(A)), dtype=complex)
        for (o, i), c in zip(unknowns, v):
            f[o, i] = c
        out.append(f)
    return out


def hom_dimension(M1: ModuleData, M2: ModuleData) -> int:
    return len(hom_space(M1, M2))


def is_isomorphic(M1: ModuleData, M2: ModuleData) -> bool:
    if not np.array_equal(M1.obj, M2.obj):
        return False
    basis = hom_space(M1, M2)
    if not basis:
        return False
    rng = np.random.default_rng(0)
    f = sum(complex(rng.normal(), rng.normal()) * b for b in basis)
    s = np.linalg.svd(f, compute_uv=False)
    return bool(s[-1] > 1e-8 * max(1.0, s[0]))


def submodule(M: ModuleData, P: np.ndarray, name: str = "") -> ModuleData:
    """Image of a module idempotent ``P`` as a module in its own right."""
    ring = M.hopf.ambient.ring
    idx_by_label: dict = {}
    for j, a in enumerate(M.slot):
        idx_by_label.setdefault(a, []).append(j)
    incl_cols, labels = [], []
    proj_rows = []
    for a in sorted(idx_by_label):
        idx = idx_by_label[a]
        blk = P[np.ix_(idx, idx)]
        U, s, Vh = np.linalg.svd(blk)
        rank = int((s > 1e-8 * max(1.0, s[0] if s.size else 1.0)).sum())
        if rank == 0:
            continue
        # blk = U_r Σ V_r^H; image basis U_r, left inverse so that ι π = blk
        Ur = U[:, :rank]
        Pi = np.linalg.pinv(Ur) @ blk
        for t in range(rank):
            col = np.zeros(M.dim, dtype=complex)
            col[idx] = Ur[:, t]
            incl_cols.append(col)
            row = np.zeros(M.dim, dtype=complex)
            row[idx] = Pi[t]
            proj_rows.append(row)
            labels.append(a)
    iota = np.stack(incl_cols, axis=1)
    pi = np.stack(proj_rows, axis=0)
    obj = np.zeros(ring.rank, dtype=np.int64)
    for a in labels:
        obj[a] += 1
    r = np.einsum("kK,iJK,Jj->ijk", pi, M.action, iota)
    return ModuleData(M.hopf, obj, r, name)


def split_module(M: ModuleData, seed: int = 0) -> list[ModuleData]:
    """Decompose M into indecomposables via spectral projectors of a random endomorphism."""
    basis = hom_space(M, M)
    if len(basis) <= 1:
        return [M]
    rng = np.random.default_rng(seed)
    x = sum(complex(rng.normal(), rng.normal()) * b for b in basis)
    vals = np.linalg.eigvals(x)
    groups: list[list[complex]] = []
    for v in vals:
        for g in groups:
            if abs(g[0] - v) < 1e-6 * max(1.0, abs(v)):
                g.append(v)
                break
        else:
            groups.append([v])
    if len(groups) == 1:
        raise DecompositionAmbiguous(f"endomorphism of {M.label} has a single eigenvalue; cannot split")
    parts = []
    n = M.dim
    reps = [complex(np.mean(g)) for g in groups]
    for lam in reps:
        # spectral projector: ∏_{μ≠λ} (x − μ)^k / (λ − μ)^k
        P = np.eye(n, dtype=complex)
        for mu, g in zip(reps, groups):
            if mu == lam:
                continue
            fac = (x - mu * np.eye(n)) / (lam - mu)
            P = P @ np.linalg.matrix_power(fac, len(g))
        P = np.linalg.matrix_power(P, 2)
        parts.append(submodule(M, P))
    out = []
    for p in parts:
        out.extend(split_module(p, seed + 1))
    return out


# ---------------------------------------------------------------------------
# irreducibles and fusion

def _canonical_order(mods: list[ModuleData]) -> list[ModuleData]:
    return sorted(mods, key=lambda m: (int(m.obj.sum()), tuple(-m.obj), _fingerprint(m)))


def _fingerprint(M: ModuleData) -> tuple:
    """Traces of the action of each copy of H, a gauge invariant of the module."""
    tr = [np.trace(M.action[i]) for i in range(M.action.shape[0])]
    return tuple((round(complex(t).real, 6), round(complex(t).imag, 6)) for t in tr)


def irreducible_modules(H: HopfAlgebraData, seed: int = 0) -> list[ModuleData]:
    """Pairwise non-isomorphic irreducibles, trivial module first.

    Every module is a quotient of a free module H ⊗ x, so splitting the free
    modules on all simples finds every irreducible.
    """
    integ = find_integral(H)
    if not integ.semisimple:
        raise NotSemisimple("ε vanishes on the integral; module category is not semisimple")
    ring = H.ambient.ring
    found: list[ModuleData] = []

    def add(cand):
        for m in found:
            if is_isomorphic(m, cand):
                return
        found.append(cand)

    for h in range(ring.rank):
        add(counit_module(H, h))
    for x in range(ring.rank):
        for part in split_module(free_module(H, x), seed):
            if hom_dimension(part, part) != 1:
                raise DecompositionAmbiguous(f"piece of H⊗{ring.labels[x]} is not irreducible")
            add(part)
    triv = found[0]
    rest = _canonical_order(found[1:])
    names = ["M0"] + [f"M{i + 1}" for i in range(len(rest))]
    return [ModuleData(H, m.obj, m.action, nm) for m, nm in zip([triv] + rest, names)]


def multiplicities(M: ModuleData, irreps: list[ModuleData]) -> np.ndarray:
    """Multiplicity of each irreducible in M, as dim Hom(S, M)."""
    return np.array([hom_dimension(S, M) for S in irreps], dtype=np.int64)


def module_fusion_ring(H: HopfAlgebraData, irreps: list[ModuleData] | None = None) -> FusionRing:
    irreps = irreducible_modules(H) if irreps is None else irreps
    n = len(irreps)
    N = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            N[i, j] = multiplicities(module_tensor(irreps[i], irreps[j]), irreps)
    ring = make_ring([m.name or f"M{i}" for i, m in enumerate(irreps)], N, 0, f"Rep({H.name})")
    rep = validate_fusion_ring(ring)
    if not rep.passed:
        raise DecompositionAmbiguous(f"module fusion rules are inconsistent: {rep.summary()}")
    return ring


def regular_decomposition(H: HopfAlgebraData, irreps: list[ModuleData] | None = None) -> np.ndarray:
    irreps = irreducible_modules(H) if irreps is None else irreps
    return multiplicities(regular_module(H), irreps)


def dimension_report(H: HopfAlgebraData, irreps: list[ModuleData]) -> dict:
    """Σ d(M_i)² over irreducibles against dim(C)·d(H); they agree for a complete list."""
    d = [m.qdim() for m in irreps]
    dims = np.real(H.ambient.dims)
    dim_c = float(np.sum(dims**2))
    dim_h = float(sum(dims[a] for a in H.slot))
    total = float(sum(x * x for x in d))
    return {
        "module_dims": d,
        "sum_squares": total,
        "dim_C": dim_c,
        "dim_H": dim_h,
        "consistent": bool(abs(total - dim_c * dim_h) < 1e-6 * max(1.0, total)),
    }


# ---------------------------------------------------------------------------
# transcribed modules of 2+τ

def fib_modules(H: HopfAlgebraData) -> list[ModuleData]:
    """The four irreducible modules of 2+τ on 1, τ, τ and 1+τ."""
    # copies of H: 1_1, 1_2, τ; of 1+τ: 1, τ
    r1 = np.zeros((3, 1, 1), dtype=complex)
    r1[0, 0, 0], r1[1, 0, 0] = 1, 1
    r2 = np.zeros((3, 1, 1), dtype=complex)
    r2[0, 0, 0], r2[1, 0, 0], r2[2, 0, 0] = 1, -1, math.sqrt(2) * PHI**0.25
    r3 = np.zeros((3, 2, 2), dtype=complex)
    r3[0, 0, 0], r3[1, 0, 0], r3[2, 1, 0] = 1, -1, 1
    r3[0, 1, 1], r3[1, 1, 1], r3[2, 0, 1] = 1, -1, 2
    r3[2, 1, 1] = -((4 * math.sqrt(5) - 8) ** 0.25)
    tau = np.array([0, 1])
    return [
        trivial_module(H),
        ModuleData(H, tau, r1, "M1"),
        ModuleData(H, tau, r2, "M2"),
        ModuleData(H, np.array([1, 1]), r3, "M3"),
    ]


# ---------------------------------------------------------------------------
# JSON

def module_to_json(M: ModuleData) -> dict:
    from .hopf_algebra import copy_keys

    ring = M.hopf.ambient.ring
    hk = copy_keys(M.hopf.base)
    seen: dict = {}
    mk = []
    for a in M.slot:
        seen[a] = seen.get(a, 0) + 1
        mk.append(f"({ring.labels[a]},{seen[a]})")
    return {
        "name": M.name,
        "hopf": M.hopf.name,
        "object": format_object(ring, M.obj),
        "action": {
            f"{hk[i]},{mk[j]}->{mk[k]}": [complex(M.action[i, j, k]).real, complex(M.action[i, j, k]).imag]
            for i, j, k in zip(*np.nonzero(np.abs(M.action) > 1e-15))
        },
    }


def module_from_json(obj: dict, H: HopfAlgebraData) -> ModuleData:
    from .errors import InputParseError
    from .fusion_ring import parse_object
    from .hopf_algebra import _parse_copies, copy_keys

    try:
        ring = H.ambient.ring
        vec = parse_object(ring, obj["object"])
        slot = D.copies(vec)
        seen: dict = {}
        midx = {}
        for n, a in enumerate(slot):
            seen[a] = seen.get(a, 0) + 1
            midx[f"({ring.labels[a]},{seen[a]})"] = n
        hidx = {k: i for i, k in enumerate(copy_keys(H.base))}
        r = np.zeros((H.base.dim, len(slot), len(slot)), dtype=complex)
        for key, v in obj["action"].items():
            src, dst = key.split("->")
            parts = src.split("),")
            (i,) = _parse_copies(parts[0] + ")", hidx)
            (j,) = _parse_copies(parts[1], midx)
            (k,) = _parse_copies(dst, midx)
            r[i, j, k] = complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise InputParseError(f"malformed module JSON: {exc}") from exc
    return ModuleData(H, vec, r, obj.get("name", ""))


__all__ = [
    "ModuleData",
    "check_module",
    "free_module",
    "regular_module",
    "counit_module",
    "trivial_module",
    "module_tensor",
    "hom_space",
    "hom_dimension",
    "is_isomorphic",
    "submodule",
    "split_module",
    "irreducible_modules",
    "multiplicities",
    "module_fusion_ring",
    "regular_decomposition",
    "dimension_report",
    "fib_modules",
    "module_to_json",
    "module_from_json",
]
