"""Skeletal tensor functors and Hopf monads.

Matrix conventions.  T(b) = ⊕ T[a, b]·a, copies of a in T(b) are numbered
0..T[a,b]-1.

* Tensorator ``T2[(a, b, c)]`` maps T(a) ⊗ T(b) → T(a ⊗ b) at target label c:
  rows (f, γ) with f ∈ a⊗b, γ < T[c, f]; columns (d, α, e, β) with
  α < T[d, a], β < T[e, b], c ∈ d⊗e.
* Left fusion operator ``H[(a, b, c)]`` maps T(a ⊗ T(b)) → T(a) ⊗ T(b):
  columns (d, α, e, β) with α < T[d, b], e ∈ a⊗d, β < T[c, e];
  rows (f, γ, g, θ) with γ < T[f, a], θ < T[g, b], c ∈ f⊗g.
* Right fusion operator ``H_right[(a, b, c)]`` maps T(T(a) ⊗ b) → T(a) ⊗ T(b):
  columns (d, α, e, β) with α < T[d, a], e ∈ d⊗b, β < T[c, e]; rows as above.
* ``eps[α]`` for α < T[1, 1] and ``eta[a][α]`` for α < T[a, a].

Every axiom is checked by evaluating both sides as chains of rewrites on
labelled trees (see ``dotted``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import diagram as Dg
from . import dotted as dt
from .errors import InputParseError, NotAnAutomorphism, ShapeMismatch, SingularH
from .fusion_ring import object_vector
from .groups import FiniteGroup
from .report import ValidationReport, default_tolerance
from .skeletal_cat import SkeletalData, builtin_skeletal

COND_LIMIT = 1e8


# ---------------------------------------------------------------------------
# index schemes

def t2_rows(src_ring, T, a, b, c):
    return [(f, g) for f in range(src_ring.rank) if src_ring.N[a, b, f] for g in range(int(T[c, f]))]


def t2_cols(dst_ring, T, a, b, c):
    n = dst_ring.rank
    return [
        (d, al, e, be)
        for d in range(n)
        for al in range(int(T[d, a]))
        for e in range(n)
        for be in range(int(T[e, b]))
        if dst_ring.N[d, e, c]
    ]


def h_rows(N, T, a, b, c):
    n = T.shape[0]
    return [
        (f, ga, g, th)
        for f in range(n)
        for ga in range(int(T[f, a]))
        for g in range(n)
        for th in range(int(T[g, b]))
        if N[f, g, c]
    ]


def h_cols(N, T, a, b, c):
    n = T.shape[0]
    return [
        (d, al, e, be)
        for d in range(n)
        for al in range(int(T[d, b]))
        for e in range(n)
        if N[a, d, e]
        for be in range(int(T[c, e]))
    ]


def h_cols_right(N, T, a, b, c):
    n = T.shape[0]
    return [
        (d, al, e, be)
        for d in range(n)
        for al in range(int(T[d, a]))
        for e in range(n)
        if N[d, b, e]
        for be in range(int(T[c, e]))
    ]


# ---------------------------------------------------------------------------
# data types

@dataclass(frozen=True, eq=False)
class TensorFunctorData:
    source: SkeletalData
    target: SkeletalData
    T: np.ndarray
    T2: dict
    name: str = ""

    def __post_init__(self):
        T = np.asarray(self.T, dtype=np.int64)
        object.__setattr__(self, "T", T)
        if T.shape != (self.target.rank, self.source.rank):
            raise ShapeMismatch(f"T has shape {T.shape}, expected ({self.target.rank}, {self.source.rank})")
        if (T < 0).any():
            raise ShapeMismatch("T must be nonnegative")

    def rows(self, a, b, c):
        return t2_rows(self.source.ring, self.T, a, b, c)

    def cols(self, a, b, c):
        return t2_cols(self.target.ring, self.T, a, b, c)


@dataclass(frozen=True, eq=False)
class HopfMonadData:
    cat: SkeletalData
    T: np.ndarray
    H: dict
    eps: np.ndarray
    eta: tuple
    H_right: dict | None = None
    name: str = ""

    def __post_init__(self):
        n = self.cat.rank
        T = np.asarray(self.T, dtype=np.int64)
        object.__setattr__(self, "T", T)
        if T.shape != (n, n) or (T < 0).any():
            raise ShapeMismatch(f"T must be a nonnegative {n}×{n} integer matrix")
        u = self.cat.ring.unit
        eps = np.asarray(self.eps, dtype=complex)
        if eps.shape != (T[u, u],):
            raise ShapeMismatch(f"eps has length {eps.shape}, expected {T[u, u]}")
        object.__setattr__(self, "eps", eps)
        eta = tuple(np.asarray(v, dtype=complex) for v in self.eta)
        if len(eta) != n or any(eta[a].shape != (T[a, a],) for a in range(n)):
            raise ShapeMismatch("eta[a] must have length T[a, a] for every label a")
        object.__setattr__(self, "eta", eta)

    def rows(self, a, b, c):
        return h_rows(self.cat.ring.N, self.T, a, b, c)

    def cols(self, a, b, c):
        return h_cols(self.cat.ring.N, self.T, a, b, c)

    def cols_right(self, a, b, c):
        return h_cols_right(self.cat.ring.N, self.T, a, b, c)


def _zero_block(rows, cols):
    return np.zeros((len(rows), len(cols)), dtype=complex)


def _block(store, key, rows, cols, what):
    M = store.get(key)
    if M is None:
        if rows or cols:
            M = _zero_block(rows, cols)
        else:
            return np.zeros((0, 0), dtype=complex)
    M = np.asarray(M, dtype=complex)
    if M.shape != (len(rows), len(cols)):
        raise ShapeMismatch(f"{what}{key} has shape {M.shape}, expected ({len(rows)}, {len(cols)})")
    return M


def _column_lookup(blocks_rows_cols):
    """Turn {key: (rows, cols, M)} into a function key, col → [(row, value)]."""
    cache = {}
    for key, (rows, cols, M) in blocks_rows_cols.items():
        for j, col in enumerate(cols):
            nz = np.nonzero(np.abs(M[:, j]) > 0)[0]
            cache[key + (col,)] = [(rows[i], M[i, j]) for i in nz]
    return lambda a, b, c, col: cache.get((a, b, c, col), [])


# ---------------------------------------------------------------------------
# shape checks

def _functor_shapes(data: TensorFunctorData, rep: ValidationReport):
    src, dst = data.source.ring, data.target.ring
    T = data.T
    for c in range(dst.rank):
        if T[c, src.unit] != (1 if c == dst.unit else 0):
            raise ShapeMismatch("T(1) must be the unit (T0 is the identity)")
    for a, b, c in itertools.product(range(src.rank), range(src.rank), range(dst.rank)):
        rows, cols = data.rows(a, b, c), data.cols(a, b, c)
        if len(rows) != len(cols):
            raise ShapeMismatch(
                f"T2 at ({src.labels[a]},{src.labels[b]},{dst.labels[c]}): {len(rows)} rows vs {len(cols)} columns"
            )


def h_matrix_sizes(cat: SkeletalData, T) -> dict:
    """(rows, cols) of every H block; equal sizes is the shape condition for an isomorphism."""
    N = cat.ring.N
    T = np.asarray(T, dtype=np.int64)
    n = cat.rank
    return {
        (a, b, c): (len(h_rows(N, T, a, b, c)), len(h_cols(N, T, a, b, c)))
        for a, b, c in itertools.product(range(n), repeat=3)
    }


def _monad_blocks(data: HopfMonadData, right: bool):
    N = data.cat.ring.N
    n = data.cat.rank
    store = data.H_right if right else data.H
    colfn = data.cols_right if right else data.cols
    out = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        rows, cols = data.rows(a, b, c), colfn(a, b, c)
        if len(rows) != len(cols):
            raise ShapeMismatch(
                f"H{'_right' if right else ''} at {_names(data.cat, a, b, c)}: {len(rows)} rows vs {len(cols)} columns"
            )
        M = _block(store, (a, b, c), rows, cols, "H_right" if right else "H")
        if M.size:
            s = np.linalg.svd(M, compute_uv=False)
            if s[-1] == 0 or s[0] / s[-1] > COND_LIMIT:
                raise SingularH(f"H{'_right' if right else ''} at {_names(data.cat, a, b, c)} is not invertible")
        out[(a, b, c)] = (rows, cols, M)
    return out


def _names(cat, *xs):
    return "(" + ",".join(cat.ring.labels[x] for x in xs) + ")"


# ---------------------------------------------------------------------------
# tensor functors

def check_tensor_functor(data: TensorFunctorData, tolerance: float | None = None) -> ValidationReport:
    tol = default_tolerance() if tolerance is None else tolerance
    rep = ValidationReport(f"tensor functor {data.name}".strip(), tol)
    _functor_shapes(data, rep)
    src, dst = data.source.ring, data.target.ring
    blocks = {}
    for a, b, c in itertools.product(range(src.rank), range(src.rank), range(dst.rank)):
        rows, cols = data.rows(a, b, c), data.cols(a, b, c)
        blocks[(a, b, c)] = (rows, cols, _block(data.T2, (a, b, c), rows, cols, "T2"))
    t2 = dt.tensorator_rewrite(_column_lookup(blocks))
    ctx = dt.Context(dt.CatView(data.source), dt.CatView(data.target), data.T)
    X0, X1, X2 = dt.X(0), dt.X(1), dt.X(2)
    tree = dt.P(dt.P(dt.Tn(X0), dt.Tn(X1)), dt.Tn(X2))
    lhs = [(t2, (0,)), (t2, ()), (dt.ASSOC, (0,))]
    rhs = [(dt.ASSOC, ()), (t2, (1,)), (t2, ())]
    for a, b, c in itertools.product(range(src.rank), repeat=3):
        for d in range(dst.rank):
            res = dt.compare_chains(ctx, tree, (a, b, c), d, lhs, rhs)
            rep.record("hexagon", (src.labels[a], src.labels[b], src.labels[c], dst.labels[d]), res)
    # unit: T2(1, a) and T2(a, 1) are the identity under T0 = id
    t0 = dt.counit_rewrite(np.ones(1))
    for a in range(src.rank):
        for d in range(dst.rank):
            tl = dt.P(dt.Tn(dt.ONE), dt.Tn(X0))
            res = dt.compare_chains(
                ctx, tl, (a,), d, [(t2, ()), (dt.UNIT_LEFT, (0,))], [(t0, (0,)), (dt.UNIT_LEFT, ())]
            )
            rep.record("left_unit", (src.labels[a], dst.labels[d]), res)
            tr = dt.P(dt.Tn(X0), dt.Tn(dt.ONE))
            res = dt.compare_chains(
                ctx, tr, (a,), d, [(t2, ()), (dt.UNIT_RIGHT, (0,))], [(t0, (1,)), (dt.UNIT_RIGHT, ())]
            )
            rep.record("right_unit", (src.labels[a], dst.labels[d]), res)
    return rep


def identity_functor(cat: SkeletalData) -> TensorFunctorData:
    n = cat.rank
    T = np.eye(n, dtype=np.int64)
    T2 = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        if cat.ring.N[a, b, c]:
            T2[(a, b, c)] = np.eye(1, dtype=complex)
    return TensorFunctorData(cat, cat, T, T2, f"id({cat.name})")


def forgetful_functor(cat: SkeletalData) -> TensorFunctorData:
    """Every simple to the unit of Vec; needs trivial associator (pointed, trivial F)."""
    vec = builtin_skeletal("VecG_trivial(1)")
    n = cat.rank
    T = np.ones((1, n), dtype=np.int64)
    T2 = {(a, b, 0): np.eye(1, dtype=complex) for a in range(n) for b in range(n)}
    return TensorFunctorData(cat, vec, T, T2, f"forget({cat.name})")


# ---------------------------------------------------------------------------
# Hopf monads

def _monad_context(data: HopfMonadData, reverse: bool) -> dt.Context:
    view = dt.CatView(data.cat, reverse)
    return dt.Context(view, view, data.T)


def _check_side(data: HopfMonadData, right: bool, rep: ValidationReport):
    blocks = _monad_blocks(data, right)
    if right:
        # in the reversed category the right operator of (a, b) is the left operator of (b, a)
        N = data.cat.ring.N
        rev = {}
        for (a, b, c), (rows, cols, M) in blocks.items():
            rev_rows = [(g, th, f, ga) for (f, ga, g, th) in rows]
            rev[(b, a, c)] = (rev_rows, cols, M)
        blocks = rev
    ctx = _monad_context(data, right)
    Hrw = dt.fusion_rewrite(_column_lookup(blocks))
    eta = dt.eta_rewrite(data.eta)
    t0 = dt.counit_rewrite(data.eps)
    labels = data.cat.ring.labels
    n = data.cat.rank
    side = "right_" if right else ""
    X0, X1, X2 = dt.X(0), dt.X(1), dt.X(2)

    # heptagon: T(X ⊗ T(Y ⊗ T(Z))) → T(X) ⊗ (T(Y) ⊗ T(Z))
    tree = dt.Tn(dt.P(X0, dt.Tn(dt.P(X1, dt.Tn(X2)))))
    lhs = [(Hrw, ()), (Hrw, (1,))]
    rhs = [(Hrw, (0, 1)), (dt.ASSOC_INV, (0,)), (Hrw, ()), (Hrw, (0,)), (dt.ASSOC, ())]
    for a, b, c in itertools.product(range(n), repeat=3):
        for d in range(n):
            res = dt.compare_chains(ctx, tree, (a, b, c), d, lhs, rhs)
            rep.record(f"{side}heptagon", (labels[a], labels[b], labels[c], labels[d]), res)

    # H_{X,Y} η_{X⊗T(Y)} = η_X ⊗ id
    for a, b, c in itertools.product(range(n), repeat=3):
        res = dt.compare_chains(
            ctx, dt.P(X0, dt.Tn(X1)), (a, b), c, [(eta, ()), (Hrw, ())], [(eta, (0,))]
        )
        rep.record(f"{side}triangle_1", (labels[a], labels[b], labels[c]), res)
    # T0 η_1 = id_1
    res = dt.compare_chains(ctx, dt.ONE, (), None, [(eta, ()), (t0, ())], [])
    rep.record(f"{side}triangle_2", (), res)
    # (id ⊗ T0) H_{X,1} = T(id ⊗ T0)
    for a, c in itertools.product(range(n), repeat=2):
        res = dt.compare_chains(
            ctx,
            dt.Tn(dt.P(X0, dt.Tn(dt.ONE))),
            (a,),
            c,
            [(Hrw, ()), (t0, (1,)), (dt.UNIT_RIGHT, ())],
            [(t0, (0, 1)), (dt.UNIT_RIGHT, (0,))],
        )
        rep.record(f"{side}triangle_3", (labels[a], labels[c]), res)
    # (T0 ⊗ id) H_{1,X} T(η_X) = id
    for a, c in itertools.product(range(n), repeat=2):
        res = dt.compare_chains(
            ctx,
            dt.Tn(X0),
            (a,),
            c,
            [(eta, (0,)), (dt.UNIT_LEFT_INS, (0,)), (Hrw, ()), (t0, (0,)), (dt.UNIT_LEFT, ())],
            [],
        )
        rep.record(f"{side}triangle_4", (labels[a], labels[c]), res)


def check_hopf_monad(data: HopfMonadData, tolerance: float | None = None) -> ValidationReport:
    """Heptagon and the four triangle identities (and their mirror images when H_right is given)."""
    tol = default_tolerance() if tolerance is None else tolerance
    rep = ValidationReport(f"hopf monad {data.name}".strip(), tol)
    _check_side(data, False, rep)
    if data.H_right is not None:
        _check_side(data, True, rep)
    return rep


# ---------------------------------------------------------------------------
# constructors

def _validate_action(cat: SkeletalData, G: FiniteGroup, action) -> list[tuple[int, ...]]:
    ring = cat.ring
    n = ring.rank
    perms = []
    for g in range(G.order):
        p = action[g] if not isinstance(action, dict) else action[g]
        p = tuple(ring.index(x) if isinstance(x, str) else int(x) for x in p)
        if sorted(p) != list(range(n)):
            raise NotAnAutomorphism(f"action of {G.label(g)} is not a permutation of the labels")
        if p[ring.unit] != ring.unit:
            raise NotAnAutomorphism(f"action of {G.label(g)} moves the unit")
        P_ = np.array(p)
        if not np.array_equal(ring.N[np.ix_(P_, P_, P_)], ring.N):
            raise NotAnAutomorphism(f"action of {G.label(g)} does not preserve fusion")
        perms.append(p)
    for g, h in itertools.product(range(G.order), repeat=2):
        gh = G.mul(g, h)
        if any(perms[g][perms[h][x]] != perms[gh][x] for x in range(n)):
            raise NotAnAutomorphism("label permutations do not compose like the group")
    # trivial tensorators need σ-invariant F
    for (a, b, c, d), blk in cat.F.items():
        s = perms
        for p in s:
            key = (p[a], p[b], p[c], p[d])
            other = cat.F.get(key)
            if other is None:
                raise NotAnAutomorphism("F symbols are not invariant under the action")
            for i, e in enumerate(blk.left):
                for j, f in enumerate(blk.right):
                    if abs(cat.fcoef(*key, p[e], p[f]) - blk.matrix[i][j]) > 1e-9:
                        raise NotAnAutomorphism(
                            "F symbols are not invariant under the action; nontrivial tensorators are not supported"
                        )
    return perms


def from_group_action(cat: SkeletalData, G: FiniteGroup, action=None) -> HopfMonadData:
    """T_G = ⊕_g T_g with trivial monoidal structure on each T_g.

    ``action[g]`` lists σ_g(b) for every label b (labels or indices); the
    default is the trivial action.
    """
    n = cat.rank
    if action is None:
        action = [tuple(range(n))] * G.order
    perms = _validate_action(cat, G, action)
    # copies of a in T(b): the group elements g with σ_g(b) = a, in group order
    glist = [[[g for g in range(G.order) if perms[g][b] == a] for b in range(n)] for a in range(n)]
    T = np.array([[len(glist[a][b]) for b in range(n)] for a in range(n)], dtype=np.int64)
    N = cat.ring.N

    def build(right: bool):
        H = {}
        for a, b, c in itertools.product(range(n), repeat=3):
            rows = h_rows(N, T, a, b, c)
            cols = (h_cols_right if right else h_cols)(N, T, a, b, c)
            if not rows and not cols:
                continue
            ridx = {r: i for i, r in enumerate(rows)}
            M = _zero_block(rows, cols)
            for j, (d, al, e, be) in enumerate(cols):
                g = glist[c][e][be]
                if right:
                    h = glist[d][a][al]
                    k = G.mul(g, h)
                    f, fl = perms[k][a], perms[g][b]
                    row = (f, glist[f][a].index(k), fl, glist[fl][b].index(g))
                else:
                    h = glist[d][b][al]
                    k = G.mul(g, h)
                    f, gl = perms[g][a], perms[k][b]
                    row = (f, glist[f][a].index(g), gl, glist[gl][b].index(k))
                M[ridx[row], j] = 1
            H[(a, b, c)] = M
        return H

    u = cat.ring.unit
    eps = np.ones(T[u, u], dtype=complex)
    eta = tuple(np.array([1.0 if g == 0 else 0.0 for g in glist[a][a]], dtype=complex) for a in range(n))
    return HopfMonadData(cat, T, build(False), eps, eta, build(True), f"T_{G.name}({cat.name})")


def _hopf_copies(Hd, b, a):
    """Copies of a in H ⊗ b: the H copies i with a ∈ h_i ⊗ b, in copy order."""
    N = Hd.ambient.ring.N
    return [i for i, h in enumerate(Hd.slot) if N[h, b, a]]


def _hopf_operator(Hd, right: bool, inverse_braid: bool):
    """Fusion operator of T = H ⊗ − as {(a, b, c): matrix} in the canonical bases."""
    data = Hd.ambient
    ring = data.ring
    n = ring.rank
    Hs = Hd.slot
    T = np.array([[len(_hopf_copies(Hd, b, a)) for b in range(n)] for a in range(n)], dtype=np.int64)
    N = ring.N
    out = {}
    for a, b in itertools.product(range(n), repeat=2):
        A, B = (a,), (b,)
        if right:
            word = (Hs, Hs, A, B)
            src_tree = (0, ((1, 2), 3))
            op = Dg.split(data, word, 0, Hd.Delta, (Hs, Hs))
            w = op.dst
            op = Dg.braid(data, w, 1, inverse_braid) @ op
            w = op.dst
            op = Dg.braid(data, w, 2, inverse_braid) @ op
            w = op.dst
            op = Dg.fuse(data, w, 0, Hd.m, Hs) @ op
        else:
            word = (Hs, A, Hs, B)
            src_tree = (0, (1, (2, 3)))
            op = Dg.split(data, word, 0, Hd.Delta, (Hs, Hs))
            op = Dg.braid(data, op.dst, 1, inverse_braid) @ op
            op = Dg.fuse(data, op.dst, 2, Hd.m, Hs) @ op
        tgt_word = op.dst
        s_states, Ps = Dg.tree_to_left(data, word, src_tree)
        t_states, Pt = Dg.tree_to_left(data, tgt_word, ((0, 1), (2, 3)))
        Pt_inv = np.linalg.inv(Pt.toarray())
        M = Pt_inv @ (op.mat @ Ps).toarray()
        # map tree states to canonical (row, col) labels
        for c in range(n):
            rows = h_rows(N, T, a, b, c)
            cols = (h_cols_right if right else h_cols)(N, T, a, b, c)
            if not rows and not cols:
                continue
            ridx = {r: i for i, r in enumerate(rows)}
            cidx = {r: i for i, r in enumerate(cols)}
            blk = _zero_block(rows, cols)
            tmap = {}
            for ti, st in enumerate(t_states):
                (k, _, f), (l, _, g), root_ = st
                if root_ != c:
                    continue
                tmap[ti] = ridx[(f, _hopf_copies(Hd, a, f).index(k), g, _hopf_copies(Hd, b, g).index(l))]
            for si, st in enumerate(s_states):
                if right:
                    j, ((i, _, d), _, e), root_ = st
                    if root_ != c:
                        continue
                    col = (d, _hopf_copies(Hd, a, d).index(i), e, _hopf_copies(Hd, e, c).index(j))
                else:
                    j, (_, (i, _, d), e), root_ = st
                    if root_ != c:
                        continue
                    col = (d, _hopf_copies(Hd, b, d).index(i), e, _hopf_copies(Hd, e, c).index(j))
                cj = cidx[col]
                for ti, ri in tmap.items():
                    blk[ri, cj] = M[ti, si]
            out[(a, b, c)] = blk
    return T, out


def from_hopf_algebra(Hd) -> HopfMonadData:
    """T = H ⊗ − for a Hopf algebra H in a braided category.

    Left operator: (m on the second and third H) ∘ (braid Δ's second leg past X) ∘ Δ,
    right operator: first leg multiplies T(X)'s H, second leg braided past T(X).
    """
    from .errors import AxiomViolation
    from .hopf_algebra import check_hopf_axioms

    rep = check_hopf_axioms(Hd)
    if not rep.passed:
        raise AxiomViolation(f"input is not a Hopf algebra: {rep.summary()}")
    T, H = _hopf_operator(Hd, right=False, inverse_braid=False)
    _, Hr = _hopf_operator(Hd, right=True, inverse_braid=False)
    ring = Hd.ambient.ring
    u = ring.unit
    ucop = _hopf_copies(Hd, u, u)
    eps = np.array([Hd.counit[i] for i in ucop], dtype=complex)
    eta = []
    for a in range(ring.rank):
        cop = _hopf_copies(Hd, a, a)
        eta.append(np.array([Hd.unit[i] if Hd.slot[i] == u else 0 for i in cop], dtype=complex))
    return HopfMonadData(Hd.ambient, T, H, eps, tuple(eta), Hr, f"{Hd.name}⊗−")


def identity_monad(cat: SkeletalData) -> HopfMonadData:
    from .groups import abelian_group

    return replace_name(from_group_action(cat, abelian_group(())), f"id({cat.name})")


def replace_name(data: HopfMonadData, name: str) -> HopfMonadData:
    return HopfMonadData(data.cat, data.T, data.H, data.eps, data.eta, data.H_right, name)


# ---------------------------------------------------------------------------
# derived structure

@dataclass(frozen=True)
class DerivedStructure:
    mu: dict  # (b, c) -> matrix, rows θ < T[c,b], cols (d, α, β)
    mu_cols: dict
    T2: dict  # (a, b, c) -> matrix, rows as H, cols (e, β)
    T2_cols: dict


def derived_structure(data: HopfMonadData) -> DerivedStructure:
    """μ_X = (T0 ⊗ id) H_{1,X} and T2(X, Y) = H_{X,Y} T(id ⊗ η_Y)."""
    blocks = _monad_blocks(data, False)
    ring = data.cat.ring
    n, u, N, T = ring.rank, ring.unit, ring.N, data.T
    mu, mu_cols = {}, {}
    for b, c in itertools.product(range(n), repeat=2):
        rows_, cols_, M = blocks[(u, b, c)]
        ridx = {r: i for i, r in enumerate(rows_)}
        cidx = {r: i for i, r in enumerate(cols_)}
        cols = [(d, al, be) for d in range(n) for al in range(int(T[d, b])) for be in range(int(T[c, d]))]
        out = np.zeros((int(T[c, b]), len(cols)), dtype=complex)
        for j, (d, al, be) in enumerate(cols):
            cj = cidx[(d, al, d, be)]
            for th in range(int(T[c, b])):
                out[th, j] = sum(data.eps[ga] * M[ridx[(u, ga, c, th)], cj] for ga in range(int(T[u, u])))
        mu[(b, c)] = out
        mu_cols[(b, c)] = cols
    t2, t2_cols = {}, {}
    for a, b, c in itertools.product(range(n), repeat=3):
        rows_, cols_, M = blocks[(a, b, c)]
        cidx = {r: i for i, r in enumerate(cols_)}
        cols = [(e, be) for e in range(n) if N[a, b, e] for be in range(int(T[c, e]))]
        out = np.zeros((len(rows_), len(cols)), dtype=complex)
        for j, (e, be) in enumerate(cols):
            for al in range(int(T[b, b])):
                out[:, j] += data.eta[b][al] * M[:, cidx[(b, al, e, be)]]
        t2[(a, b, c)] = out
        t2_cols[(a, b, c)] = cols
    return DerivedStructure(mu, mu_cols, t2, t2_cols)


def check_derived_monad(data: HopfMonadData, tolerance: float | None = None) -> ValidationReport:
    """μ associative and unital with respect to η, evaluated on dotted trees."""
    tol = default_tolerance() if tolerance is None else tolerance
    rep = ValidationReport(f"monad {data.name}".strip(), tol)
    ds = derived_structure(data)
    lookup = {}
    for key, M in ds.mu.items():
        cols = ds.mu_cols[key]
        for j, col in enumerate(cols):
            lookup[key + (col,)] = [(th, M[th, j]) for th in range(M.shape[0]) if M[th, j] != 0]
    mu = dt.mu_rewrite(lambda w, c, col: lookup.get((w, c, col), []))
    eta = dt.eta_rewrite(data.eta)
    ctx = _monad_context(data, False)
    labels = data.cat.ring.labels
    n = data.cat.rank
    X0 = dt.X(0)
    for b, c in itertools.product(range(n), repeat=2):
        t3 = dt.Tn(dt.Tn(dt.Tn(X0)))
        res = dt.compare_chains(ctx, t3, (b,), c, [(mu, (0,)), (mu, ())], [(mu, ()), (mu, ())])
        rep.record("associativity", (labels[b], labels[c]), res)
        t1 = dt.Tn(X0)
        res = dt.compare_chains(ctx, t1, (b,), c, [(eta, ()), (mu, ())], [])
        rep.record("left_unit", (labels[b], labels[c]), res)
        res = dt.compare_chains(ctx, t1, (b,), c, [(eta, (0,)), (mu, ())], [])
        rep.record("right_unit", (labels[b], labels[c]), res)
    return rep


# ---------------------------------------------------------------------------
# double

def double_object_map(cat: SkeletalData, data: HopfMonadData) -> np.ndarray:
    """Object map of D_T = Z_T ∘ T with Z_T(x) = ⊕_i T(x_i)* ⊗ x ⊗ x_i."""
    ring = cat.ring
    n = ring.rank
    T = np.asarray(data.T, dtype=np.int64)
    N = ring.N

    def tensor(u, v):
        return np.einsum("a,b,abc->c", u, v, N)

    def dual(v):
        return np.array([v[ring.dual[a]] for a in range(n)], dtype=np.int64)

    def Z(x):
        out = np.zeros(n, dtype=np.int64)
        for i in range(n):
            e = np.zeros(n, dtype=np.int64)
            e[i] = 1
            out += tensor(tensor(dual(T[:, i]), x), e)
        return out

    return np.stack([Z(T[:, b]) for b in range(n)], axis=1)


# ---------------------------------------------------------------------------
# JSON

def _tuple_names(ring, t, greek_positions):
    return [ring.labels[x] if i not in greek_positions else int(x) + 1 for i, x in enumerate(t)]


def monad_to_json(data: HopfMonadData) -> dict:
    ring = data.cat.ring
    L = ring.labels

    def blocks(store, colfn):
        out = {}
        for (a, b, c), M in sorted(store.items()):
            M = np.asarray(M)
            if M.size == 0:
                continue
            rows = data.rows(a, b, c)
            cols = colfn(a, b, c)
            out[f"{L[a]},{L[b]},{L[c]}"] = {
                "rows": [_tuple_names(ring, r, {1, 3}) for r in rows],
                "cols": [_tuple_names(ring, r, {1, 3}) for r in cols],
                "matrix": [[[complex(z).real, complex(z).imag] for z in row] for row in M],
            }
        return out

    out = {
        "name": data.name,
        "category": data.cat.name,
        "labels": list(L),
        "T": data.T.tolist(),
        "eps": [[complex(z).real, complex(z).imag] for z in data.eps],
        "eta": {L[a]: [[complex(z).real, complex(z).imag] for z in v] for a, v in enumerate(data.eta)},
        "H": blocks(data.H, data.cols),
    }
    if data.H_right is not None:
        out["H_right"] = blocks(data.H_right, data.cols_right)
    return out


def monad_from_json(obj: dict, cat: SkeletalData | None = None) -> HopfMonadData:
    try:
        cat = cat or builtin_skeletal(obj["category"])
        ring = cat.ring

        def z(v):
            return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)

        T = np.array(obj["T"], dtype=np.int64)

        def blocks(raw, colfn):
            out = {}
            for key, blk in raw.items():
                a, b, c = (ring.index(x) for x in key.split(","))
                rows = [tuple(ring.index(r[0]) if i % 2 == 0 else int(r[i]) - 1 for i in range(4)) for r in blk["rows"]]
                cols = [tuple(ring.index(r[0]) if i % 2 == 0 else int(r[i]) - 1 for i in range(4)) for r in blk["cols"]]
                for i, r in enumerate(blk["rows"]):
                    rows[i] = (ring.index(r[0]), int(r[1]) - 1, ring.index(r[2]), int(r[3]) - 1)
                for i, r in enumerate(blk["cols"]):
                    cols[i] = (ring.index(r[0]), int(r[1]) - 1, ring.index(r[2]), int(r[3]) - 1)
                M = np.array([[z(v) for v in row] for row in blk["matrix"]], dtype=complex)
                want_r = h_rows(ring.N, T, a, b, c)
                want_c = colfn(a, b, c)
                Mc = np.zeros((len(want_r), len(want_c)), dtype=complex)
                ri = {r: i for i, r in enumerate(want_r)}
                ci = {r: i for i, r in enumerate(want_c)}
                for i, r in enumerate(rows):
                    for j, col in enumerate(cols):
                        Mc[ri[r], ci[col]] = M[i, j]
                out[(a, b, c)] = Mc
            return out

        eps = np.array([z(v) for v in obj["eps"]], dtype=complex)
        eta = tuple(np.array([z(v) for v in obj["eta"][ring.labels[a]]], dtype=complex) for a in range(ring.rank))
        H = blocks(obj["H"], lambda a, b, c: h_cols(ring.N, T, a, b, c))
        Hr = None
        if "H_right" in obj:
            Hr = blocks(obj["H_right"], lambda a, b, c: h_cols_right(ring.N, T, a, b, c))
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise InputParseError(f"malformed Hopf monad JSON: {exc}") from exc
    return HopfMonadData(cat, T, H, eps, eta, Hr, obj.get("name", ""))


__all__ = [
    "TensorFunctorData",
    "HopfMonadData",
    "check_tensor_functor",
    "check_hopf_monad",
    "identity_functor",
    "forgetful_functor",
    "from_group_action",
    "from_hopf_algebra",
    "identity_monad",
    "derived_structure",
    "DerivedStructure",
    "check_derived_monad",
    "double_object_map",
    "h_matrix_sizes",
    "monad_to_json",
    "monad_from_json",
]
