"""Labelled dotted trees and local rewrites between them.

A tree node is ``("x", i)`` (input i), ``("1",)`` (unit), ``("T", child)``
(the functor applied to the child) or ``("P", left, right)`` (tensor
product).  A basis state mirrors the tree: an input or unit leaf is its
label, a dot is ``(label, index, child)`` and a pair ``(label, left, right)``.
The index of a dot labelled c over a child with root b runs over the copies
of c in T(b).

Pair nodes under at least one dot live in the source category, the others
in the target category; for endofunctors both are the same.

Natural transformations are rewrites at a path (child positions from the
root).  A chain of rewrites is evaluated by propagating sparse vectors, so
only reachable states are ever touched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BasisMismatch

_EPS = 1e-14


class CatView:
    """The parts of a skeletal category the tree engine needs, optionally reversed (X⊗ʳY = Y⊗X)."""

    def __init__(self, data, reverse: bool = False):
        self.data = data
        self.reverse = reverse
        ring = data.ring
        self.rank, self.unit, self.labels = ring.rank, ring.unit, ring.labels
        self.N = ring.N.transpose(1, 0, 2) if reverse else ring.N
        self._out = [[tuple(np.nonzero(self.N[a, b])[0]) for b in range(self.rank)] for a in range(self.rank)]

    def outcomes(self, a, b):
        return self._out[a][b]

    def fcoef(self, a, b, c, d, e, f):
        if self.reverse:
            return self.data.fincoef(c, b, a, d, e, f)
        return self.data.fcoef(a, b, c, d, e, f)

    def fincoef(self, a, b, c, d, f, e):
        if self.reverse:
            return self.data.fcoef(c, b, a, d, f, e)
        return self.data.fincoef(a, b, c, d, f, e)


def X(i):
    return ("x", i)


ONE = ("1",)


def Tn(t):
    return ("T", t)


def P(a, b):
    return ("P", a, b)


def root(state) -> int:
    return state if isinstance(state, (int, np.integer)) else state[0]


@dataclass
class Context:
    src: CatView
    dst: CatView
    T: np.ndarray  # T[a, b] = multiplicity of a (dst) in T(b) (src)

    def cat_at(self, depth_dots: int) -> CatView:
        return self.src if depth_dots > 0 else self.dst


def states(ctx: Context, tree, inputs, root_label=None, dots: int = 0) -> list:
    """All labellings of ``tree`` (optionally with fixed root label)."""
    res = _states(ctx, tree, inputs, dots)
    if root_label is None:
        return res
    return [s for s in res if root(s) == root_label]


def _states(ctx, tree, inputs, dots):
    kind = tree[0]
    if kind == "x":
        return [inputs[tree[1]]]
    if kind == "1":
        return [ctx.cat_at(dots).unit]
    if kind == "T":
        out = []
        inner = _states(ctx, tree[1], inputs, dots + 1)
        for s in inner:
            b = root(s)
            for c in range(ctx.T.shape[0]):
                for k in range(int(ctx.T[c, b])):
                    out.append((c, k, s))
        return out
    cat = ctx.cat_at(dots)
    out = []
    for s1 in _states(ctx, tree[1], inputs, dots):
        for s2 in _states(ctx, tree[2], inputs, dots):
            for x in cat.outcomes(root(s1), root(s2)):
                out.append((int(x), s1, s2))
    return out


# ---------------------------------------------------------------------------
# rewrites: (tree map, state map).  State maps receive the context category
# of the subtree (by dot depth) and return [(new_state, coefficient)].


@dataclass(frozen=True)
class Rewrite:
    name: str
    tree_fn: Callable
    state_fn: Callable  # (ctx, dots, subtree, state) -> list[(state, coeff)]


def _assoc_tree(t):
    if t[0] != "P" or t[1][0] != "P":
        raise BasisMismatch("associator needs ((A B) C)")
    return P(t[1][1], P(t[1][2], t[2]))


def _assoc_state(ctx, dots, t, s):
    cat = ctx.cat_at(dots)
    d, (e, sA, sB), sC = s
    a, b, c = root(sA), root(sB), root(sC)
    out = []
    for f in cat.outcomes(b, c):
        if not cat.N[a, f, d]:
            continue
        v = cat.fcoef(a, b, c, d, e, int(f))
        if v != 0:
            out.append(((d, sA, (int(f), sB, sC)), v))
    return out


def _assoc_inv_tree(t):
    if t[0] != "P" or t[2][0] != "P":
        raise BasisMismatch("inverse associator needs (A (B C))")
    return P(P(t[1], t[2][1]), t[2][2])


def _assoc_inv_state(ctx, dots, t, s):
    cat = ctx.cat_at(dots)
    d, sA, (f, sB, sC) = s
    a, b, c = root(sA), root(sB), root(sC)
    out = []
    for e in cat.outcomes(a, b):
        if not cat.N[e, c, d]:
            continue
        v = cat.fincoef(a, b, c, d, f, int(e))
        if v != 0:
            out.append(((d, (int(e), sA, sB), sC), v))
    return out


ASSOC = Rewrite("assoc", _assoc_tree, _assoc_state)
ASSOC_INV = Rewrite("assoc_inv", _assoc_inv_tree, _assoc_inv_state)


def fusion_rewrite(hcol: Callable) -> Rewrite:
    """T(A ⊗ T(B)) → T(A) ⊗ T(B); ``hcol(a, b, c, (d, α, e, β))`` gives [((f, γ, g, θ), coeff)]."""

    def tree_fn(t):
        if t[0] != "T" or t[1][0] != "P" or t[1][2][0] != "T":
            raise BasisMismatch("fusion operator needs T(A ⊗ T(B))")
        return P(Tn(t[1][1]), Tn(t[1][2][1]))

    def state_fn(ctx, dots, t, s):
        c, beta, (e, sA, (d, alpha, sB)) = s
        return [
            ((c, (f, gam, sA), (g, th, sB)), v) for (f, gam, g, th), v in hcol(root(sA), root(sB), c, (d, alpha, e, beta))
        ]

    return Rewrite("H", tree_fn, state_fn)


def tensorator_rewrite(t2col: Callable) -> Rewrite:
    """T(A) ⊗ T(B) → T(A ⊗ B); ``t2col(a, b, c, (d, α, e, β))`` gives [((f, γ), coeff)]."""

    def tree_fn(t):
        if t[0] != "P" or t[1][0] != "T" or t[2][0] != "T":
            raise BasisMismatch("tensorator needs T(A) ⊗ T(B)")
        return Tn(P(t[1][1], t[2][1]))

    def state_fn(ctx, dots, t, s):
        c, (d, alpha, sA), (e, beta, sB) = s
        return [((c, gam, (f, sA, sB)), v) for (f, gam), v in t2col(root(sA), root(sB), c, (d, alpha, e, beta))]

    return Rewrite("T2", tree_fn, state_fn)


def eta_rewrite(eta) -> Rewrite:
    """W → T(W), the unit of the monad."""

    def state_fn(ctx, dots, t, s):
        w = root(s)
        return [((w, k, s), v) for k, v in enumerate(eta[w]) if v != 0]

    return Rewrite("eta", lambda t: Tn(t), state_fn)


def counit_rewrite(eps) -> Rewrite:
    """T(1) → 1."""

    def tree_fn(t):
        if t[0] != "T" or t[1][0] != "1":
            raise BasisMismatch("T0 needs T(1)")
        return ONE

    def state_fn(ctx, dots, t, s):
        lab, k, inner = s
        if lab != ctx.cat_at(dots).unit:
            return []
        v = eps[k]
        return [(inner, v)] if v != 0 else []

    return Rewrite("T0", tree_fn, state_fn)


def mu_rewrite(mucol: Callable) -> Rewrite:
    """T(T(W)) → T(W); ``mucol(w, c, (d, α, β))`` gives [(θ, coeff)]."""

    def tree_fn(t):
        if t[0] != "T" or t[1][0] != "T":
            raise BasisMismatch("multiplication needs T(T(W))")
        return t[1]

    def state_fn(ctx, dots, t, s):
        c, beta, (d, alpha, sW) = s
        return [((c, th, sW), v) for th, v in mucol(root(sW), c, (d, alpha, beta))]

    return Rewrite("mu", tree_fn, state_fn)


def _unit_right_tree(t):
    if t[0] != "P" or t[2][0] != "1":
        raise BasisMismatch("right unitor needs W ⊗ 1")
    return t[1]


def _unit_left_tree(t):
    if t[0] != "P" or t[1][0] != "1":
        raise BasisMismatch("left unitor needs 1 ⊗ W")
    return t[2]


UNIT_RIGHT = Rewrite("unit_right", _unit_right_tree, lambda ctx, dots, t, s: [(s[1], 1.0)])
UNIT_LEFT = Rewrite("unit_left", _unit_left_tree, lambda ctx, dots, t, s: [(s[2], 1.0)])
UNIT_LEFT_INS = Rewrite(
    "unit_left_ins", lambda t: P(ONE, t), lambda ctx, dots, t, s: [((root(s), ctx.cat_at(dots).unit, s), 1.0)]
)


# ---------------------------------------------------------------------------
# applying rewrites inside trees


def _sub(tree, path):
    for p in path:
        tree = tree[1 + p]
    return tree


def _dots_on(tree, path):
    n = 0
    for p in path:
        if tree[0] == "T":
            n += 1
        tree = tree[1 + p]
    return n


def _replace_tree(tree, path, new):
    if not path:
        return new
    p = path[0]
    parts = list(tree)
    parts[1 + p] = _replace_tree(tree[1 + p], path[1:], new)
    return tuple(parts)


def _apply_state(ctx, tree, state, path, rw, dots):
    if not path:
        return rw.state_fn(ctx, dots, tree, state)
    p = path[0]
    child_tree = tree[1 + p]
    nd = dots + (1 if tree[0] == "T" else 0)
    if tree[0] == "T":
        lab, k, inner = state
        return [((lab, k, ns), v) for ns, v in _apply_state(ctx, child_tree, inner, path[1:], rw, nd)]
    lab, s1, s2 = state
    if p == 0:
        return [((lab, ns, s2), v) for ns, v in _apply_state(ctx, child_tree, s1, path[1:], rw, nd)]
    return [((lab, s1, ns), v) for ns, v in _apply_state(ctx, child_tree, s2, path[1:], rw, nd)]


def apply_chain(ctx: Context, tree, vec: dict, steps) -> tuple:
    """Push a sparse vector {state: coeff} through ``steps`` = [(rewrite, path), ...]."""
    for rw, path in steps:
        path = tuple(path)
        sub = _sub(tree, path)
        new_tree = _replace_tree(tree, path, rw.tree_fn(sub))
        out: dict = {}
        for s, c in vec.items():
            for ns, v in _apply_state(ctx, tree, s, path, rw, 0):
                out[ns] = out.get(ns, 0) + c * v
        vec = {s: c for s, c in out.items() if abs(c) > _EPS}
        tree = new_tree
    return tree, vec


def compare_chains(ctx: Context, tree, inputs, root_label, lhs, rhs) -> float:
    """Max |difference| between two rewrite chains over all source states."""
    worst = 0.0
    lt_final = rt_final = None
    for s in states(ctx, tree, inputs, root_label):
        lt, lv = apply_chain(ctx, tree, {s: 1.0}, lhs)
        rt, rv = apply_chain(ctx, tree, {s: 1.0}, rhs)
        if lt_final is None:
            lt_final, rt_final = lt, rt
            if lt != rt:
                raise BasisMismatch(f"chains end in different trees: {lt} vs {rt}")
        for k in set(lv) | set(rv):
            worst = max(worst, abs(lv.get(k, 0) - rv.get(k, 0)))
    return worst
