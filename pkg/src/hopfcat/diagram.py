"""Layered evaluation of string diagrams on left-nested splitting trees.

A *word* is a tuple of slots; a slot is an object written as the tuple of
simple labels of its copies (``2+τ`` in Fib is ``(0, 0, 1)``).  A basis state
of ``Hom(x, ⊗word)`` is ``(leaves, internals)``: one copy index per slot and
the labels ``I[0] = (L0 L1)``, ``I[j] = (I[j-1] L_{j+1})``.  The root is the
last internal label (the leaf label for one slot, the unit for none).

Structure maps act on these states: a 2→1 map at slots ``k, k+1`` first
regroups the two leaves with F, a 1→2 map splits a leaf and regroups with
F⁻¹, and a braiding regroups, multiplies by R and regroups back.  F is
assumed normalized on unit legs, so inserting or deleting a unit leaf only
duplicates or drops an internal label.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import BasisMismatch, InputParseError, MissingSymbol
from .fusion_ring import FusionRing, parse_object

Slot = tuple[int, ...]
Word = tuple[Slot, ...]
State = tuple[tuple[int, ...], tuple[int, ...]]

_EPS = 1e-15


def copies(vec) -> Slot:
    """Copy labels of an object vector, grouped by label in label order."""
    out: list[int] = []
    for a, k in enumerate(np.asarray(vec)):
        out.extend([a] * int(k))
    return tuple(out)


def as_slot(ring: FusionRing, obj) -> Slot:
    if isinstance(obj, (int, np.integer)):
        return (ring.index(int(obj)),)
    if isinstance(obj, str):
        if obj in ring.labels:
            return (ring.index(obj),)
        return copies(parse_object(ring, obj))
    if isinstance(obj, np.ndarray):
        return copies(obj)
    return tuple(ring.index(int(x)) for x in obj)


def as_word(ring: FusionRing, word) -> Word:
    return tuple(as_slot(ring, s) for s in word)


@dataclass(frozen=True, eq=False)
class TreeBasis:
    ring: FusionRing
    word: Word
    states: tuple[State, ...]
    index: dict

    def root(self, s: State) -> int:
        L, I = s
        if I:
            return I[-1]
        if L:
            return self.word[0][L[0]]
        return self.ring.unit

    @property
    def size(self) -> int:
        return len(self.states)

    def label(self, k: int, s: State) -> int:
        return self.word[k][s[0][k]]


@lru_cache(maxsize=4096)
def tree_basis(ring: FusionRing, word: Word) -> TreeBasis:
    states: list[State] = []
    if not word:
        states.append(((), ()))
    else:
        out = [[ring.outcomes(a, b) for b in range(ring.rank)] for a in range(ring.rank)]

        def rec(k, L, I, cur):
            if k == len(word):
                states.append((tuple(L), tuple(I)))
                return
            for c, lab in enumerate(word[k]):
                for x in out[cur][lab]:
                    rec(k + 1, L + [c], I + [x], x)

        for c, lab in enumerate(word[0]):
            rec(1, [c], [], lab)
    return TreeBasis(ring, word, tuple(states), {s: i for i, s in enumerate(states)})


@dataclass(frozen=True, eq=False)
class Op:
    """Linear map between tree bases, stored as a sparse (dst × src) matrix."""

    src_basis: TreeBasis
    dst_basis: TreeBasis
    mat: sp.csr_matrix

    @property
    def src(self) -> Word:
        return self.src_basis.word

    @property
    def dst(self) -> Word:
        return self.dst_basis.word

    def __matmul__(self, other: "Op") -> "Op":
        """``self ∘ other``."""
        if other.dst != self.src:
            raise BasisMismatch(f"cannot compose: {other.dst} → vs → {self.src}")
        return Op(other.src_basis, self.dst_basis, (self.mat @ other.mat).tocsr())

    def __add__(self, other: "Op") -> "Op":
        _same(self, other)
        return Op(self.src_basis, self.dst_basis, (self.mat + other.mat).tocsr())

    def __sub__(self, other: "Op") -> "Op":
        _same(self, other)
        return Op(self.src_basis, self.dst_basis, (self.mat - other.mat).tocsr())

    def scale(self, c: complex) -> "Op":
        return Op(self.src_basis, self.dst_basis, (self.mat * c).tocsr())

    def dense(self) -> np.ndarray:
        return self.mat.toarray()

    def norm(self) -> float:
        return float(np.max(np.abs(self.mat.data), initial=0.0))

    def block(self, root: int) -> np.ndarray:
        rows = [i for i, s in enumerate(self.dst_basis.states) if self.dst_basis.root(s) == root]
        cols = [j for j, s in enumerate(self.src_basis.states) if self.src_basis.root(s) == root]
        return self.mat[rows][:, cols].toarray()


def _same(a: Op, b: Op):
    if a.src != b.src or a.dst != b.dst:
        raise BasisMismatch("operators act between different words")


def identity(ring: FusionRing, word: Word) -> Op:
    tb = tree_basis(ring, word)
    return Op(tb, tb, sp.identity(tb.size, dtype=complex, format="csr"))


def _build(data, src: Word, dst: Word, fn: Callable[[State, TreeBasis], Iterable[tuple[State, complex]]]) -> Op:
    ring = data.ring
    sb, db = tree_basis(ring, src), tree_basis(ring, dst)
    rows, cols, vals = [], [], []
    idx = db.index
    for j, s in enumerate(sb.states):
        for t, c in fn(s, sb):
            if abs(c) <= _EPS:
                continue
            try:
                rows.append(idx[t])
            except KeyError:  # pragma: no cover - indicates an engine bug
                raise BasisMismatch(f"state {t} not in target basis of {dst}") from None
            cols.append(j)
            vals.append(c)
    m = sp.csr_matrix((np.array(vals, dtype=complex), (rows, cols)), shape=(db.size, sb.size))
    m.sum_duplicates()
    return Op(sb, db, m)


def _left_label(sb: TreeBasis, s: State, k: int) -> int:
    """Label of the subtree on the first k leaves (k ≥ 1)."""
    return sb.label(0, s) if k == 1 else s[1][k - 2]


# ---------------------------------------------------------------------------
# generators; coefficient tensors are dense numpy arrays over copies

def _nz2(T: np.ndarray):
    """Nonzero entries of T[i, j, o] grouped by (i, j)."""
    out: dict = {}
    for i, j, o in zip(*np.nonzero(np.abs(T) > _EPS)):
        out.setdefault((int(i), int(j)), []).append((int(o), complex(T[i, j, o])))
    return out


def fuse(data, word: Word, k: int, T: np.ndarray, out_slot: Slot) -> Op:
    """2→1 map on slots k, k+1 with ``T[i, j, o]`` = coefficient of copy o in copy i ⊗ copy j."""
    _check_pos(word, k, 2)
    dst = word[:k] + (tuple(out_slot),) + word[k + 2 :]
    coeffs = _nz2(np.asarray(T))
    F = data.fcoef

    def fn(s, sb):
        L, I = s
        a, b = sb.label(k, s), sb.label(k + 1, s)
        for o, c in coeffs.get((L[k], L[k + 1]), ()):
            x = out_slot[o]
            if not data.ring.N[a, b, x]:
                continue
            nL = L[:k] + (o,) + L[k + 2 :]
            if k == 0:
                if I[0] == x:
                    yield (nL, I[1:]), c
            else:
                E = _left_label(sb, s, k)
                d = I[k]
                f = F(E, a, b, d, I[k - 1], x)
                if f != 0:
                    yield (nL, I[: k - 1] + I[k:]), c * f

    return _build(data, word, dst, fn)


def split(data, word: Word, k: int, T: np.ndarray, out_slots: tuple[Slot, Slot]) -> Op:
    """1→2 map on slot k with ``T[p, q, i]`` = coefficient of copy p ⊗ copy q in the image of copy i."""
    _check_pos(word, k, 1)
    A, B = tuple(out_slots[0]), tuple(out_slots[1])
    dst = word[:k] + (A, B) + word[k + 1 :]
    T = np.asarray(T)
    coeffs: dict = {}
    for p, q, i in zip(*np.nonzero(np.abs(T) > _EPS)):
        coeffs.setdefault(int(i), []).append((int(p), int(q), complex(T[p, q, i])))
    Fi = data.fincoef
    N = data.ring.N

    def fn(s, sb):
        L, I = s
        x = sb.label(k, s)
        for p, q, c in coeffs.get(L[k], ()):
            a, b = A[p], B[q]
            if not N[a, b, x]:
                continue
            nL = L[:k] + (p, q) + L[k + 1 :]
            if k == 0:
                yield (nL, (x,) + I), c
            else:
                E = _left_label(sb, s, k)
                d = I[k - 1]
                for e in data.ring.outcomes(E, a):
                    if not N[e, b, d]:
                        continue
                    g = Fi(E, a, b, d, x, e)
                    if g != 0:
                        yield (nL, I[: k - 1] + (e,) + I[k - 1 :]), c * g

    return _build(data, word, dst, fn)


def apply(data, word: Word, k: int, M: np.ndarray, out_slot: Slot) -> Op:
    """1→1 label-preserving map on slot k, ``M[o, i]``."""
    _check_pos(word, k, 1)
    dst = word[:k] + (tuple(out_slot),) + word[k + 1 :]
    M = np.asarray(M)
    cols: dict = {}
    for o, i in zip(*np.nonzero(np.abs(M) > _EPS)):
        cols.setdefault(int(i), []).append((int(o), complex(M[o, i])))
    src_slot = word[k]

    def fn(s, sb):
        L, I = s
        for o, c in cols.get(L[k], ()):
            if out_slot[o] != src_slot[L[k]]:
                continue
            yield (L[:k] + (o,) + L[k + 1 :], I), c

    return _build(data, word, dst, fn)


def unit(data, word: Word, k: int, v: np.ndarray, slot: Slot) -> Op:
    """Insert ``Σ v[o]·copy o`` (copies of the unit) before slot k."""
    if not 0 <= k <= len(word):
        raise BasisMismatch(f"unit position {k} outside word of length {len(word)}")
    slot = tuple(slot)
    dst = word[:k] + (slot,) + word[k:]
    u = data.ring.unit
    ent = [(o, complex(c)) for o, c in enumerate(np.asarray(v)) if abs(c) > _EPS and slot[o] == u]

    def fn(s, sb):
        L, I = s
        n = len(L)
        for o, c in ent:
            nL = L[:k] + (o,) + L[k:]
            if n == 0:
                yield (nL, ()), c
            elif k == 0:
                yield (nL, (sb.label(0, s),) + I), c
            else:
                E = _left_label(sb, s, k)
                yield (nL, I[: k - 1] + (E,) + I[k - 1 :]), c

    return _build(data, word, dst, fn)


def counit(data, word: Word, k: int, v: np.ndarray) -> Op:
    """Delete slot k, pairing unit copies with ``v``."""
    _check_pos(word, k, 1)
    dst = word[:k] + word[k + 1 :]
    slot = word[k]
    u = data.ring.unit
    v = np.asarray(v)

    def fn(s, sb):
        L, I = s
        if slot[L[k]] != u:
            return
        c = complex(v[L[k]])
        nL = L[:k] + L[k + 1 :]
        if k == 0:
            yield (nL, I[1:]), c
        else:
            yield (nL, I[: k - 1] + I[k:]), c

    return _build(data, word, dst, fn)


def braid(data, word: Word, k: int, inverse: bool = False) -> Op:
    """c_{X,Y} on slots k, k+1 (or c^{-1}_{Y,X} when ``inverse``)."""
    _check_pos(word, k, 2)
    dst = word[:k] + (word[k + 1], word[k]) + word[k + 2 :]
    F, Fi, R = data.fcoef, data.fincoef, data.rcoef
    ring = data.ring

    def rr(a, b, x):
        return 1 / R(b, a, x) if inverse else R(a, b, x)

    def fn(s, sb):
        L, I = s
        a, b = sb.label(k, s), sb.label(k + 1, s)
        nL = L[:k] + (L[k + 1], L[k]) + L[k + 2 :]
        if k == 0:
            yield (nL, I), rr(a, b, I[0])
            return
        E = _left_label(sb, s, k)
        d = I[k]
        for x in ring.outcomes(a, b):
            if not ring.N[E, x, d]:
                continue
            c = F(E, a, b, d, I[k - 1], x) * rr(a, b, x)
            if c == 0:
                continue
            for e in ring.outcomes(E, b):
                if ring.N[e, a, d]:
                    g = Fi(E, b, a, d, x, e)
                    if g != 0:
                        yield (nL, I[: k - 1] + (e,) + I[k:]), c * g

    return _build(data, word, dst, fn)


def _check_pos(word: Word, k: int, width: int):
    if not 0 <= k <= len(word) - width:
        raise BasisMismatch(f"position {k} (width {width}) outside word of length {len(word)}")


# ---------------------------------------------------------------------------
# other bracketings

def tree_leaves(tree) -> list[int]:
    if isinstance(tree, (int, np.integer)):
        return [int(tree)]
    if len(tree) != 2:
        raise InputParseError("trees are binary: (left, right)")
    return tree_leaves(tree[0]) + tree_leaves(tree[1])


def tree_states(ring: FusionRing, word: Word, tree) -> list:
    """States of a bracketed tree: leaf = copy index, node = (left, right, label)."""
    out = [[ring.outcomes(a, b) for b in range(ring.rank)] for a in range(ring.rank)]

    def rec(t):
        if isinstance(t, (int, np.integer)):
            return [(c, lab) for c, lab in enumerate(word[int(t)])]
        res = []
        for s1, r1 in rec(t[0]):
            for s2, r2 in rec(t[1]):
                for x in out[r1][r2]:
                    res.append(((s1, s2, x), x))
        return res

    if tree_leaves(tree) != list(range(len(word))):
        raise BasisMismatch("tree leaves must enumerate the word in order")
    return [s for s, _ in rec(tree)]


def _state_root(s, word, t):
    if isinstance(t, (int, np.integer)):
        return word[int(t)][s]
    return s[2]


def tree_to_left(data, word: Word, tree) -> tuple[list, sp.csr_matrix]:
    """Basis change from the bracketing ``tree`` to the left-nested basis.

    Returns the tree states and the matrix whose column j is state j expanded
    in left-nested states.
    """
    ring = data.ring
    states = tree_states(ring, word, tree)
    tb = tree_basis(ring, word)
    Fi = data.fincoef
    N = ring.N
    cache: dict = {}

    def join(A, B, d):
        # A, B: left-nested (leaf labels, copies, internals) over consecutive leaves
        key = (A, B, d)
        if key in cache:
            return cache[key]
        (LA, lA, IA), (LB, lB, IB) = A, B
        rootA = IA[-1] if IA else lA[0]
        res: dict = {}
        if len(LB) == 1:
            st = (LA + LB, lA + lB, IA + (d,))
            res[st] = 1.0
        else:
            y = lB[-1]
            w = IB[-1]
            Bp = (LB[:-1], lB[:-1], IB[:-1])
            rootBp = IB[-2] if len(IB) >= 2 else lB[0]
            for e in ring.outcomes(rootA, rootBp):
                if not N[e, y, d]:
                    continue
                g = Fi(rootA, rootBp, y, d, w, e)
                if g == 0:
                    continue
                for (L, l, I), c in join(A, Bp, e).items():
                    st = (L + (LB[-1],), l + (y,), I + (d,))
                    res[st] = res.get(st, 0) + c * g
        cache[key] = res
        return res

    def left(s, t):
        if isinstance(t, (int, np.integer)):
            return {((s,), (word[int(t)][s],), ()): 1.0}
        s1, s2, x = s
        res: dict = {}
        for A, c1 in left(s1, t[0]).items():
            for B, c2 in left(s2, t[1]).items():
                for st, c3 in join(A, B, x).items():
                    res[st] = res.get(st, 0) + c1 * c2 * c3
        return res

    rows, cols, vals = [], [], []
    for j, s in enumerate(states):
        for (L, _, I), c in left(s, tree).items():
            if abs(c) > _EPS:
                rows.append(tb.index[(L, I)])
                cols.append(j)
                vals.append(c)
    m = sp.csr_matrix((np.array(vals, dtype=complex), (rows, cols)), shape=(tb.size, len(states)))
    return states, m


# ---------------------------------------------------------------------------
# programs

def run_program(data, word: Word, program: Sequence) -> Op:
    """Compose program steps left to right, starting from ``word``.

    Steps: ("fuse", k, T, out_slot), ("split", k, T, (A, B)), ("apply", k, M, out_slot),
    ("unit", k, v, slot), ("counit", k, v), ("braid", k), ("braid_inv", k),
    ("fmove", k), ("fmove_inv", k), ("tensor", offset, subprogram).
    ``fmove`` leaves the left-nested basis; only the matching ``fmove_inv`` may follow it.
    """
    op = identity(data.ring, word)
    pending = None
    for step in _flatten(program, 0):
        kind = step[0]
        if pending is not None:
            if kind != "fmove_inv" or step[1] != pending[0]:
                raise BasisMismatch(f"step {kind!r} after fmove at {pending[0]}; only fmove_inv may follow")
            op = pending[1] @ op
            pending = None
            continue
        w = op.dst
        if kind == "fuse":
            nxt = fuse(data, w, step[1], step[2], step[3])
        elif kind == "split":
            nxt = split(data, w, step[1], step[2], step[3])
        elif kind == "apply":
            nxt = apply(data, w, step[1], step[2], step[3])
        elif kind == "unit":
            nxt = unit(data, w, step[1], step[2], step[3])
        elif kind == "counit":
            nxt = counit(data, w, step[1], step[2])
        elif kind == "braid":
            nxt = braid(data, w, step[1])
        elif kind == "braid_inv":
            nxt = braid(data, w, step[1], inverse=True)
        elif kind == "fmove":
            fm, fmi = fmove_pair(data, w, step[1])
            op = fm @ op
            pending = (step[1], fmi)
            continue
        elif kind == "fmove_inv":
            raise BasisMismatch("fmove_inv without a preceding fmove")
        else:
            raise MissingSymbol(f"unknown diagram step {kind!r}")
        op = nxt @ op
    return op


def _flatten(program, offset):
    for step in program:
        if step[0] == "tensor":
            yield from _flatten(step[2], offset + step[1])
        else:
            yield (step[0], step[1] + offset) + tuple(step[2:])


def fmove_pair(data, word: Word, k: int) -> tuple[Op, Op]:
    """F-move grouping slots k, k+1 under their left neighbour, and its inverse.

    The grouped basis reuses left-nested state tuples with internal ``k-1``
    holding the channel of the grouped pair; both maps are returned so a
    program can round-trip.
    """
    _check_pos(word, k, 2)
    tb = tree_basis(data.ring, word)
    if k == 0:
        ident = identity(data.ring, word)
        return ident, ident
    F, Fi = data.fcoef, data.fincoef
    ring = data.ring
    grouped: list = []
    rows, cols, vals = [], [], []
    gidx: dict = {}
    for j, s in enumerate(tb.states):
        L, I = s
        a, b = tb.label(k, s), tb.label(k + 1, s)
        E = _left_label(tb, s, k)
        d = I[k]
        for x in ring.outcomes(a, b):
            if not ring.N[E, x, d]:
                continue
            g = (L, I[: k - 1] + (x,) + I[k:])
            if g not in gidx:
                gidx[g] = len(grouped)
                grouped.append(g)
            c = F(E, a, b, d, I[k - 1], x)
            if c != 0:
                rows.append(gidx[g])
                cols.append(j)
                vals.append(c)
    n = len(grouped)
    fm = sp.csr_matrix((np.array(vals, dtype=complex), (rows, cols)), shape=(n, tb.size))
    inv_rows, inv_cols, inv_vals = [], [], []
    for gi, (L, Ig) in enumerate(grouped):
        s0 = (L, Ig)
        a, b = tb.word[k][L[k]], tb.word[k + 1][L[k + 1]]
        E = tb.word[0][L[0]] if k == 1 else Ig[k - 2]
        x, d = Ig[k - 1], Ig[k]
        for e in ring.outcomes(E, a):
            if ring.N[e, b, d]:
                c = Fi(E, a, b, d, x, e)
                if c != 0:
                    inv_rows.append(tb.index[(L, s0[1][: k - 1] + (e,) + s0[1][k:])])
                    inv_cols.append(gi)
                    inv_vals.append(c)
    fmi = sp.csr_matrix((np.array(inv_vals, dtype=complex), (inv_rows, inv_cols)), shape=(tb.size, n))
    gb = TreeBasis(ring, word, tuple(grouped), gidx)
    return Op(tb, gb, fm), Op(gb, tb, fmi)


# ---------------------------------------------------------------------------
# parameter-linear families (used by the solver and by perturbation tests)

def linear_family(builder: Callable[[np.ndarray], Op], shape: tuple[int, ...], mask: np.ndarray | None = None):
    """Basis operators B_p with op(T) = Σ_p T[p]·B_p, for builders linear in T."""
    family = []
    for p in np.ndindex(*shape):
        if mask is not None and not mask[p]:
            continue
        E = np.zeros(shape, dtype=complex)
        E[p] = 1.0
        op = builder(E)
        if op.mat.nnz:
            family.append((p, op))
    return family
