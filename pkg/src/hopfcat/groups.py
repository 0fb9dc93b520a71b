"""Small finite groups given by multiplication tables.

Only what the fusion-ring catalog needs: cyclic and abelian products, S3,
conjugacy classes, centralizers and character tables.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod

import numpy as np

from .errors import GroupTooLarge, InvalidParameter

MAX_GROUP_ORDER = 256


@dataclass(frozen=True)
class FiniteGroup:
    """Group on elements ``0..n-1`` with ``table[x][y] = x*y``; element 0 is the identity."""

    name: str
    table: tuple[tuple[int, ...], ...]
    element_names: tuple[str, ...] = ()
    # set for the embedded S3 so its exact character table is used
    kind: str = field(default="generic", compare=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise InvalidParameter("multiplication table must be square and nonempty")
        if n > MAX_GROUP_ORDER:
            raise GroupTooLarge(f"group order {n} exceeds bound {MAX_GROUP_ORDER}")
        if any(self.table[0][x] != x or self.table[x][0] != x for x in range(n)):
            raise InvalidParameter("element 0 must be the identity")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(next(y for y in range(self.order) if self.table[x][y] == 0) for x in range(self.order))

    def inv(self, x: int) -> int:
        return self.inverses[x]

    def conj(self, k: int, x: int) -> int:
        """k x k^{-1}."""
        return self.table[self.table[k][x]][self.inverses[k]]

    def label(self, x: int) -> str:
        return self.element_names[x] if self.element_names else str(x)

    def element_order(self, x: int) -> int:
        y, n = x, 1
        while y != 0:
            y = self.table[y][x]
            n += 1
        return n

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[x][y] == self.table[y][x] for x in range(n) for y in range(x + 1, n))

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({self.conj(k, x) for k in range(self.order)})
            seen.update(cls)
            classes.append(tuple(cls))
        return tuple(classes)

    def centralizer(self, x: int) -> tuple[int, ...]:
        return tuple(k for k in range(self.order) if self.table[k][x] == self.table[x][k])

    def subgroup(self, elements, name: str = "") -> tuple["FiniteGroup", tuple[int, ...]]:
        """Return the subgroup on ``elements`` (identity first) and the embedding list."""
        elems = sorted(set(elements))
        if elems[0] != 0:
            raise InvalidParameter("subgroup must contain the identity")
        pos = {g: i for i, g in enumerate(elems)}
        try:
            table = tuple(tuple(pos[self.table[x][y]] for y in elems) for x in elems)
        except KeyError as exc:
            raise InvalidParameter("element set is not closed under multiplication") from exc
        names = tuple(self.label(g) for g in elems)
        kind = "S3" if self.kind == "S3" and len(elems) == 6 else "generic"
        return FiniteGroup(name or f"sub({self.name})", table, names, kind), tuple(elems)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter("cyclic group order must be positive")
    table = tuple(tuple((x + y) % n for y in range(n)) for x in range(n))
    return FiniteGroup(f"Z{n}", table, tuple(str(x) for x in range(n)))


def abelian_group(factors) -> FiniteGroup:
    """Direct product of cyclic groups; elements enumerated lexicographically."""
    factors = tuple(int(f) for f in factors)
    if any(f < 1 for f in factors):
        raise InvalidParameter("cyclic factor orders must be positive")
    if prod(factors) > MAX_GROUP_ORDER:
        raise GroupTooLarge(f"group order {prod(factors)} exceeds bound {MAX_GROUP_ORDER}")
    elems = list(itertools.product(*(range(f) for f in factors)))
    pos = {e: i for i, e in enumerate(elems)}
    table = tuple(
        tuple(pos[tuple((a + b) % f for a, b, f in zip(x, y, factors))] for y in elems) for x in elems
    )
    names = tuple("".join(map(str, e)) if e else "0" for e in elems)
    name = "x".join(f"Z{f}" for f in factors) or "trivial"
    return FiniteGroup(name, table, names)


# S3 acting on {0,1,2}; element order fixed so that the class representatives are 0, 1, 4.
_S3_PERMS = ((0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1))
_S3_NAMES = ("e", "(01)", "(02)", "(12)", "(012)", "(021)")


def symmetric_group_3() -> FiniteGroup:
    pos = {p: i for i, p in enumerate(_S3_PERMS)}

    def compose(p, q):  # (p*q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(3))

    table = tuple(tuple(pos[compose(p, q)] for q in _S3_PERMS) for p in _S3_PERMS)
    return FiniteGroup("S3", table, _S3_NAMES, kind="S3")


def group_from_key(key: str) -> FiniteGroup:
    """Parse ``S3``, ``Z4``, ``Z2xZ2``, ``trivial`` or ``1``."""
    key = key.strip()
    if key in ("S3",):
        return symmetric_group_3()
    if key in ("1", "trivial", "Z1"):
        return abelian_group(())
    parts = key.replace("×", "x").split("x")
    try:
        factors = [int(p.strip().lstrip("Z")) for p in parts]
    except ValueError as exc:
        raise InvalidParameter(f"cannot parse group {key!r}") from exc
    return abelian_group(factors)


# ---------------------------------------------------------------------------
# characters

@dataclass(frozen=True)
class CharacterTable:
    """Rows are irreducible characters, columns are group elements (not classes)."""

    values: np.ndarray  # shape (n_irreps, |G|), complex
    names: tuple[str, ...]


def _s3_table(group: FiniteGroup) -> CharacterTable:
    # exact values: trivial, sign, standard 2-dim; columns in the _S3_PERMS order
    sign = [1, -1, -1, -1, 1, 1]
    std = [2, 0, 0, 0, -1, -1]
    vals = np.array([[1] * 6, sign, std], dtype=complex)
    return CharacterTable(vals, ("triv", "sign", "std"))


def abelian_basis(group: FiniteGroup) -> list[int]:
    """Independent generators whose orders multiply to |G| (depth-first search)."""
    n = group.order
    if n == 1:
        return []
    orders = {x: group.element_order(x) for x in range(n)}
    candidates = sorted(range(1, n), key=lambda x: (-orders[x], x))

    def span(gens):
        elems = {0}
        for g in gens:
            cur = set(elems)
            power = g
            while power != 0:
                cur |= {group.mul(power, e) for e in elems}
                power = group.mul(power, g)
            elems = cur
        return elems

    def search(gens, size):
        if size == n:
            return gens
        for x in candidates:
            if x in gens:
                continue
            new = span(gens + [x])
            if len(new) == size * orders[x]:
                found = search(gens + [x], len(new))
                if found is not None:
                    return found
        return None

    basis = search([], 1)
    if basis is None:  # pragma: no cover - impossible for abelian groups
        raise InvalidParameter("no basis found; group not abelian?")
    return basis


def _abelian_table(group: FiniteGroup) -> CharacterTable:
    basis = abelian_basis(group)
    orders = [group.element_order(g) for g in basis]
    # coordinates of each element in the basis
    coords: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(o) for o in orders)):
        x = 0
        for g, k in zip(basis, exps):
            for _ in range(k):
                x = group.mul(x, g)
        coords[x] = exps
    rows, names = [], []
    for ks in itertools.product(*(range(o) for o in orders)):
        row = [
            cmath.exp(2j * cmath.pi * sum(k * c / o for k, c, o in zip(ks, coords[x], orders)))
            for x in range(group.order)
        ]
        rows.append(row)
        names.append("chi" + "".join(map(str, ks)) if ks else "triv")
    return CharacterTable(np.array(rows, dtype=complex), tuple(names))


def burnside_table(group: FiniteGroup, seed: int = 0) -> CharacterTable:
    """Character table from simultaneous eigenvectors of the class-sum algebra.

    Numerical, exact up to rounding; used for groups without a closed form and
    as an independent cross-check of the embedded tables.
    """
    classes = group.conjugacy_classes
    r = len(classes)
    cls_of = {}
    for i, c in enumerate(classes):
        for x in c:
            cls_of[x] = i
    reps = [c[0] for c in classes]
    # structure constants: C_i C_j = sum_k a[i][j][k] C_k
    a = np.zeros((r, r, r))
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            for x in ci:
                for y in cj:
                    z = group.mul(x, y)
                    if z in reps:
                        a[i, j, cls_of[z]] += 1
    rng = np.random.default_rng(seed)
    weights = rng.normal(size=r)
    m = np.einsum("i,ijk->jk", weights, a)
    # w_j = |C_j| chi(g_j)/chi(1) satisfies sum_k a[i,j,k] w_k = w_i w_j
    _, vecs = np.linalg.eig(m)
    sizes = np.array([len(c) for c in classes])
    rows = []
    for v in vecs.T:
        v = v / v[0]  # omega_chi(C_k) = |C_k| chi(g_k)/chi(1)
        ratio = v / sizes  # chi(g_k)/chi(1)
        dim2 = group.order / np.sum(sizes * np.abs(ratio) ** 2)
        dim = np.sqrt(dim2.real)
        rows.append(dim * ratio)
    rows.sort(key=lambda row: (round(row[0].real), tuple(np.round(row.real, 6)), tuple(np.round(row.imag, 6))))
    vals = np.array([[row[cls_of[x]] for x in range(group.order)] for row in rows])
    return CharacterTable(vals, tuple(f"chi{i}" for i in range(r)))


def character_table(group: FiniteGroup) -> CharacterTable:
    if group.kind == "S3":
        return _s3_table(group)
    if group.is_abelian:
        return _abelian_table(group)
    return burnside_table(group)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
