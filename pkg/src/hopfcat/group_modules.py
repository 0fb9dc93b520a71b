"""Module categories over Vec_G for finite abelian G and their bimodule products.

Indecomposable module categories are labelled M(H, ψ) with H ≤ G and ψ an
alternating bicharacter on H.  A Vec_{A1}–Vec_{A2} bimodule is a module over
A1 ⊕ A2, and the product over Vec_{A2} is

    M(H, ψ) ⊠ M(H', ψ') = m · M(H'', ψ''),
    m = |H ∩ H'| · |(H ∩ H')^⊥| · |A2| / (|H| · |H'|).

All values of bicharacters live in Q/Z and are exact ``Fraction`` objects.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable

from .errors import GroupTooLarge, InvalidParameter, NonIntegerMultiplicity

MAX_GROUP_ORDER = 256

Element = tuple[int, ...]


def qz(x) -> Fraction:
    """Canonical representative in [0, 1)."""
    x = Fraction(x)
    return x - math.floor(x)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """⊕ Z_{n_i}; elements are integer tuples reduced mod the factors."""

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        if any(n < 1 for n in self.orders):
            raise InvalidParameter(f"cyclic factor orders must be positive: {self.orders}")

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.orders)

    def elements(self) -> list[Element]:
        return list(itertools.product(*[range(n) for n in self.orders]))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x: Element) -> Element:
        return tuple(-a % n for a, n in zip(x, self.orders))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % n for a, n in zip(x, self.orders))

    def element_order(self, x: Element) -> int:
        o = 1
        for a, n in zip(x, self.orders):
            o = math.lcm(o, n // math.gcd(a, n))
        return o

    def __add__(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(self.orders + other.orders)

    def generated(self, gens: Iterable[Element]) -> frozenset:
        span = {self.zero}
        for g in gens:
            if g in span:
                continue
            new = set(span)
            frontier = list(span)
            while frontier:
                x = self.add(frontier.pop(), g)
                if x not in new:
                    new.add(x)
                    frontier.append(x)
            span = new
        return frozenset(span)

    def check_size(self, limit: int = MAX_GROUP_ORDER):
        if self.order > limit:
            raise GroupTooLarge(f"|G| = {self.order} exceeds {limit}")

    def subgroups(self, limit: int = MAX_GROUP_ORDER) -> list[frozenset]:
        """All subgroups, by size then by sorted elements."""
        if len(self.orders) == 1:
            n = self.orders[0]
            return sorted((frozenset((k,) for k in range(0, n, d)) for d in range(1, n + 1) if n % d == 0),
                          key=lambda s: (len(s), sorted(s)))
        self.check_size(limit)
        found = {frozenset([self.zero])}
        frontier = list(found)
        elems = self.elements()
        while frontier:
            S = frontier.pop()
            for g in elems:
                if g not in S:
                    T = self.generated(list(_some_generators(self, S)) + [g])
                    if T not in found:
                        found.add(T)
                        frontier.append(T)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def __str__(self):
        return "⊕".join(f"Z{n}" for n in self.orders) or "0"


def _some_generators(G: FiniteAbelianGroup, S: frozenset) -> list[Element]:
    gens: list[Element] = []
    span = frozenset([G.zero])
    for x in sorted(S, key=lambda e: (-G.element_order(e), e)):
        if x not in span:
            gens.append(x)
            span = G.generated(gens)
            if len(span) == len(S):
                break
    return gens


def cyclic_decomposition(G: FiniteAbelianGroup, H: frozenset) -> tuple[tuple[Element, ...], tuple[int, ...]]:
    """Generators g_i of H with H = ⊕ <g_i>, orders non-increasing."""
    target = len(H)
    cands = sorted(H, key=lambda e: (-G.element_order(e), e))

    def rec(gens, span):
        if len(span) == target:
            return gens
        for g in cands:
            o = G.element_order(g)
            if gens and o > G.element_order(gens[-1]):
                continue
            cyc = G.generated([g])
            if len(cyc & span) != 1:
                continue
            new = G.generated(list(gens) + [g])
            if len(new) != len(span) * o:
                continue
            out = rec(gens + [g], new)
            if out is not None:
                return out
        return None

    gens = rec([], frozenset([G.zero]))
    assert gens is not None
    return tuple(gens), tuple(G.element_order(g) for g in gens)


class Bicharacter:
    """A Q/Z-valued pairing on a subgroup ``domain`` of ``group``.

    Either a generator matrix (``B[i][j] = b(g_i, g_j)``) or a callable.  The
    callable form need not be biadditive; ``is_biadditive`` reports it.
    """

    def __init__(self, group: FiniteAbelianGroup, domain: frozenset, *,
                 matrix=None, gens=None, func: Callable | None = None, name: str = ""):
        self.group = group
        self.domain = frozenset(domain)
        self.name = name
        if matrix is not None:
            if gens is None:
                raise InvalidParameter("a generator matrix needs its generators")
            self.gens = tuple(gens)
            self.matrix = tuple(tuple(qz(v) for v in row) for row in matrix)
            self._func = None
        elif func is not None:
            self.gens, _ = cyclic_decomposition(group, self.domain)
            self.matrix = None
            self._func = func
        else:
            raise InvalidParameter("give either a matrix or a function")

    @cached_property
    def _coords(self) -> dict:
        orders = [self.group.element_order(g) for g in self.gens]
        out = {}
        for ns in itertools.product(*[range(o) for o in orders]):
            x = self.group.zero
            for k, g in zip(ns, self.gens):
                x = self.group.add(x, self.group.scale(k, g))
            out[x] = ns
        return out

    def __call__(self, x: Element, y: Element) -> Fraction:
        if self._func is not None:
            return qz(self._func(x, y))
        cx, cy = self._coords[x], self._coords[y]
        return qz(sum(a * b * self.matrix[i][j] for i, a in enumerate(cx) for j, b in enumerate(cy) if a and b))

    def gen_matrix(self) -> list[list[Fraction]]:
        return [[self(g, h) for h in self.gens] for g in self.gens]

    def is_trivial(self) -> bool:
        return all(v == 0 for row in self.gen_matrix() for v in row) and (
            self._func is None or all(self(x, y) == 0 for x in self.domain for y in self.domain)
        )

    def is_biadditive(self) -> bool:
        G = self.group
        for g in self.gens:
            for x in self.domain:
                xg = G.add(x, g)
                for z in self.domain:
                    if self(xg, z) != qz(self(x, z) + self(g, z)):
                        return False
                    if self(z, xg) != qz(self(z, x) + self(z, g)):
                        return False
        return True

    def is_alternating(self) -> bool:
        return all(self(x, x) == 0 for x in self.domain)

    def same_as(self, other: "Bicharacter") -> bool:
        """Equal as pairings on the same domain (compared on generators of both)."""
        if self.domain != other.domain:
            return False
        gens = set(self.gens) | set(other.gens)
        return all(self(x, y) == other(x, y) for x in gens for y in gens)

    def __repr__(self):
        m = self.gen_matrix()
        return f"Bicharacter(gens={self.gens}, values={[[str(v) for v in r] for r in m]})"


def trivial_bicharacter(G: FiniteAbelianGroup, H: frozenset) -> Bicharacter:
    gens, _ = cyclic_decomposition(G, H)
    return Bicharacter(G, H, matrix=[[0] * len(gens) for _ in gens], gens=gens, name="1")


def alternating_bicharacters(G: FiniteAbelianGroup, H: frozenset) -> list[Bicharacter]:
    """Every alternating bicharacter on H: free values b(g_i, g_j) ∈ (1/gcd(d_i, d_j))Z/Z for i < j."""
    gens, orders = cyclic_decomposition(G, H)
    r = len(gens)
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    out = []
    for vals in itertools.product(*[range(math.gcd(orders[i], orders[j])) for i, j in pairs]):
        B = [[Fraction(0)] * r for _ in range(r)]
        for (i, j), v in zip(pairs, vals):
            g = math.gcd(orders[i], orders[j])
            B[i][j] = qz(Fraction(v, g))
            B[j][i] = qz(-Fraction(v, g))
        out.append(Bicharacter(G, H, matrix=B, gens=gens))
    return out


@dataclass(frozen=True, eq=False)
class ModuleCatLabel:
    """M(H, ψ): H a subgroup of ``group``, ψ a pairing on H."""

    group: FiniteAbelianGroup
    H: frozenset
    psi: Bicharacter
    name: str = ""

    @property
    def rank(self) -> int:
        return self.group.order // len(self.H)

    def same_as(self, other: "ModuleCatLabel") -> bool:
        return self.group == other.group and self.H == other.H and self.psi.same_as(other.psi)

    def describe(self) -> str:
        gens = _some_generators(self.group, self.H)
        psi = "1" if self.psi.is_trivial() else "ψ"
        return f"M(<{', '.join(map(str, gens))}>, {psi})"

    def to_json(self) -> dict:
        return {
            "group": list(self.group.orders),
            "H": [list(x) for x in sorted(self.H)],
            "psi_generators": [list(g) for g in self.psi.gens],
            "psi_values": [[str(v) for v in row] for row in self.psi.gen_matrix()],
            "name": self.name,
        }


def enumerate_module_cats(G: FiniteAbelianGroup) -> list[ModuleCatLabel]:
    G.check_size()
    return [ModuleCatLabel(G, H, psi) for H in G.subgroups() for psi in alternating_bicharacters(G, H)]


# ---------------------------------------------------------------------------
# bimodule products

@dataclass
class BimoduleProduct:
    multiplicity: int
    label: ModuleCatLabel
    composite: frozenset  # H∘H'
    intersection: frozenset  # H ∩ H' inside A2
    complement: frozenset  # (H ∩ H')^⊥ inside H∘H'
    sizes: dict = field(default_factory=dict)


def _split(x: Element, cut: int) -> tuple[Element, Element]:
    return x[:cut], x[cut:]


def pushforward(psi: Bicharacter | Callable, source: Iterable[Element], phi: Callable, target: FiniteAbelianGroup) -> tuple[frozenset, Bicharacter]:
    """Image subgroup φ(source) and the pairing ψ(u, v) read through chosen preimages."""
    pre: dict = {}
    for u in sorted(source):
        pre.setdefault(phi(u), u)
    image = frozenset(pre)
    gens, _ = cyclic_decomposition(target, image)
    B = [[psi(pre[g], pre[h]) for h in gens] for g in gens]
    return image, Bicharacter(target, image, matrix=B, gens=gens)


def pushforward_defect(psi: Bicharacter | Callable, source: Iterable[Element], phi: Callable, pushed: Bicharacter) -> int:
    """Number of preimage pairs on which ψ disagrees with the pushed pairing."""
    source = list(source)
    return sum(1 for u in source for v in source if qz(psi(u, v)) != pushed(phi(u), phi(v)))


def bimodule_tensor(L1: ModuleCatLabel, L2: ModuleCatLabel, A1: FiniteAbelianGroup,
                    A2: FiniteAbelianGroup, A3: FiniteAbelianGroup) -> BimoduleProduct:
    """M(H, ψ) ⊠_{Vec_{A2}} M(H', ψ') for H ≤ A1⊕A2, H' ≤ A2⊕A3."""
    if L1.group.orders != (A1 + A2).orders or L2.group.orders != (A2 + A3).orders:
        raise InvalidParameter("labels must live over A1⊕A2 and A2⊕A3")
    n1, n2 = len(A1.orders), len(A2.orders)
    big = A1 + A2 + A2 + A3
    psi, psi2 = L1.psi, L2.psi

    # H∘H' = {(a1, −a2, a2, a3)}
    by_a2: dict = {}
    for h2 in L2.H:
        by_a2.setdefault(h2[:n2], []).append(h2)
    comp = frozenset(h + h2 for h in L1.H for h2 in by_a2.get(A2.neg(h[n1:]), []))

    inter = frozenset(
        a for a in A2.elements()
        if (A1.zero + a) in L1.H and (a + A3.zero) in L2.H
    )
    K = [A1.zero + A2.neg(x) + x + A3.zero for x in inter]

    def form(u, v):
        return psi(u[: n1 + n2], v[: n1 + n2]) + psi2(u[n1 + n2 :], v[n1 + n2 :])

    perp = frozenset(u for u in comp if all(qz(form(k, u)) == 0 for k in K))

    def phi(u):
        return u[:n1] + u[n1 + 2 * n2 :]

    target = A1 + A3
    image, pushed = pushforward(form, perp, phi, target)
    m = Fraction(len(inter) * len(perp) * A2.order, len(L1.H) * len(L2.H))
    if m.denominator != 1 or m <= 0:
        raise NonIntegerMultiplicity(f"multiplicity {m} is not a positive integer")
    sizes = {"H": len(L1.H), "H'": len(L2.H), "H∘H'": len(comp), "H∩H'": len(inter),
             "(H∩H')^⊥": len(perp), "A2": A2.order, "H''": len(image)}
    return BimoduleProduct(int(m), ModuleCatLabel(target, image, pushed), comp, inter, perp, sizes)


# ---------------------------------------------------------------------------
# Vec_{Z2} bimodules

Z2 = FiniteAbelianGroup((2,))
Z2Z2 = FiniteAbelianGroup((2, 2))
TABLE1_NAMES = ("M2", "M1,1", "M1,2", "M4", "M2,1", "M2,2")


def nontrivial_bicharacter_z2z2() -> Bicharacter:
    """ξ on Z2⊕Z2 with ξ(a, b) = ½ for distinct nonzero a, b."""
    G = Z2Z2
    gens = ((1, 0), (0, 1))
    return Bicharacter(G, frozenset(G.elements()), matrix=[[0, Fraction(1, 2)], [Fraction(1, 2), 0]], gens=gens, name="ξ")


def z2_bimodule_labels() -> dict[str, ModuleCatLabel]:
    """The six Vec_{Z2}–Vec_{Z2} bimodules; the name's first index is the rank."""
    G = Z2Z2
    full = frozenset(G.elements())
    subs = {
        "M2": frozenset({(0, 0), (1, 1)}),
        "M1,1": full,
        "M4": frozenset({(0, 0)}),
        "M2,1": frozenset({(0, 0), (1, 0)}),
        "M2,2": frozenset({(0, 0), (0, 1)}),
    }
    out = {}
    for name in TABLE1_NAMES:
        if name == "M1,2":
            out[name] = ModuleCatLabel(G, full, nontrivial_bicharacter_z2z2(), name)
        else:
            out[name] = ModuleCatLabel(G, subs[name], trivial_bicharacter(G, subs[name]), name)
    return out


def identify(label: ModuleCatLabel, named: dict[str, ModuleCatLabel]) -> str | None:
    for name, other in named.items():
        if label.same_as(other):
            return name
    return None


def table1() -> dict[tuple[str, str], tuple[int, str | None]]:
    """(row, col) ↦ (m, name) for row ⊠_{Vec_{Z2}} col."""
    named = z2_bimodule_labels()
    out = {}
    for a in TABLE1_NAMES:
        for b in TABLE1_NAMES:
            p = bimodule_tensor(named[a], named[b], Z2, Z2, Z2)
            out[a, b] = (p.multiplicity, identify(p.label, named))
    return out


def format_table1(table=None) -> str:
    table = table or table1()
    cells = [["⊠"] + list(TABLE1_NAMES)]
    for a in TABLE1_NAMES:
        row = [a]
        for b in TABLE1_NAMES:
            m, name = table[a, b]
            row.append(f"{m if m > 1 else ''}{name or '?'}")
        cells.append(row)
    w = max(len(c) for r in cells for c in r)
    return "\n".join(" ".join(c.ljust(w) for c in r).rstrip() for r in cells)


# ---------------------------------------------------------------------------
# D(Z_N) modules as bimodules through the braiding

def _dzn_group(N: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup((N, N))


def braided_module_to_bimodule(N: int, A: Iterable[Element], rho: Bicharacter | None = None) -> ModuleCatLabel:
    """The D(Z_N)-module M(A, ρ) seen as a module over Z_N² ⊕ Z_N².

    B = {(x, y) : x + y ∈ A}.  The associator gives the cocycle
    y₂₂ (x₁+y₁)₁ / N; its skew-symmetrization
    (y₂₂ (x₁+y₁)₁ − (x₂+y₂)₁ y₁₂) / 2N is the pairing on B.
    """
    if N < 1:
        raise InvalidParameter("N must be positive")
    ZN2 = _dzn_group(N)
    A = frozenset(tuple(int(v) % N for v in a) for a in A)
    if ZN2.generated(A) != A:
        raise InvalidParameter("A must be a subgroup of Z_N²")
    if rho is not None and not rho.is_trivial():
        raise InvalidParameter("only the trivial 2-cocycle on A is supported")
    G = ZN2 + ZN2
    B = frozenset(x + y for x in ZN2.elements() for y in ZN2.elements() if ZN2.add(x, y) in A)

    def skew(g1, g2):
        x1, y1 = g1[:2], g1[2:]
        x2, y2 = g2[:2], g2[2:]
        s1, s2 = ZN2.add(x1, y1), ZN2.add(x2, y2)
        return Fraction(y2[1] * s1[0] - s2[0] * y1[1], 2 * N)

    return ModuleCatLabel(G, B, Bicharacter(G, B, func=skew, name="ψ"), f"M({sorted(A)})")


def raw_dzn_cocycle(N: int):
    """The unsymmetrized cocycle ψ((x₁,y₁),(x₂,y₂)) = y₂₂ (x₁+y₁)₁ / N."""
    ZN2 = _dzn_group(N)

    def raw(g1, g2):
        s1 = ZN2.add(g1[:2], g1[2:])
        return Fraction(g2[3] * s1[0], N)

    return raw


def dz2_bimodule_products() -> list[dict]:
    """M ⊠_{D(Z2)} M for A = 0×Z2 and A = Z2×0.

    ``quoted`` carries the two multiplicities stated for the Z2×0 case (2 in
    the summary, 1 in the step-by-step derivation); ``discrepancy`` marks it.
    """
    ZN2 = _dzn_group(2)
    cases = [("0xZ2", frozenset({(0, 0), (0, 1)})), ("Z2x0", frozenset({(0, 0), (1, 0)}))]
    out = []
    for name, A in cases:
        L = braided_module_to_bimodule(2, A)
        p = bimodule_tensor(L, L, ZN2, ZN2, ZN2)
        G = ZN2 + ZN2
        diag = frozenset(x + y for x in A for y in A)
        expected = ModuleCatLabel(G, diag, trivial_bicharacter(G, diag))
        row = {
            "A": name,
            "multiplicity": p.multiplicity,
            "result_is_M": p.label.H == L.H and p.label.psi.is_trivial() == L.psi.is_trivial()
            and all(p.label.psi(x, y) == L.psi(x, y) for x in p.label.psi.gens for y in p.label.psi.gens),
            "result_is_AxA_trivial": p.label.same_as(expected),
            "psi_trivial": p.label.psi.is_trivial(),
            "sizes": p.sizes,
        }
        if name == "Z2x0":
            row["quoted"] = {"summary": 2, "derivation": 1}
            row["discrepancy"] = True
        out.append(row)
    return out
