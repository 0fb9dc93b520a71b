"""Pointed modular categories as quadratic forms, and simplicity scans.

A pointed modular category is a metric group (G, q) with θ_a = e^{2πi q(a)}.
Condensable algebras among invertibles are isotropic subgroups; primality
is the absence of an orthogonal splitting G = H ⊕ H^⊥.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegenerateForm, InvalidParameter
from .fusion_ring import su2k_ring
from .group_modules import Element, FiniteAbelianGroup, qz
from .skeletal_cat import pointed_epsilon, validate_pointed_params

SCAN_LIMIT = 1024


@dataclass
class QuadraticForm:
    """q: G → Q/Z.  ``braiding`` is the bicharacter c with q(x) = c(x, x) when one is given."""

    group: FiniteAbelianGroup
    values: dict
    name: str = ""
    cls: str = ""
    params: tuple = ()
    braiding_values: dict | None = None
    cocycle: dict = field(default_factory=dict)

    def q(self, x: Element) -> Fraction:
        return self.values[x]

    def c(self, x: Element, y: Element) -> Fraction:
        """Polarization q(x+y) − q(x) − q(y)."""
        return qz(self.q(self.group.add(x, y)) - self.q(x) - self.q(y))

    def braiding(self, x: Element, y: Element) -> Fraction:
        if self.braiding_values is None:
            raise InvalidParameter(f"{self.name} carries no braiding bicharacter")
        return self.braiding_values[x, y]

    def twist(self, x: Element) -> complex:
        return cmath.exp(2j * math.pi * float(self.q(x)))

    def radical(self) -> list[Element]:
        elems = self.group.elements()
        return [x for x in elems if all(self.c(x, y) == 0 for y in elems)]

    def is_nondegenerate(self) -> bool:
        return len(self.radical()) == 1

    def is_quadratic(self) -> bool:
        """q(−x) = q(x) and c biadditive."""
        G = self.group
        elems = G.elements()
        if any(self.q(G.neg(x)) != self.q(x) for x in elems):
            return False
        return all(
            self.c(G.add(x, y), z) == qz(self.c(x, z) + self.c(y, z))
            for x in elems for y in elems for z in elems[: min(len(elems), 16)]
        )


def _form(G: FiniteAbelianGroup, q, name, cls, params, braiding=None, cocycle=None) -> QuadraticForm:
    elems = G.elements()
    values = {x: qz(q(x)) for x in elems}
    bvals = None
    if braiding is not None:
        bvals = {(x, y): qz(braiding(x, y)) for x in elems for y in elems}
    return QuadraticForm(G, values, name, cls, params, bvals, cocycle or {})


def build_pointed(cls: str, *params) -> QuadraticForm:
    """omega_p_k(p,k,u), omega_2_k(k,u), E_k(k) or F_k(k).

    For the cyclic classes the quoted c is the braiding and q(x) = c(x, x);
    for E_k and F_k the quoted c is the polarization of q.
    """
    params = validate_pointed_params(cls, params)
    if cls == "omega_p_k":
        p, k, u = params
        n = p**k
        G = FiniteAbelianGroup((n,))
        b = lambda x, y: Fraction(u * x[0] * y[0], n)  # noqa: E731
        eps = pointed_epsilon(p, u)
        return _form(G, lambda x: b(x, x), f"omega_{p},{k}^{eps:+d}(u={u})", cls, params, b, {"epsilon": eps})
    if cls == "omega_2_k":
        k, u = params
        n = 2**k
        G = FiniteAbelianGroup((n,))
        b = lambda x, y: Fraction(u * x[0] * y[0], 2 * n)  # noqa: E731
        half = n // 2
        cocycle = {"epsilon": u % 8, "omega": {(half, half, half): "1/2"}}
        return _form(G, lambda x: b(x, x), f"omega_2,{k}^{u % 8}(u={u})", cls, params, b, cocycle)
    (k,) = params
    n = 2**k
    G = FiniteAbelianGroup((n, n))
    if cls == "E_k":
        q = lambda x: Fraction(x[0] * x[1], n)  # noqa: E731
        b = lambda x, y: Fraction(x[0] * y[1], n)  # noqa: E731
    else:
        q = lambda x: Fraction(x[0] ** 2 + x[0] * x[1] + x[1] ** 2, n)  # noqa: E731
        b = lambda x, y: Fraction(x[0] * y[0] + x[0] * y[1] + x[1] * y[1], n)  # noqa: E731
    return _form(G, q, f"{cls[0]}_{k}", cls, params, b)


def orthogonal_sum(a: QuadraticForm, b: QuadraticForm) -> QuadraticForm:
    G = a.group + b.group
    na = len(a.group.orders)

    def q(x):
        return a.q(x[:na]) + b.q(x[na:])

    return _form(G, q, f"{a.name}⊕{b.name}", "sum", (a.name, b.name))


def _require_nondegenerate(qf: QuadraticForm):
    if not qf.is_nondegenerate():
        raise DegenerateForm(f"{qf.name}: the polarization has a nontrivial radical")


def condensable_subgroups(qf: QuadraticForm) -> list[frozenset]:
    """Nontrivial H with q|_H ≡ 0 and c|_{H×H} ≡ 0."""
    out = []
    for H in qf.group.subgroups(SCAN_LIMIT):
        if len(H) == 1:
            continue
        if all(qf.q(x) == 0 for x in H) and all(qf.c(x, y) == 0 for x in H for y in H):
            out.append(H)
    return out


def orthogonal_complement(qf: QuadraticForm, H: frozenset) -> frozenset:
    return frozenset(x for x in qf.group.elements() if all(qf.c(x, h) == 0 for h in H))


@dataclass
class PrimeResult:
    prime: bool
    factors: tuple[frozenset, frozenset] | None = None


def is_prime_pointed(qf: QuadraticForm) -> PrimeResult:
    """Prime iff no proper nontrivial H with G = H ⊕ H^⊥."""
    _require_nondegenerate(qf)
    n = qf.group.order
    for H in qf.group.subgroups(SCAN_LIMIT):
        if len(H) in (1, n):
            continue
        perp = orthogonal_complement(qf, H)
        if len(H & perp) == 1 and len(H) * len(perp) == n:
            return PrimeResult(False, (H, perp))
    return PrimeResult(True)


@dataclass
class SimpleResult:
    simple: bool
    prime: PrimeResult
    condensable: list
    witness: object = None


def is_simple(qf: QuadraticForm) -> SimpleResult:
    pr = is_prime_pointed(qf)
    cond = condensable_subgroups(qf)
    witness = None
    if cond:
        witness = ("condensable", sorted(cond[0]))
    elif not pr.prime:
        witness = ("factorization", [sorted(f) for f in pr.factors])
    return SimpleResult(pr.prime and not cond, pr, cond, witness)


def catalog_scan(ps=(3, 5), ks=(1, 2, 3), u: int = 1) -> list[dict]:
    """Simplicity of ω_{p,k}, ω_{2,k}, E_k and F_k over small parameters."""
    rows = []
    specs = [("omega_p_k", (p, k, u)) for p in ps for k in ks]
    specs += [("omega_2_k", (k, 1)) for k in ks]
    specs += [("E_k", (k,)) for k in ks] + [("F_k", (k,)) for k in ks]
    for cls, params in specs:
        qf = build_pointed(cls, *params)
        res = is_simple(qf)
        rows.append({
            "class": cls,
            "params": list(params),
            "name": qf.name,
            "prime": res.prime.prime,
            "condensable": [sorted(H) for H in res.condensable],
            "simple": res.simple,
        })
    return rows


# ---------------------------------------------------------------------------
# SU(2)_k

def su2k_twists(k: int) -> np.ndarray:
    """θ_j = exp(2πi j(j+2) / 4(k+2)) on labels 0..k."""
    return np.array([cmath.exp(2j * math.pi * j * (j + 2) / (4 * (k + 2))) for j in range(k + 1)])


def su2k_report(k: int) -> dict:
    """Normal algebra 0+k, the {0,k} splitting, and simplicity by the mod-4 rule.

    ``extra_bosons`` lists other labels with trivial twist; they are not
    considered by the mod-4 rule.
    """
    if k < 1:
        raise InvalidParameter("k must be positive")
    ring = su2k_ring(k)
    theta = su2k_twists(k)
    one = lambda z: abs(z - 1) < 1e-9  # noqa: E731
    current = ring.N[k, k, 0] == 1 and ring.N[k, k].sum() == 1
    condensable = bool(current and one(theta[k]))
    # {0, k} is modular iff its monodromy θ_k^{-2} (k⊗k = 0) is nontrivial
    splits = bool(current and not one(theta[k] ** -2))
    bosons = [j for j in range(1, k) if one(theta[j])]
    return {
        "k": k,
        "theta_k": [float(theta[k].real), float(theta[k].imag)],
        "condensable_0k": condensable,
        "splits": splits,
        "simple": (not condensable) and (not splits),
        "extra_bosons": bosons,
    }
