"""F/R-symbol data for multiplicity-free fusion categories and its coherence checks.

Convention: ``F(a,b,c,d)[e, f]`` is the coefficient of the tree ``(a (b c)_f)_d``
in the expansion of ``((a b)_e c)_d``.  Rows are indexed by the left internal
label ``e``, columns by the right internal label ``f``, both in label order.
``R(a,b,c)`` is the eigenvalue of the braiding ``a⊗b → b⊗a`` on channel ``c``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from .errors import (
    InputParseError,
    InvalidParameter,
    MissingFEntry,
    MissingREntry,
    MultiplicityNotSupported,
    UnknownKey,
)
from .fusion_ring import (
    FusionRing,
    _split_key,
    fib_ring,
    group_ring,
    make_ring,
    quantum_dimensions,
)
from .groups import abelian_group, group_from_key
from .report import ValidationReport, default_tolerance

PHI = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class FBlock:
    left: tuple[int, ...]
    right: tuple[int, ...]
    matrix: np.ndarray


def f_labels(ring: FusionRing, a: int, b: int, c: int, d: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Admissible internal labels (left e, right f) for the 4-leg tree a,b,c → d."""
    N = ring.N
    r = range(ring.rank)
    left = tuple(e for e in r if N[a, b, e] and N[e, c, d])
    right = tuple(f for f in r if N[b, c, f] and N[a, f, d])
    return left, right


@dataclass(frozen=True, eq=False)
class SkeletalData:
    ring: FusionRing
    F: Mapping[tuple[int, int, int, int], FBlock]
    R: Mapping[tuple[int, int, int], complex] | None = None
    theta: np.ndarray | None = None
    name: str = ""
    _fd: dict = field(default=None, repr=False, compare=False)
    _fi: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.ring.is_multiplicity_free:
            raise MultiplicityNotSupported(
                f"ring {self.ring.name or ''} has fusion multiplicities; F/R data requires multiplicity-free"
            )
        fd, fi = {}, {}
        for (a, b, c, d), blk in self.F.items():
            m = np.asarray(blk.matrix, dtype=complex)
            if m.shape != (len(blk.left), len(blk.right)) or m.shape[0] != m.shape[1]:
                raise InputParseError(f"F block {(a, b, c, d)} has shape {m.shape}")
            inv = np.linalg.inv(m)
            for i, e in enumerate(blk.left):
                for j, f in enumerate(blk.right):
                    fd[(a, b, c, d, e, f)] = m[i, j]
                    fi[(a, b, c, d, f, e)] = inv[j, i]
        object.__setattr__(self, "_fd", fd)
        object.__setattr__(self, "_fi", fi)

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def braided(self) -> bool:
        return self.R is not None

    def _admissible(self, a, b, c, d, e, f) -> bool:
        N = self.ring.N
        return bool(N[a, b, e] and N[e, c, d] and N[b, c, f] and N[a, f, d])

    def fcoef(self, a, b, c, d, e, f) -> complex:
        try:
            return self._fd[(a, b, c, d, e, f)]
        except KeyError:
            if self._admissible(a, b, c, d, e, f):
                raise MissingFEntry(f"F^{{{self._names(a, b, c)}}}_{self.ring.labels[d]} missing") from None
            return 0.0

    def fincoef(self, a, b, c, d, f, e) -> complex:
        """Coefficient of ((a b)_e c)_d in (a (b c)_f)_d."""
        try:
            return self._fi[(a, b, c, d, f, e)]
        except KeyError:
            if self._admissible(a, b, c, d, e, f):
                raise MissingFEntry(f"F^{{{self._names(a, b, c)}}}_{self.ring.labels[d]} missing") from None
            return 0.0

    def rcoef(self, a, b, c) -> complex:
        if self.R is None:
            raise MissingREntry("category carries no braiding")
        try:
            return self.R[(a, b, c)]
        except KeyError:
            if self.ring.N[a, b, c]:
                raise MissingREntry(f"R^{{{self._names(a, b)}}}_{self.ring.labels[c]} missing") from None
            return 0.0

    def fblock(self, a, b, c, d) -> FBlock:
        try:
            return self.F[(a, b, c, d)]
        except KeyError:
            left, right = f_labels(self.ring, a, b, c, d)
            if left:
                raise MissingFEntry(f"F^{{{self._names(a, b, c)}}}_{self.ring.labels[d]} missing") from None
            return FBlock((), (), np.zeros((0, 0), dtype=complex))

    def _names(self, *xs) -> str:
        return ",".join(self.ring.labels[x] for x in xs)

    @cached_property
    def dims(self) -> np.ndarray:
        return quantum_dimensions(self.ring)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        L = self.ring.labels
        out = {"ring": self.ring.to_json(), "name": self.name, "F": [], "R": None, "theta": None}
        for key in sorted(self.F):
            blk = self.F[key]
            out["F"].append(
                {
                    "key": ",".join(L[x] for x in key),
                    "rows": [L[e] for e in blk.left],
                    "cols": [L[f] for f in blk.right],
                    "matrix": [[_cjson(z) for z in row] for row in np.asarray(blk.matrix)],
                }
            )
        if self.R is not None:
            out["R"] = [{"key": ",".join(L[x] for x in k), "value": _cjson(self.R[k])} for k in sorted(self.R)]
        if self.theta is not None:
            out["theta"] = [_cjson(t) for t in self.theta]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "SkeletalData":
        try:
            ring = FusionRing.from_json(obj["ring"])
            F = {}
            for ent in obj["F"]:
                key = tuple(ring.index(s) for s in ent["key"].split(","))
                left = tuple(ring.index(s) for s in ent["rows"])
                right = tuple(ring.index(s) for s in ent["cols"])
                mat = np.array([[_cparse(z) for z in row] for row in ent["matrix"]], dtype=complex)
                F[key] = FBlock(left, right, mat.reshape(len(left), len(right)))
            R = None
            if obj.get("R") is not None:
                R = {tuple(ring.index(s) for s in ent["key"].split(",")): _cparse(ent["value"]) for ent in obj["R"]}
            theta = None
            if obj.get("theta") is not None:
                theta = np.array([_cparse(t) for t in obj["theta"]], dtype=complex)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputParseError(f"malformed skeletal JSON: {exc}") from exc
        return cls(ring, F, R, theta, obj.get("name", ""))


def _cjson(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _cparse(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex entry {v!r} must be [re, im]")
        return complex(float(v[0]), float(v[1]))
    return complex(v)


# ---------------------------------------------------------------------------
# coherence checks

def _rep(name: str, tolerance: float | None) -> ValidationReport:
    return ValidationReport(name, default_tolerance() if tolerance is None else tolerance)


def check_pentagon(data: SkeletalData, tolerance: float | None = None) -> ValidationReport:
    """F(f,c,d,e)[g,l] F(a,b,l,e)[f,k] = Σ_h F(a,b,c,g)[f,h] F(a,h,d,e)[g,k] F(b,c,d,k)[h,l]."""
    rep = _rep(f"pentagon {data.name}".strip(), tolerance)
    ring = data.ring
    n = ring.rank
    out = [[ring.outcomes(a, b) for b in range(n)] for a in range(n)]
    F = data.fcoef
    L = ring.labels
    u = ring.unit
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    for f in out[a][b]:
                        for g in out[f][c]:
                            for e in out[g][d]:
                                for l in out[c][d]:
                                    for k in out[b][l]:
                                        if not ring.N[a, k, e]:
                                            continue
                                        lhs = F(f, c, d, e, g, l) * F(a, b, l, e, f, k)
                                        rhs = 0j
                                        for h in out[b][c]:
                                            if ring.N[a, h, g] and ring.N[h, d, k]:
                                                rhs += F(a, b, c, g, f, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, l)
                                        rep.record(
                                            "pentagon",
                                            tuple(L[x] for x in (a, b, c, d, e, f, g, k, l)),
                                            abs(lhs - rhs),
                                        )
    # the diagram engine assumes F is normalized on unit legs
    for (a, b, c, d), blk in data.F.items():
        if u in (a, b, c):
            m = np.asarray(blk.matrix)
            rep.record("unit_normalization", tuple(L[x] for x in (a, b, c, d)), float(np.max(np.abs(m - np.eye(len(m))), initial=0.0)))
    for (a, b, c, d), blk in data.F.items():
        m = np.asarray(blk.matrix)
        rep.record("unitarity", tuple(L[x] for x in (a, b, c, d)), float(np.max(np.abs(m @ m.conj().T - np.eye(len(m))), initial=0.0)))
    return rep


def check_hexagon(data: SkeletalData, tolerance: float | None = None) -> ValidationReport:
    """Both hexagons, for c_{c, a⊗b} and its inverse, over all admissible (a,b,c,d,e,g)."""
    if data.R is None:
        raise MissingREntry("hexagon check needs R-symbols")
    rep = _rep(f"hexagon {data.name}".strip(), tolerance)
    ring = data.ring
    n = ring.rank
    F, R = data.fcoef, data.rcoef
    L = ring.labels
    out = [[ring.outcomes(a, b) for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for e in out[c][a]:
                    for d in out[e][b]:
                        for g in out[c][b]:
                            if not ring.N[a, g, d]:
                                continue
                            where = tuple(L[x] for x in (a, b, c, d, e, g))
                            lhs = R(c, a, e) * F(a, c, b, d, e, g) * R(c, b, g)
                            rhs = sum(
                                F(c, a, b, d, e, f) * R(c, f, d) * F(a, b, c, d, f, g)
                                for f in out[a][b]
                                if ring.N[c, f, d]
                            )
                            rep.record("hexagon", where, abs(lhs - rhs))
                            lhs = F(a, c, b, d, e, g) / (R(a, c, e) * R(b, c, g))
                            rhs = sum(
                                F(c, a, b, d, e, f) / R(f, c, d) * F(a, b, c, d, f, g)
                                for f in out[a][b]
                                if ring.N[c, f, d]
                            )
                            rep.record("hexagon_inverse", where, abs(lhs - rhs))
    return rep


def twists_from_R(data: SkeletalData) -> np.ndarray:
    """θ_a = Σ_c (d_c/d_a) R^{aa}_c."""
    if data.R is None:
        raise MissingREntry("twists need R-symbols")
    d = data.dims
    ring = data.ring
    return np.array(
        [sum(d[c] / d[a] * data.rcoef(a, a, c) for c in ring.outcomes(a, a)) for a in range(ring.rank)],
        dtype=complex,
    )


def check_twists(data: SkeletalData, tolerance: float | None = None) -> ValidationReport:
    rep = _rep(f"twists {data.name}".strip(), tolerance)
    if data.theta is None or data.R is None:
        rep.notes.append("no stored twists or no braiding; nothing to compare")
        return rep
    th = twists_from_R(data)
    for a, (x, y) in enumerate(zip(th, data.theta)):
        rep.record("twist", (data.ring.labels[a],), abs(x - y))
    return rep


# ---------------------------------------------------------------------------
# builtins

def _trivial_F(ring: FusionRing, phase=None) -> dict:
    """F for a pointed ring: every block is 1×1; ``phase(a,b,c)`` gives its value."""
    F = {}
    n = ring.rank
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    left, right = f_labels(ring, a, b, c, d)
                    if not left:
                        continue
                    if phase is None:
                        m = np.eye(len(left), dtype=complex)
                    else:
                        m = np.array([[phase(a, b, c)]], dtype=complex)
                    F[(a, b, c, d)] = FBlock(left, right, m)
    return F


def vecg_trivial(key: str) -> SkeletalData:
    G = group_from_key(key)
    ring = group_ring(G)
    R = None
    if G.is_abelian:
        R = {(a, b, c): 1.0 + 0j for a in range(ring.rank) for b in range(ring.rank) for c in ring.outcomes(a, b)}
    theta = np.ones(ring.rank, dtype=complex) if R is not None else None
    return SkeletalData(ring, _trivial_F(ring), R, theta, f"VecG_trivial({G.name})")


def fib_skeletal() -> SkeletalData:
    ring = fib_ring()
    one, t = 0, 1
    F = _trivial_F(ring)
    s = PHI ** -0.5
    F[(t, t, t, t)] = FBlock((one, t), (one, t), np.array([[1 / PHI, s], [s, -1 / PHI]], dtype=complex))
    R = {
        (one, one, one): 1.0 + 0j,
        (one, t, t): 1.0 + 0j,
        (t, one, t): 1.0 + 0j,
        (t, t, one): cmath.exp(-4j * math.pi / 5),
        (t, t, t): cmath.exp(3j * math.pi / 5),
    }
    theta = np.array([1.0, cmath.exp(4j * math.pi / 5)], dtype=complex)
    return SkeletalData(ring, F, R, theta, "Fib")


def dzn_skeletal(N: int) -> SkeletalData:
    """D(Z_N) as Vec(Z_N²) with c_{a,b} = e^{2πi a₂ b₁ / N}; label index a₁·N + a₂."""
    if N < 1:
        raise InvalidParameter("DZn needs N ≥ 1")
    G = abelian_group((N, N))
    base = group_ring(G)
    if N == 2:
        labels = ("1", "e", "m", "psi")
    else:
        labels = ("1",) + tuple(f"({a1},{a2})" for a1 in range(N) for a2 in range(N))[1:]
    ring = FusionRing(labels, 0, base.N, base.dual, f"D(Z{N})")
    R = {}
    for x in range(N * N):
        for y in range(N * N):
            a2, b1 = x % N, y // N
            z = G.mul(x, y)
            R[(x, y, z)] = cmath.exp(2j * math.pi * a2 * b1 / N)
    theta = np.array([cmath.exp(2j * math.pi * (x // N) * (x % N) / N) for x in range(N * N)])
    return SkeletalData(ring, _trivial_F(ring), R, theta, f"DZn({N})")


POINTED_CLASSES = ("omega_p_k", "omega_2_k", "E_k", "F_k")


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def validate_pointed_params(cls: str, params: tuple[int, ...]) -> tuple[int, ...]:
    """Check class parameters; returns them normalized (ints)."""
    try:
        params = tuple(int(x) for x in params)
    except (TypeError, ValueError) as exc:
        raise InvalidParameter(f"{cls}: parameters must be integers") from exc
    if cls == "omega_p_k":
        if len(params) != 3:
            raise InvalidParameter("omega_p_k takes (p, k, u)")
        p, k, u = params
        if p < 3 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise InvalidParameter(f"omega_p_k needs an odd prime p, got {p}")
        if k < 1 or u < 1 or math.gcd(p, u) != 1:
            raise InvalidParameter("omega_p_k needs k ≥ 1, u ≥ 1 and (p, u) = 1")
    elif cls == "omega_2_k":
        if len(params) != 2:
            raise InvalidParameter("omega_2_k takes (k, u)")
        k, u = params
        if k < 1 or u < 1 or u % 2 == 0:
            raise InvalidParameter("omega_2_k needs k ≥ 1 and odd u ≥ 1")
        if u % 8 in (3, 5) and k < 2:
            raise InvalidParameter("omega_2_k with u ≡ ±5 mod 8 needs k ≥ 2")
    elif cls in ("E_k", "F_k"):
        if len(params) != 1 or params[0] < 1:
            raise InvalidParameter(f"{cls} takes one parameter k ≥ 1")
    else:
        raise UnknownKey(f"unknown pointed class {cls!r}; known: {', '.join(POINTED_CLASSES)}")
    if max(params) > 10_000:
        raise InvalidParameter("parameters too large")
    return params


def pointed_epsilon(p: int, u: int) -> int:
    """The sign ε = (2u / p) labelling ω_{p,k}^ε."""
    return _legendre(2 * u, p)


def pointed_skeletal(cls: str, *params) -> SkeletalData:
    params = validate_pointed_params(cls, params)
    if cls == "omega_p_k":
        p, k, u = params
        n = p**k
        G = abelian_group((n,))
        ring = group_ring(G)
        R = {(x, y, (x + y) % n): cmath.exp(2j * math.pi * u * x * y / n) for x in range(n) for y in range(n)}
        F = _trivial_F(ring)
        name = f"Pointed(omega_p_k,{p},{k},{u})"
    elif cls == "omega_2_k":
        k, u = params
        n = 2**k
        G = abelian_group((n,))
        ring = group_ring(G)
        # F^{xyz} = e^{πi u x (y + z − [y+z]) / n}, R^{xy} = e^{2πi u x y / 2n} with 0 ≤ x, y < n
        R = {(x, y, (x + y) % n): cmath.exp(1j * math.pi * u * x * y / n) for x in range(n) for y in range(n)}
        F = _trivial_F(ring, lambda x, y, z: cmath.exp(1j * math.pi * u * x * (y + z - (y + z) % n) / n))
        name = f"Pointed(omega_2_k,{k},{u})"
    else:
        (k,) = params
        n = 2**k
        G = abelian_group((n, n))
        ring = group_ring(G)

        def beta(x, y):
            x1, x2 = divmod(x, n)
            y1, y2 = divmod(y, n)
            if cls == "E_k":
                return x1 * y2 / n
            return (x1 * y1 + x1 * y2 + x2 * y2) / n

        R = {(x, y, G.mul(x, y)): cmath.exp(2j * math.pi * beta(x, y)) for x in range(n * n) for y in range(n * n)}
        F = _trivial_F(ring)
        name = f"Pointed({cls},{k})"
    data = SkeletalData(ring, F, R, None, name)
    theta = np.array([data.rcoef(x, x, ring.outcomes(x, x)[0]) for x in range(ring.rank)])
    return SkeletalData(ring, F, R, theta, name)


SKELETAL_KEYS = ("VecG_trivial(G)", "Fib", "DZn(N)", "Pointed(class,params...)")


def builtin_skeletal(name: str) -> SkeletalData:
    head, args = _split_key(name)
    if head == "VecG_trivial":
        if not args:
            raise InvalidParameter("VecG_trivial needs a group")
        return vecg_trivial("x".join(args))
    if head == "Fib":
        return fib_skeletal()
    if head == "DZn":
        if len(args) != 1:
            raise InvalidParameter("DZn takes one integer")
        try:
            return dzn_skeletal(int(args[0]))
        except ValueError as exc:
            raise InvalidParameter(f"DZn: {args[0]!r} is not an integer") from exc
    if head == "Pointed":
        if not args:
            raise InvalidParameter("Pointed needs a class name")
        cls = re.sub(r"[\^ε].*$", "", args[0])
        return pointed_skeletal(cls, *args[1:])
    raise UnknownKey(f"unknown skeletal builtin {name!r}; known: {', '.join(SKELETAL_KEYS)}")


# ---------------------------------------------------------------------------
# hom bases and morphism matrices

@dataclass(frozen=True)
class HomBasis:
    """Left-nested labelings of the tree for ``word`` with root ``target``.

    Each element is (leaf copies, internal labels).  Slots of the word are
    objects given by their copies' simple labels.
    """

    word: tuple[tuple[int, ...], ...]
    target: int
    basis: tuple

    @property
    def size(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class MorphismMatrix:
    source: HomBasis
    dest: HomBasis
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.shape != (self.dest.size, self.source.size):
            raise InputParseError("entries shape does not match bases")


def hom_basis(data: SkeletalData, word, target) -> HomBasis:
    from .diagram import as_word, tree_basis

    ring = data.ring
    w = as_word(ring, word)
    t = ring.index(target)
    tb = tree_basis(ring, w)
    return HomBasis(w, t, tuple(s for s in tb.states if tb.root(s) == t))


def evaluate_diagram(data: SkeletalData, word, program, target=None):
    """Run ``program`` on ``word``; returns a MorphismMatrix for ``target`` or the full operator."""
    from .diagram import as_word, run_program

    w = as_word(data.ring, word)
    op = run_program(data, w, program)
    if target is None:
        return op
    t = data.ring.index(target)
    src, dst = op.src_basis, op.dst_basis
    rows = [i for i, s in enumerate(dst.states) if dst.root(s) == t]
    cols = [j for j, s in enumerate(src.states) if src.root(s) == t]
    m = op.dense()[np.ix_(rows, cols)]
    return MorphismMatrix(
        HomBasis(src.word, t, tuple(src.states[j] for j in cols)),
        HomBasis(dst.word, t, tuple(dst.states[i] for i in rows)),
        m,
    )


__all__ = [
    "FBlock",
    "SkeletalData",
    "f_labels",
    "check_pentagon",
    "check_hexagon",
    "check_twists",
    "twists_from_R",
    "builtin_skeletal",
    "pointed_skeletal",
    "validate_pointed_params",
    "pointed_epsilon",
    "fib_skeletal",
    "dzn_skeletal",
    "vecg_trivial",
    "HomBasis",
    "MorphismMatrix",
    "hom_basis",
    "evaluate_diagram",
    "PHI",
]
