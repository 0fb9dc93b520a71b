"""Command-line front end: ``hopfcat <command> [options]``.

Exit status: 0 on success, 1 on a failed validation or search, 2 on bad input.
``--json`` prints one versioned report object; the text mode prints a
human-readable summary of the same data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import __version__
from .errors import HopfCatError, InputError, InputParseError
from .report import DEFAULT_TOLERANCE, TOLERANCE_ENV, ValidationReport

SCHEMA_VERSION = 1

COMMANDS = (
    "check-ring",
    "check-pentagon",
    "check-functor",
    "check-hopf-monad",
    "verify-hopf",
    "solve-hopf",
    "modules",
    "condense",
    "bimodule-product",
    "simple-check",
    "su2k",
    "catalog",
)

BRAIDED_KEYS = ("RepS3", "DoubleOfGroup(G)", "Fib", "DFib", "Ising", "SU2k(k)", "SO8GaugedS3")


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = DEFAULT_TOLERANCE
    seed: int = 0
    restarts: int = 100
    output: str = "text"
    threads: int = 1

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InputParseError("tolerance must be positive")
        if self.restarts < 1:
            raise InputParseError("restarts must be at least 1")
        if self.threads < 1:
            raise InputParseError("threads must be at least 1")


@dataclass
class Outcome:
    ok: bool
    result: dict
    text: str


def _plain(x: Any) -> Any:
    """JSON-safe copy: arrays to lists, complex to [re, im], Fractions to strings."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return [_plain(v) for v in sorted(x)]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    return x


def _load_json(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputParseError(f"cannot read {path}: {exc}") from exc


def _report_outcome(rep: ValidationReport, extra: dict | None = None, text_extra: str = "") -> Outcome:
    result = {"report": rep.as_dict()}
    if extra:
        result.update(extra)
    text = rep.summary() + (("\n" + text_extra) if text_extra else "")
    return Outcome(rep.passed, result, text)


def _table(rows: list[str], cols: list[str], M) -> str:
    M = np.asarray(M)
    w = max([len(c) for c in cols] + [len(r) for r in rows] + [len(str(v)) for v in M.ravel()] + [1])
    out = [" " * w + " " + " ".join(c.rjust(w) for c in cols)]
    for r, row in zip(rows, M):
        out.append(r.rjust(w) + " " + " ".join(str(v).rjust(w) for v in row))
    return "\n".join(out)


# ---------------------------------------------------------------------------
# commands

def cmd_check_ring(args, cfg: RunConfig) -> Outcome:
    from .fusion_ring import FusionRing, builtin_ring, quantum_dimensions, validate_fusion_ring

    ring = FusionRing.from_json(_load_json(args.file)) if args.file else builtin_ring(args.catalog)
    rep = validate_fusion_ring(ring, cfg.tolerance)
    extra = {"ring": ring.to_json()}
    if rep.passed:
        extra["quantum_dimensions"] = quantum_dimensions(ring)
    return _report_outcome(rep, extra)


def _skeletal(args):
    from .skeletal_cat import SkeletalData, builtin_skeletal

    if getattr(args, "file", None):
        return SkeletalData.from_json(_load_json(args.file))
    return builtin_skeletal(args.builtin if hasattr(args, "builtin") and args.builtin else args.cat)


def cmd_check_pentagon(args, cfg: RunConfig) -> Outcome:
    from .skeletal_cat import check_hexagon, check_pentagon

    data = _skeletal(args)
    rep = check_pentagon(data, cfg.tolerance)
    if data.braided:
        rep.merge(check_hexagon(data, cfg.tolerance))
    return _report_outcome(rep, {"name": data.name, "braided": data.braided})


def cmd_check_functor(args, cfg: RunConfig) -> Outcome:
    from .functor_monad import check_tensor_functor, forgetful_functor, identity_functor

    cat = _skeletal(args)
    make = {"identity": identity_functor, "forgetful": forgetful_functor}[args.functor]
    data = make(cat)
    rep = check_tensor_functor(data, cfg.tolerance)
    return _report_outcome(rep, {"functor": data.name})


def _parse_action(text: str | None, cat, G):
    if text in (None, "trivial"):
        return None
    if text == "swap":
        if G.order != 2:
            raise InputParseError("'swap' needs a group of order 2")
        return [tuple(range(cat.rank)), tuple(cat.ring.dual)]
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputParseError(f"--action must be 'trivial', 'swap' or a JSON list of permutations: {exc}") from exc


def cmd_check_hopf_monad(args, cfg: RunConfig) -> Outcome:
    from .functor_monad import (
        check_derived_monad,
        check_hopf_monad,
        from_group_action,
        from_hopf_algebra,
        monad_from_json,
    )
    from .groups import group_from_key
    from .hopf_algebra import builtin_hopf

    if args.file:
        data = monad_from_json(_load_json(args.file))
    elif args.hopf:
        data = from_hopf_algebra(builtin_hopf(args.hopf))
    else:
        if not args.cat:
            raise InputParseError("give --file, --hopf, or --cat with --group")
        cat = _skeletal(args)
        G = group_from_key(args.group or "Z1")
        data = from_group_action(cat, G, _parse_action(args.action, cat, G))
    rep = check_hopf_monad(data, cfg.tolerance)
    rep.merge(check_derived_monad(data, cfg.tolerance), "derived_")
    return _report_outcome(rep, {"monad": data.name, "T": data.T})


def cmd_verify_hopf(args, cfg: RunConfig) -> Outcome:
    from .hopf_algebra import (
        antipode_order,
        builtin_hopf,
        check_hopf_axioms,
        copy_keys,
        find_integral,
        hopf_from_json,
        structure_flags,
    )
    from .errors import NoIntegralFound

    H = hopf_from_json(_load_json(args.file)) if args.file else builtin_hopf(args.builtin)
    rep = check_hopf_axioms(H, cfg.tolerance)
    extra: dict = {"name": H.name}
    lines = []
    if rep.passed:
        order = antipode_order(H, tolerance=cfg.tolerance)
        extra["antipode_order"] = order
        lines.append(f"antipode order: {order}")
        extra["flags"] = structure_flags(H, cfg.tolerance)
        try:
            integ = find_integral(H, cfg.tolerance)
            extra["integral"] = {"vector": integ.vector, "counit": integ.counit_value, "semisimple": integ.semisimple}
            vec = " + ".join(f"{complex(v).real:.6g}·[{k}]" for k, v in zip(copy_keys(H.base), integ.vector) if abs(v) > 1e-12)
            lines.append(f"integral: {vec}  (ε = {complex(integ.counit_value).real:.6g})")
        except NoIntegralFound as exc:
            extra["integral"] = None
            lines.append(f"integral: none ({exc})")
    return _report_outcome(rep, extra, "\n".join(lines))


def cmd_solve_hopf(args, cfg: RunConfig) -> Outcome:
    from .hopf_algebra import SolverConfig, antipode_order, builtin_algebra, hopf_to_json, solve_hopf_structures

    A = builtin_algebra(args.algebra)
    scfg = SolverConfig(restarts=cfg.restarts, seed=cfg.seed, threads=cfg.threads)
    res = solve_hopf_structures(A, scfg)
    statuses: dict = {}
    for e in res.log:
        statuses[e["status"]] = statuses.get(e["status"], 0) + 1
    orbits = [{"antipode_order": antipode_order(H), "structure": hopf_to_json(H)} for H in res.orbits]
    result = {
        "algebra": A.name,
        "restarts": res.restarts,
        "converged": res.found,
        "orbit_count": len(res.orbits),
        "status_counts": dict(sorted(statuses.items())),
        "orbits": orbits,
        "outcome": "search outcome, not a proof of non-existence" if not res.orbits else "found",
    }
    text = f"{A.name}: {res.summary}\nstatus counts: {result['status_counts']}"
    for i, o in enumerate(orbits):
        text += f"\n  orbit {i}: antipode order {o['antipode_order']}"
    # a search that finds nothing is a valid outcome, not a failure
    return Outcome(True, result, text)


def cmd_modules(args, cfg: RunConfig) -> Outcome:
    from .hopf_algebra import builtin_hopf
    from .fusion_ring import format_object
    from .module_theory import dimension_report, irreducible_modules, module_fusion_ring, regular_decomposition

    H = builtin_hopf(args.builtin)
    irreps = irreducible_modules(H, seed=cfg.seed)
    ring = module_fusion_ring(H, irreps)
    reg = regular_decomposition(H, irreps)
    dims = dimension_report(H, irreps)
    result = {
        "hopf": H.name,
        "modules": [{"name": M.name, "object": format_object(H.ambient.ring, M.obj), "qdim": M.qdim()} for M in irreps],
        "fusion_ring": ring.to_json(),
        "regular_decomposition": reg,
        "dimensions": dims,
    }
    lines = [f"{H.name}: {len(irreps)} irreducible modules"]
    for M in irreps:
        lines.append(f"  {M.name}: underlying {format_object(H.ambient.ring, M.obj)}, dim {M.qdim():.6g}")

    for a in range(ring.rank):
        for b in range(ring.rank):
            lines.append(f"  {ring.labels[a]} ⊗ {ring.labels[b]} = {format_object(ring, ring.N[a, b])}")
    lines.append(f"regular module = {format_object(ring, reg)}")
    lines.append(f"Σ d² = {dims['sum_squares']:.6g}, dim C · d(H) = {dims['dim_C'] * dims['dim_H']:.6g}")
    return Outcome(bool(dims["consistent"]), result, "\n".join(lines))


def cmd_condense(args, cfg: RunConfig) -> Outcome:
    from .condensation import (
        braided_input,
        comonad_object_map,
        condense,
        dhaag_given,
        result_to_json,
        verify_given_condensation,
    )
    from .fusion_ring import format_object

    if args.given:
        head = args.given.replace(" ", "")
        if not head.startswith("DHaag(") or not head.endswith(")"):
            raise InputParseError("--given takes DHaag(p)")
        data = dhaag_given(int(head[6:-1]))
        rep = verify_given_condensation(data, max(cfg.tolerance, 1e-6))
        cr = data.condensed
        T = data.D @ data.E
        lines = [f"T({cr.labels[c]}) = {format_object(cr, T[:, c])}" for c in range(cr.rank)]
        return _report_outcome(rep, {"given": args.given, "T": T, "labels": list(cr.labels)}, "\n".join(lines))
    if not args.catalog or not args.algebra:
        raise InputParseError("condense needs --catalog and --algebra (or --given)")
    B = braided_input(args.catalog)
    res = condense(B, args.algebra)
    ring, cring = B.ring, res.condensed
    comonad = comonad_object_map(res)
    result = result_to_json(res)
    result["comonad"] = {
        "W": None if comonad.W is None else comonad.W,
        "blocks": [{"W": w, "objects": objs} for w, objs in comonad.blocks],
    }
    lines = [f"{B.name} with A = {format_object(ring, res.algebra)}: condensed rank {cring.rank}"]
    lines.append("D (rows: condensed simples, columns: input simples)")
    lines.append(_table(list(cring.labels), list(ring.labels), res.D))
    lines.append("E")
    lines.append(_table(list(ring.labels), list(cring.labels), res.E))
    for c in range(cring.rank):
        conf = "?" if res.confined is None else ("confined" if res.confined[c] else "deconfined")
        lines.append(f"  E({cring.labels[c]}) = {format_object(ring, res.D[c])}  [{conf}]")
    for a in range(cring.rank):
        for b in range(a, cring.rank):
            lines.append(f"  {cring.labels[a]} ⊗ {cring.labels[b]} = {format_object(cring, cring.N[a, b])}")
    for w, objs in comonad.blocks:
        lines.append(f"  T = ({format_object(cring, w)})⊗− on {{{', '.join(objs)}}}")
    return Outcome(True, result, "\n".join(lines))


def cmd_bimodule_product(args, cfg: RunConfig) -> Outcome:
    from .group_modules import TABLE1_NAMES, dz2_bimodule_products, format_table1, table1

    tab = table1()
    dz2 = dz2_bimodule_products()
    result = {
        "table1": [[{"row": a, "col": b, "multiplicity": tab[a, b][0], "label": tab[a, b][1]} for b in TABLE1_NAMES] for a in TABLE1_NAMES],
        "dz2_products": dz2,
    }
    lines = ["Vec_Z2 bimodules, row ⊠ column:", format_table1(tab), "", "D(Z2) modules as bimodules, M ⊠ M:"]
    for row in dz2:
        what = "M" if row["result_is_M"] else ("M((Z2×0, Z2×0), 1)" if row["result_is_AxA_trivial"] else "?")
        line = f"  A = {row['A']}: {row['multiplicity']}·{what}"
        if row.get("discrepancy"):
            q = row["quoted"]
            line += f"  (quoted multiplicities differ: {q['summary']} vs {q['derivation']}; computed {row['multiplicity']})"
        lines.append(line)
    return Outcome(True, result, "\n".join(lines))


def cmd_simple_check(args, cfg: RunConfig) -> Outcome:
    from .pointed_modular import build_pointed, catalog_scan, is_simple

    if args.scan or not args.cls:
        rows = catalog_scan()
        lines = [f"{r['name']:<22} prime={r['prime']!s:<5} simple={r['simple']!s:<5} condensable={r['condensable'][:1]}" for r in rows]
        return Outcome(True, {"scan": rows}, "\n".join(lines))
    qf = build_pointed(args.cls, *args.params)
    res = is_simple(qf)
    result = {
        "name": qf.name,
        "prime": res.prime.prime,
        "factors": None if res.prime.factors is None else [sorted(f) for f in res.prime.factors],
        "condensable": [sorted(H) for H in res.condensable],
        "simple": res.simple,
        "witness": res.witness,
    }
    text = f"{qf.name}: prime={res.prime.prime} simple={res.simple} witness={res.witness}"
    return Outcome(True, result, text)


def cmd_su2k(args, cfg: RunConfig) -> Outcome:
    from .pointed_modular import su2k_report

    rows = [su2k_report(k) for k in args.k]
    lines = [
        f"k={r['k']}: condensable 0+k={r['condensable_0k']} splits={r['splits']} simple={r['simple']}"
        + (f" other bosons={r['extra_bosons']}" if r["extra_bosons"] else "")
        for r in rows
    ]
    return Outcome(True, {"reports": rows}, "\n".join(lines))


def cmd_catalog(args, cfg: RunConfig) -> Outcome:
    from .fusion_ring import CATALOG_KEYS
    from .hopf_algebra import ALGEBRA_KEYS, HOPF_KEYS
    from .skeletal_cat import POINTED_CLASSES, SKELETAL_KEYS

    result = {
        "rings": list(CATALOG_KEYS),
        "skeletal": list(SKELETAL_KEYS),
        "hopf": list(HOPF_KEYS),
        "algebras": list(ALGEBRA_KEYS),
        "braided": list(BRAIDED_KEYS),
        "pointed_classes": list(POINTED_CLASSES),
    }
    text = "\n".join(f"{k}: {', '.join(v)}" for k, v in result.items())
    return Outcome(True, result, text)


HANDLERS: dict[str, Callable] = {
    "check-ring": cmd_check_ring,
    "check-pentagon": cmd_check_pentagon,
    "check-functor": cmd_check_functor,
    "check-hopf-monad": cmd_check_hopf_monad,
    "verify-hopf": cmd_verify_hopf,
    "solve-hopf": cmd_solve_hopf,
    "modules": cmd_modules,
    "condense": cmd_condense,
    "bimodule-product": cmd_bimodule_product,
    "simple-check": cmd_simple_check,
    "su2k": cmd_su2k,
    "catalog": cmd_catalog,
}


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--tolerance", type=float, default=None, help=f"residual tolerance (env {TOLERANCE_ENV})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int, default=100)
    common.add_argument("--threads", type=int, default=1)

    p = _Parser(prog="hopfcat", description="Skeletal Hopf monads, Hopf algebras and condensation.")
    p.add_argument("--version", action="version", version=f"hopfcat {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check-ring", parents=[common], help="validate a fusion ring")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--catalog")
    g.add_argument("--file")

    s = sub.add_parser("check-pentagon", parents=[common], help="pentagon (and hexagon) residuals")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--builtin")
    g.add_argument("--file")

    s = sub.add_parser("check-functor", parents=[common], help="tensor functor hexagon and unit checks")
    s.add_argument("--cat", required=True)
    s.add_argument("--functor", choices=("identity", "forgetful"), default="identity")

    s = sub.add_parser("check-hopf-monad", parents=[common], help="heptagon and triangle checks")
    s.add_argument("--cat")
    s.add_argument("--group")
    s.add_argument("--action")
    s.add_argument("--hopf")
    s.add_argument("--file")

    s = sub.add_parser("verify-hopf", parents=[common], help="Hopf axioms, antipode order, integral")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--builtin")
    g.add_argument("--file")

    s = sub.add_parser("solve-hopf", parents=[common], help="multi-start search for Hopf structures")
    s.add_argument("--algebra", required=True)

    s = sub.add_parser("modules", parents=[common], help="irreducible modules and their fusion")
    s.add_argument("--builtin", required=True)

    s = sub.add_parser("condense", parents=[common], help="condense a commutative algebra")
    s.add_argument("--catalog")
    s.add_argument("--algebra")
    s.add_argument("--given", help="check stated data, e.g. DHaag(3)")

    sub.add_parser("bimodule-product", parents=[common], help="Vec_Z2 bimodule table and D(Z2) products")

    s = sub.add_parser("simple-check", parents=[common], help="simplicity of pointed modular categories")
    s.add_argument("--class", dest="cls", choices=("omega_p_k", "omega_2_k", "E_k", "F_k"))
    s.add_argument("--params", type=int, nargs="*", default=[])
    s.add_argument("--scan", action="store_true")

    s = sub.add_parser("su2k", parents=[common], help="SU(2)_k normal algebra and splitting")
    s.add_argument("--k", type=int, nargs="+", required=True)

    sub.add_parser("catalog", parents=[common], help="list builtin identifiers")
    return p


def _config(args) -> RunConfig:
    tol = args.tolerance
    if tol is None:
        raw = os.environ.get(TOLERANCE_ENV)
        try:
            tol = float(raw) if raw is not None else DEFAULT_TOLERANCE
        except ValueError as exc:
            raise InputParseError(f"{TOLERANCE_ENV}={raw!r} is not a number") from exc
    return RunConfig(tol, args.seed, args.restarts, "json" if args.json else "text", args.threads)


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    command = next((a for a in argv if a in COMMANDS), None)
    envelope: dict = {"schema_version": SCHEMA_VERSION, "command": command}
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        envelope["config"] = {"tolerance": cfg.tolerance, "seed": cfg.seed, "restarts": cfg.restarts}
        outcome = HANDLERS[args.command](args, cfg)
        status, code = ("pass" if outcome.ok else "fail"), (0 if outcome.ok else 1)
        envelope.update(status=status, error=None, result=_plain(outcome.result))
        text = outcome.text
    except InputError as exc:
        envelope.update(status="error", error={"code": exc.code, "message": str(exc)}, result=None)
        code, text = 2, f"input error [{exc.code}]: {exc}"
    except HopfCatError as exc:
        envelope.update(status="error", error={"code": exc.code, "message": str(exc)}, result=None)
        code, text = 1, f"error [{exc.code}]: {exc}"
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    if want_json:
        out.write(json.dumps(envelope, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
