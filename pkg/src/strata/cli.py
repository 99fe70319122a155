"""Command-line interface: ``strata <command> ...``.

Exit codes: 0 success, 1 domain failure (invalid or empty stratum, no
certificate, rejected certificate), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .components import (
    EmptyStratum,
    RuleTable,
    default_rules,
    find_component,
    list_components,
)
from .fiber import image_dimension
from .stratum import (
    GenusTooSmall,
    MarkingSet,
    Stratum,
    StratumError,
    expected_image_dimension,
    is_empty,
    is_even_type,
    is_hyperelliptic_type,
    stratum_dimension,
)
from .sweep import SPORADIC, SweepConfig, run_sweep, strata as sweep_strata
from .witness import (
    ExceptionalCase,
    HyperellipticComponent,
    WitnessUnknown,
    brute_force_witness,
    check_certificate,
    find_witness,
)
from .witness.oracle import BudgetExceeded, NotFound

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(obj, fmt: str, text: str, out: str | None = None) -> None:
    body = json.dumps(obj, sort_keys=True, indent=2) if fmt == "json" else text
    if out:
        Path(out).write_text(body + "\n", encoding="utf-8")
    else:
        print(body)


def _rules(args) -> RuleTable:
    if getattr(args, "rules", None):
        return RuleTable.load(args.rules)
    return default_rules()


def _stratum(args) -> Stratum:
    if args.g is None or args.m is None:
        raise UsageError("-g and -m are required")
    return Stratum(args.k, args.g, tuple(args.m))


def _marking_set(args, s: Stratum) -> MarkingSet:
    A = args.A or []
    if any(not 1 <= i <= s.n for i in A) or len(set(A)) != len(A):
        raise UsageError(f"-A must list distinct indices in 1..{s.n}")
    return MarkingSet.of(A, s.n)


def _component(args, s: Stratum, rules: RuleTable):
    try:
        return find_component(s, args.component, rules)
    except (LookupError, ValueError) as exc:
        if isinstance(exc, EmptyStratum):
            raise
        raise UsageError(str(exc).strip("'\""))


# ---------------------------------------------------------------------------


def cmd_info(args) -> int:
    try:
        s = _stratum(args)
    except StratumError as exc:
        _emit({"valid": False, "error": str(exc)}, args.format, f"invalid: {exc}")
        return FAIL
    rules = _rules(args)
    rec = {
        "stratum": str(s),
        "valid": True,
        "k": s.k,
        "g": s.g,
        "mu": list(s.mu),
        "n": s.n,
        "dimension": stratum_dimension(s),
        "emptiness": is_empty(s, rules).value,
        "hyperelliptic_type": is_hyperelliptic_type(s),
    }
    if s.k == 1:
        rec["even_type"] = is_even_type(s)
    if s.g >= 2:
        rec["expected_image_dimension"] = expected_image_dimension(s)
    width = max(len(k) for k in rec)
    text = "\n".join(f"{k:<{width}}  {v}" for k, v in rec.items())
    _emit(rec, args.format, text)
    return OK


def cmd_components(args) -> int:
    s = _stratum(args)
    rules = _rules(args)
    comps = list_components(s, rules)
    labels = None if comps is None else [str(c.label) for c in comps]
    text = "unknown" if labels is None else "\n".join(labels)
    _emit({"stratum": str(s), "components": labels}, args.format, text)
    return OK


def cmd_image_dim(args) -> int:
    s = _stratum(args)
    rules = _rules(args)
    if args.component:
        comps = [_component(args, s, rules)]
    else:
        comps = list_components(s, rules)
        if comps is None:
            _emit({"stratum": str(s), "components": None}, args.format, "Unknown: components not determined")
            return FAIL
    results = []
    for c in comps:
        res = image_dimension(c, rules=rules)
        results.append({"component": str(c.label), **res.to_json()})
    if args.component:
        r = results[0]
        text = f"{r['dim'] if r['dim'] is not None else '-'}, {r['status']}"
        _emit({k: r[k] for k in ("dim", "status", "h0")}, args.format, text)
    else:
        text = "\n".join(f"{r['component']:<20} {r['dim'] if r['dim'] is not None else '-':>3}  {r['status']}" for r in results)
        _emit({"stratum": str(s), "results": results}, args.format, text)
    return OK


def cmd_witness(args) -> int:
    s = _stratum(args)
    rules = _rules(args)
    c = _component(args, s, rules)
    A = _marking_set(args, s)
    if len(A) > s.g:
        raise UsageError(f"|A| = {len(A)} exceeds the genus {s.g}")
    try:
        if args.oracle:
            cert = brute_force_witness(c, A)
        else:
            cert = find_witness(c, A, rules)
    except ExceptionalCase as exc:
        print(f"Exceptional: {exc.citation}", file=sys.stderr)
        return FAIL
    except (WitnessUnknown, HyperellipticComponent, NotFound, BudgetExceeded) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return FAIL
    body = cert.dumps()
    if args.out:
        Path(args.out).write_text(body + "\n", encoding="utf-8")
    else:
        print(body)
    return OK


def cmd_check(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read certificate: {exc}", file=sys.stderr)
        return FAIL
    verdict = check_certificate(data)
    text = "ok" if verdict.ok else "\n".join(f"{v.path}: [{v.rule}] {v.message}" for v in verdict.violations)
    _emit(verdict.to_json(), args.format, text)
    return OK if verdict.ok else FAIL


def cmd_sweep(args) -> int:
    rules = _rules(args)
    if args.sporadic:
        items = [Stratum(2, g, mu) for g, mu in SPORADIC]
        params = {"sporadic": True}
    else:
        cfg = SweepConfig(
            k=args.k,
            genera=tuple(range(args.g_min, args.g_max + 1)),
            lo=args.lo,
            hi=args.hi,
            max_n=args.max_n,
            meromorphic_only=args.meromorphic_only,
        )
        items = list(sweep_strata(cfg))
        params = {
            "k": cfg.k,
            "g": [args.g_min, args.g_max],
            "entries": [cfg.lo, cfg.hi],
            "max_n": cfg.max_n,
            "meromorphic_only": cfg.meromorphic_only,
        }
        if args.sample is not None:
            rng = random.Random(args.seed)
            items = rng.sample(items, min(args.sample, len(items)))
            params.update(sample=args.sample, seed=args.seed)
    meta = {"version": __version__, "rules_version": rules.version, "parameters": params, "oracle": args.oracle}
    report = run_sweep(items, meta, rules, args.oracle)
    if args.format == "json":
        body = json.dumps(report.to_json(), sort_keys=True, indent=2)
    elif args.format == "tsv":
        body = report.to_tsv().rstrip("\n")
    else:
        body = "\n".join(
            f"{r.stratum:<28} {r.component:<24} {r.dim:>3} {('-' if r.image_dim is None else r.image_dim):>3}  {r.image_status:<24} {r.witness}"
            + (f"  {r.oracle}" if r.oracle else "")
            for r in report.rows
        )
    if args.out:
        Path(args.out).write_text(body + "\n", encoding="utf-8")
    elif body:
        print(body)
    return FAIL if report.failures else OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rules", help="rule table JSON (default: $STRATA_RULES or the bundled table)")
    common.add_argument("--format", choices=("text", "json", "tsv"), default="text")

    stratum = argparse.ArgumentParser(add_help=False)
    stratum.add_argument("-k", type=int, choices=(1, 2), default=1)
    stratum.add_argument("-g", type=int)
    stratum.add_argument("-m", type=_ints, help="signature, e.g. 4,-1,-1 (use -m=-1,... if it starts with a minus)")

    p = argparse.ArgumentParser(prog="strata", description="Strata of abelian and quadratic differentials.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("info", parents=[common, stratum], help="dimension, emptiness and type flags")
    sp.set_defaults(func=cmd_info)
    sp = sub.add_parser("components", parents=[common, stratum], help="connected components")
    sp.set_defaults(func=cmd_components)
    sp = sub.add_parser("image-dim", parents=[common, stratum], help="dimension of the image in M_g")
    sp.add_argument("--component")
    sp.set_defaults(func=cmd_image_dim)
    sp = sub.add_parser("witness", parents=[common, stratum], help="degeneration certificate for (component, A)")
    sp.add_argument("--component")
    sp.add_argument("-A", type=_ints, help="1-based markings, e.g. 1,2")
    sp.add_argument("--oracle", action="store_true", help="use the brute-force search")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_witness)
    sp = sub.add_parser("check", parents=[common], help="check a certificate file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check)
    sp = sub.add_parser("sweep", parents=[common], help="batch report over a range of strata")
    sp.add_argument("-k", type=int, choices=(1, 2), default=1)
    sp.add_argument("--g-min", type=int, default=2)
    sp.add_argument("--g-max", type=int, default=3)
    sp.add_argument("--lo", type=int, default=-4)
    sp.add_argument("--hi", type=int, default=6)
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--meromorphic-only", action="store_true")
    sp.add_argument("--sporadic", action="store_true", help="the eight sporadic quadratic strata")
    sp.add_argument("--sample", type=int, help="random sample of this many strata")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--oracle", action="store_true", help="cross-check with the brute-force search")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except (StratumError, EmptyStratum, GenusTooSmall) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
