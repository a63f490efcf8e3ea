"""Command-line front end.

Commands: analyze (dichotomy classification), invariants (per-level mu/lambda
table), boundary (congruence with a boundary symbol), eigensymbol (dump the
cached plus-eigensymbol), selftest (randomized property battery).

Exit codes: 0 success, 2 inconclusive verdict, 3 input error, 4 precision
error.  All exact numbers in reports are integers or decimal strings; no
floating point appears anywhere.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import cache
from .boundary import boundary_congruence
from .classify import DichotomyReport, MTRequest, classify
from .curves import EllipticCurve
from .elements import mazur_tate
from .errors import InputError, MazurTateError
from .hecke import normalize
from .padics import is_prime, valuation
from .suites import run_all_suites

CSV_ANALYZE_COLUMNS = [
    "label", "p", "mode", "n", "mu_coh", "mu", "lambda",
    "is_maximal", "integral", "stab_mu", "stab_lambda", "verdict",
]
CSV_INVARIANTS_COLUMNS = ["label", "p", "mode", "n", "mu_coh", "mu", "lambda"]


def _fixture_path(name: str) -> Path | None:
    base = resources.files("mazurtate").joinpath("fixtures")
    candidate = base.joinpath(f"{name}.json")
    return Path(str(candidate)) if candidate.is_file() else None


def load_curve(args) -> EllipticCurve:
    if args.curve and args.coeffs:
        raise InputError("--curve and --coeffs are mutually exclusive")
    if args.curve:
        path = Path(args.curve)
        if not path.is_file():
            fixture = _fixture_path(args.curve)
            if fixture is None:
                raise InputError(f"no such curve file or fixture: {args.curve}")
            path = fixture
        curve = EllipticCurve.from_json_file(path)
    elif args.coeffs:
        try:
            a1, a2, a3, a4, a6 = (int(x) for x in args.coeffs.split(","))
        except ValueError as exc:
            raise InputError(f"--coeffs expects a1,a2,a3,a4,a6: {exc}") from exc
        if args.conductor is None:
            raise InputError("--coeffs requires --conductor")
        lratio = Fraction(args.lratio) if args.lratio else None
        curve = EllipticCurve(a1, a2, a3, a4, a6, conductor=args.conductor,
                              label=args.label, lratio=lratio,
                              lratio_source="user-supplied" if lratio is not None else None)
    else:
        raise InputError("provide --curve PATH or --coeffs a1,a2,a3,a4,a6 --conductor N")
    if getattr(args, "lratio", None) and args.curve:
        curve.lratio = Fraction(args.lratio)
        curve.lratio_source = "user-supplied"
    return curve


def resolve_mode(args, curve) -> str:
    mode = args.mode
    if mode == "auto":
        return "neron" if curve.lratio is not None else "cohomological"
    return {"coh": "cohomological", "neron": "neron"}[mode]


def _check_p(p: int):
    if p == 2 or not is_prime(p):
        raise InputError(f"--p must be an odd prime, got {p}")


def emit(args, text: str):
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)


def render_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def render_csv(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(str(row.get(c, "")) for c in columns))
    return "\n".join(lines)


def _level_rows(report_dict: dict, stabilized: bool):
    stab = {r["n"]: r for r in report_dict.get("stabilized", [])}
    rows = []
    for r in report_dict["per_level"]:
        row = {
            "label": report_dict.get("label") or "",
            "p": report_dict["p"],
            "mode": report_dict["mode"],
            "n": r["n"],
            "mu_coh": r["mu_coh"],
            "mu": r["mu"],
            "lambda": r["lambda"],
        }
        if stabilized:
            row["is_maximal"] = r["is_maximal"]
            row["integral"] = r["integral"]
            s = stab.get(r["n"])
            row["stab_mu"] = s["mu"] if s else ""
            row["stab_lambda"] = s["lambda"] if s else ""
            row["verdict"] = report_dict["verdict"]
        rows.append(row)
    return rows


def render_analyze_text(report: DichotomyReport) -> str:
    d = report.to_dict()
    lines = [f"curve {d['label'] or '(unnamed)'}  p={d['p']}  mode={d['mode']}  verdict={d['verdict']}"]
    lines.append(f"{'n':>3} {'mu_coh':>7} {'mu':>5} {'lambda':>7} {'maximal':>8} {'integral':>9} {'stab(mu,lam)':>14}")
    stab = {r["n"]: r for r in d["stabilized"]}
    for r in d["per_level"]:
        s = stab.get(r["n"])
        stxt = f"({s['mu']},{s['lambda']})" if s else "-"
        lines.append(
            f"{r['n']:>3} {r['mu_coh']:>7} {r['mu']:>5} {r['lambda']:>7} "
            f"{str(r['is_maximal']):>8} {str(r['integral']):>9} {stxt:>14}"
        )
    lines.append(f"norm relation verified: {d['norm_relation_verified']}; "
                 f"theta0 identity: {d['theta0_identity_verified']}")
    if "boundary" in d:
        b = d["boundary"]
        state = "solvable" if b["solvable"] else "unsolvable"
        lines.append(f"boundary congruence mod {b['p']}: {state} on classes {b['cusp_classes']}")
        if b.get("witness") is not None:
            lines.append(f"  witness psi (gauge psi(inf)=0): {b['witness']}")
        if b.get("refutation") is not None:
            lines.append(f"  refutation combination (generator, coeff): {b['refutation']['combination']}")
    for diag in d["diagnostics"]:
        lines.append(f"note: {diag}")
    if d["commentary"]:
        lines.append(d["commentary"])
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    curve = load_curve(args)
    _check_p(args.p)
    mode = resolve_mode(args, curve)
    request = MTRequest(curve, args.p, args.n_max, mode, args.precision)
    report = classify(request)
    if args.format == "json":
        emit(args, render_json(report.to_dict()))
    elif args.format == "csv":
        emit(args, render_csv(CSV_ANALYZE_COLUMNS, _level_rows(report.to_dict(), True)))
    else:
        emit(args, render_analyze_text(report))
    return report.exit_code


def cmd_invariants(args) -> int:
    curve = load_curve(args)
    _check_p(args.p)
    mode = resolve_mode(args, curve)
    space = cache.load_space(curve.conductor, args.cache)
    sym = cache.load_eigensymbol(space, curve, args.cache)
    sym, norm = normalize(sym, curve, mode)
    shift = int(valuation(norm.scalar, args.p)) if mode == "neron" else 0
    per_level = []
    for n in range(args.n_max + 1):
        inv = mazur_tate(sym, args.p, n).iwasawa_invariants()
        per_level.append({"n": n, "mu_coh": inv.mu, "mu": inv.mu + shift, "lambda": inv.lam,
                          "is_maximal": inv.lam == args.p**n - 1, "integral": inv.mu + shift >= 0})
    payload = {"label": curve.label, "p": args.p, "mode": mode,
               "normalization_shift": shift, "per_level": per_level}
    if args.format == "json":
        emit(args, render_json(payload))
    elif args.format == "csv":
        emit(args, render_csv(CSV_INVARIANTS_COLUMNS, _level_rows(payload, False)))
    else:
        lines = [f"curve {curve.label or '(unnamed)'}  p={args.p}  mode={mode}"]
        lines.append(f"{'n':>3} {'mu_coh':>7} {'mu':>5} {'lambda':>7}")
        for r in per_level:
            lines.append(f"{r['n']:>3} {r['mu_coh']:>7} {r['mu']:>5} {r['lambda']:>7}")
        emit(args, "\n".join(lines))
    return 0


def cmd_boundary(args) -> int:
    curve = load_curve(args)
    _check_p(args.p)
    space = cache.load_space(curve.conductor, args.cache)
    sym = cache.load_eigensymbol(space, curve, args.cache)
    sym, _ = normalize(sym, curve, "cohomological")
    res = boundary_congruence(sym, args.p)
    payload = {
        "label": curve.label,
        "p": args.p,
        "solvable": res.solvable,
        "boundary_rank": res.boundary_rank,
        "cusp_classes": [f"{a}/{c}" for a, c in res.class_representatives],
    }
    if res.witness is not None:
        payload["witness"] = list(res.witness.values)
    if res.certificate is not None:
        payload["refutation"] = {
            "combination": [[i, c] for i, c in res.certificate.combination],
            "inconsistent_value": res.certificate.inconsistent_value,
        }
    if args.format == "json":
        emit(args, render_json(payload))
    else:
        lines = [f"curve {curve.label or '(unnamed)'}  p={args.p}  "
                 f"{'congruent to a boundary symbol' if res.solvable else 'NOT congruent to any boundary symbol'}"]
        lines.append(f"cusp classes: {payload['cusp_classes']} (boundary rank {res.boundary_rank})")
        if res.witness is not None:
            lines.append(f"witness psi (gauge psi(inf)=0): {list(res.witness.values)}")
        else:
            lines.append(f"refutation: sum of rows {payload['refutation']['combination']} "
                         f"gives 0 = {payload['refutation']['inconsistent_value']} mod {args.p}")
        emit(args, "\n".join(lines))
    return 0


def cmd_eigensymbol(args) -> int:
    curve = load_curve(args)
    space = cache.load_space(curve.conductor, args.cache)
    sym = cache.load_eigensymbol(space, curve, args.cache)
    sym, _ = normalize(sym, curve, "cohomological")
    payload = {
        "label": curve.label,
        "level": space.N,
        "dimension": space.dimension,
        "sign": "+",
        "coords": [str(c) for c in sym.coords],
        "generator_values": [str(v) for v in sym.generator_values()],
        "value_at_infinity_minus_zero": str(sym.value_infinity_minus(0)),
    }
    if args.format == "json":
        emit(args, render_json(payload))
    else:
        emit(args, "\n".join(f"{k}: {v}" for k, v in payload.items()))
    return 0


def cmd_selftest(args) -> int:
    results = run_all_suites(cases_per_pair=args.cases, tower_cases=200, seed=args.seed)
    payload = {
        "seed": args.seed,
        "suites": [{"name": r.name, "cases": r.cases, "violations": r.violations} for r in results],
        "passed": all(r.passed for r in results),
    }
    if args.cache:
        payload["cache"] = cache.verify_cache_dir(args.cache)
    if args.format == "json":
        emit(args, render_json(payload))
    else:
        lines = [f"self-test (seed {args.seed})"]
        for r in results:
            lines.append(f"  {'PASS' if r.passed else 'FAIL'}  {r.name}: {r.cases} cases, {r.violations} violations")
        if "cache" in payload:
            lines.append(f"  cache: {payload['cache']['clean']} clean, {payload['cache']['corrupted']} corrupted (rebuilt)")
        lines.append("all suites passed" if payload["passed"] else "FAILURES PRESENT")
        emit(args, "\n".join(lines))
    return 0 if payload["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mazurtate", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    curve_parent = argparse.ArgumentParser(add_help=False)
    curve_parent.add_argument("--curve", help="curve JSON file, or the name of a shipped fixture")
    curve_parent.add_argument("--coeffs", help="inline a1,a2,a3,a4,a6")
    curve_parent.add_argument("--conductor", type=int, help="conductor (with --coeffs)")
    curve_parent.add_argument("--lratio", help="L(E,1)/Omega_E as num/den")
    curve_parent.add_argument("--label", help="curve label (with --coeffs)")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--cache", type=Path, default=None,
                        help=f"cache directory (falls back to ${cache.ENV_CACHE_DIR})")
    common.add_argument("--output", help="write the report here instead of stdout")

    padic = argparse.ArgumentParser(add_help=False)
    padic.add_argument("--p", type=int, required=True, help="odd prime")
    padic.add_argument("--n-max", type=int, default=2, dest="n_max")
    padic.add_argument("--mode", choices=["coh", "neron", "auto"], default="auto")
    padic.add_argument("--precision", type=int, default=None)

    sp = sub.add_parser("analyze", parents=[curve_parent, padic, common],
                        help="classify the Iwasawa-invariant dichotomy")
    sp.set_defaults(func=cmd_analyze)
    sp = sub.add_parser("invariants", parents=[curve_parent, padic, common],
                        help="per-level (n, mu, lambda) table, no classification")
    sp.set_defaults(func=cmd_invariants)
    sp = sub.add_parser("boundary", parents=[curve_parent, common],
                        help="test the mod-p congruence with a boundary symbol")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_boundary)
    sp = sub.add_parser("eigensymbol", parents=[curve_parent, common],
                        help="dump the (cached) plus-eigensymbol")
    sp.set_defaults(func=cmd_eigensymbol)
    sp = sub.add_parser("selftest", parents=[common],
                        help="run the randomized property battery")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=500, help="cases per (p, n) pair")
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MazurTateError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(json.dumps({"error": "input_error", "message": str(exc)}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
