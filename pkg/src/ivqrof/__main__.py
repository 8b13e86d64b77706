from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Any

from .catalog import get_operator_catalog
from .errors import IVqROFError, NumericalDegeneracy
from .mcgdm import DecisionProblem, resolve_q, solve
from .paths import find_fixture, resolve_log_path
from .problem_io import emit_report, load_document, load_problem
from .regression import REFERENCE_TOL, compare_to_reference
from .selfcheck import SelfcheckConfig, run_selfcheck
from .sweep import SWEEP_PARAMS, SweepSpec, parse_sweep_values, run_sweep

log = logging.getLogger(__name__)

SEED_ENV = "IVQROF_SEED"
LOG_LEVEL_ENV = "IVQROF_LOG_LEVEL"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2


def _q_arg(text: str) -> float | str:
    if text == "auto":
        return text
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"q must be a number or 'auto', got {text!r}") from exc


def _with_overrides(problem: DecisionProblem, args: argparse.Namespace) -> DecisionProblem:
    changes: dict[str, Any] = {}
    for key in ("q", "phi", "x", "y", "score"):
        value = getattr(args, key, None)
        if value is not None:
            changes[key] = value
    if getattr(args, "operator", None) is not None:
        changes["criteria_operator"] = args.operator
    if getattr(args, "mode", None) is not None:
        changes["criteria_mode"] = args.mode
    return problem.with_params(**changes) if changes else problem


def _problem_path(name: str | None) -> Path:
    """A path that exists, else a bare file name looked up among the fixture folders."""
    if name is None:
        return find_fixture()
    path = Path(name)
    if path.is_file() or path.name != name:
        return path
    return find_fixture(name)


def _write(text: str, out: str | None) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        print(f"Wrote {path}")
    else:
        sys.stdout.write(text)


def cmd_validate(args: argparse.Namespace) -> int:
    problem = _with_overrides(load_problem(_problem_path(args.file)), args)
    q = resolve_q(problem)
    print(
        f"ok: {problem.m} alternatives, {problem.n} criteria, {problem.t} experts; q={q:g}"
        + (" (inferred)" if problem.params.explicit_q is None else "")
    )
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    problem = _with_overrides(load_problem(_problem_path(args.file)), args)
    report = solve(problem, keep_intermediates=args.intermediates)
    _write(emit_report(report, args.format), args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    problem = load_problem(_problem_path(args.file))
    result = run_sweep(SweepSpec(args.param, parse_sweep_values(args.values), problem))
    if args.out:
        result.table.to_csv(args.out, index=False, float_format="%.10g", lineterminator="\n")
        print(f"Wrote {args.out}")
    else:
        print(result.table.to_string(index=False, float_format=lambda v: f"{v:.10g}"))
    print(result.verdict)
    return EXIT_OK


def _default_seed() -> int:
    raw = os.getenv(SEED_ENV)
    if not raw:
        return SelfcheckConfig().seed
    try:
        return int(raw)
    except ValueError:
        print(f"Ignoring {SEED_ENV}={raw!r} (not an integer)", file=sys.stderr)
        return SelfcheckConfig().seed


def cmd_selfcheck(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    report = run_selfcheck(SelfcheckConfig(cases=args.cases, seed=seed))
    if args.out:
        report.cases.to_csv(args.out, index=False, float_format="%.6g", lineterminator="\n")
        print(f"Wrote {args.out}")
    print(report.summary().to_string(index=False, float_format=lambda v: f"{v:.3g}"))
    if report.passed:
        print(f"selfcheck passed (cases={args.cases}, seed={seed})")
        return EXIT_OK
    print(
        f"selfcheck FAILED: {len(report.failures)} binding case(s) out of tolerance",
        file=sys.stderr,
    )
    return EXIT_NUMERIC


def cmd_regress(args: argparse.Namespace) -> int:
    path = _problem_path(args.file)
    doc = load_document(path)
    if doc.reference is None or doc.reference.empty:
        print(f"{path} has no 'reference' block to compare against", file=sys.stderr)
        return EXIT_INPUT
    report = solve(doc.problem, keep_intermediates=True)
    frame = compare_to_reference(
        report,
        doc.reference,
        doc.problem,
        oracle_cells=not args.no_oracle,
        tolerance=args.tolerance,
    )
    out = Path(args.out) if args.out else resolve_log_path("regression.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(out, index=False, float_format="%.10g", lineterminator="\n")
    within = int(frame["within_tolerance"].sum())
    print(f"ranking: {report.ranking_string}")
    print(f"{within}/{len(frame)} published values within {args.tolerance:g}")
    for quantity, part in frame.groupby("quantity", sort=False):
        hits = int(part["within_tolerance"].sum())
        print(f"  {quantity}: {hits}/{len(part)}, max dev {part['deviation'].max():.4g}")
    print(f"Wrote {out}")
    return EXIT_OK


def cmd_operators(args: argparse.Namespace) -> int:
    catalog = get_operator_catalog()
    for op in catalog.operators:
        print(f"{op.name}: {op.summary}")
        if args.verbose:
            if op.fold:
                print(f"    fold: {op.fold}")
            if op.closed_form:
                print(f"    closed form: {op.closed_form}")
            for note in op.notes:
                print(f"    - {note}")
    if args.verbose and catalog.corrections:
        print("corrections:")
        for item in catalog.corrections:
            print(f"  - {item}")
    return EXIT_OK


def _add_param_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=_q_arg, help="Rung: a number >= 1 or 'auto' (default: from file)")
    p.add_argument("--phi", type=float, help="Hamacher parameter > 0")
    p.add_argument("--x", type=float, help="Heronian exponent on the earlier argument")
    p.add_argument("--y", type=float, help="Heronian exponent on the later argument")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ivqrof", description="Interval-valued q-rung orthopair fuzzy group decisions"
    )
    p.add_argument(
        "--log-level",
        default=None,
        help=f"Logging level (default: ${LOG_LEVEL_ENV} or WARNING)",
    )
    p.add_argument("--log-file", help="Also write log records to this file")
    sub = p.add_subparsers(dest="cmd", required=True)

    pv = sub.add_parser("validate", help="Check a problem file and report the resolved rung")
    pv.add_argument("file", help="Problem file (JSON or YAML) or a bundled fixture name")
    _add_param_overrides(pv)
    pv.set_defaults(func=cmd_validate)

    ps = sub.add_parser("solve", help="Aggregate experts and criteria, then rank alternatives")
    ps.add_argument("file", help="Problem file (JSON or YAML) or a bundled fixture name")
    _add_param_overrides(ps)
    ps.add_argument(
        "--score",
        choices=["eq6", "linear", "qpow"],
        help="Score function for ranking (linear is an alias of eq6)",
    )
    ps.add_argument(
        "--operator",
        choices=["hhmwa", "hhmga"],
        help="Criteria-stage operator (default: hhmwa)",
    )
    ps.add_argument(
        "--mode",
        choices=["dual", "literal"],
        help="hhmga form when --operator hhmga (default: dual)",
    )
    ps.add_argument("--format", choices=["text", "csv"], default="text")
    ps.add_argument(
        "--intermediates",
        action="store_true",
        help="Include the expert-fused matrix R in text output",
    )
    ps.add_argument("--out", help="Write the report here instead of stdout")
    ps.set_defaults(func=cmd_solve)

    pw = sub.add_parser("sweep", help="Re-solve over a list of parameter values")
    pw.add_argument("file", help="Problem file (JSON or YAML) or a bundled fixture name")
    pw.add_argument("--param", required=True, choices=list(SWEEP_PARAMS))
    pw.add_argument("--values", required=True, help="Comma-separated values, e.g. 3,4,5,6")
    pw.add_argument("--out", help="Write the sweep table as CSV")
    pw.set_defaults(func=cmd_sweep)

    pc = sub.add_parser("selfcheck", help="Closed forms vs fold oracle, plus property suites")
    pc.add_argument("--cases", type=int, default=SelfcheckConfig().cases)
    pc.add_argument("--seed", type=int, help=f"Random seed (default: ${SEED_ENV} or 42)")
    pc.add_argument("--out", help="Write the per-case log as CSV")
    pc.set_defaults(func=cmd_selfcheck)

    pr = sub.add_parser("regress", help="Compare a solved problem with its 'reference' block")
    pr.add_argument(
        "file",
        nargs="?",
        help="Problem file with a 'reference' block (default: the bundled case study)",
    )
    pr.add_argument("--tolerance", type=float, default=REFERENCE_TOL)
    pr.add_argument("--no-oracle", action="store_true", help="Skip the fold-oracle column")
    pr.add_argument("--out", help="Regression log CSV (default: logs/regression.csv in data home)")
    pr.set_defaults(func=cmd_regress)

    po = sub.add_parser("operators", help="List the aggregation operators")
    po.add_argument("-v", "--verbose", action="store_true", help="Show folds, closed forms, notes")
    po.set_defaults(func=cmd_operators)
    return p


def _configure_logging(level: str | None, log_file: str | None) -> None:
    name = (level or os.getenv(LOG_LEVEL_ENV) or "WARNING").upper()
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, name, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        handlers=handlers,
        force=True,
    )


def main(argv: list[str] | None = None) -> int:
    try:
        from dotenv import load_dotenv

        load_dotenv()
    except Exception:
        pass
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.log_level, args.log_file)
    log.debug("[cli] %s %s", args.cmd, vars(args))
    try:
        return args.func(args)
    except NumericalDegeneracy as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (IVqROFError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
