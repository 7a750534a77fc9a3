"""Command-line entry point: run scenario files, list checkers, run the corpus.

Exit codes: 0 all (non-hypothesis-unmet) checkers pass, 1 at least one
fail, 2 configuration or internal error. For the corpus command, scenarios
whose names start with ``neg-`` are negative controls and are expected to
fail; the corpus exits 0 only when every positive scenario passes and
every negative control fails.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import NuspectError, ScenarioParseError, ScenarioValidationError
from .scenario import (
    builtin_scenarios,
    checker_names,
    dumps_canonical,
    emit_report,
    is_negative_control,
    load_builtin,
    parse_scenario,
    run_scenario,
)


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="nuspect",
        description="Scenario runner for spectral-set convergence checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario file")
    run.add_argument("scenario", help="path to a scenario JSON file")
    run.add_argument("--out-dir", default="reports")
    run.add_argument("--format", default="json,csv", help="comma list: json,csv")
    run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    run.add_argument("--tol-scale", type=float, default=1.0)

    sub.add_parser("list-checkers", help="print the registered checker names")

    corpus = sub.add_parser("corpus", help="run every built-in scenario")
    corpus.add_argument("--out-dir", default="reports")
    corpus.add_argument("--format", default="json,csv")
    corpus.add_argument("--tol-scale", type=float, default=1.0)

    return parser.parse_args(argv)


def _formats(arg: str) -> list[str]:
    fmts = [f.strip() for f in arg.split(",") if f.strip()]
    for f in fmts:
        if f not in ("json", "csv"):
            raise ScenarioValidationError(f"unknown format {f!r}")
    return fmts


def _print_report(report, file=sys.stdout):
    for ck in report.checker_reports:
        took = report.timings.get(ck.checker, 0.0)
        print(f"  {ck.checker}: {ck.verdict} ({took:.3f}s)", file=file)
    print(f"{report.scenario}: {report.verdict}", file=file)


def main(argv=None) -> int:
    args = _parse_args(argv if argv is not None else sys.argv[1:])
    try:
        if args.command == "list-checkers":
            for name in checker_names():
                print(name)
            return 0

        if args.command == "run":
            text = Path(args.scenario).read_text(encoding="utf-8")
            if args.seed is not None:
                import json as _json

                data = _json.loads(text)
                data["seed"] = args.seed
                text = dumps_canonical(data)
            scenario = parse_scenario(text)
            report = run_scenario(scenario, tol_scale=args.tol_scale)
            emit_report(report, args.out_dir, _formats(args.format))
            _print_report(report)
            return report.exit_code

        if args.command == "corpus":
            ok = True
            for name in builtin_scenarios():
                scenario = load_builtin(name)
                report = run_scenario(scenario, tol_scale=args.tol_scale)
                emit_report(report, args.out_dir, _formats(args.format))
                _print_report(report)
                if is_negative_control(name):
                    ok = ok and report.verdict == "fail"
                else:
                    ok = ok and report.verdict == "pass"
            return 0 if ok else 1
    except (ScenarioParseError, ScenarioValidationError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NuspectError as exc:
        print(f"internal numerical failure: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
