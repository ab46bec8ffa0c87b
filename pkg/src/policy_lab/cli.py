"""Command line interface: simulate, check, diff and serve.

Exit codes: 0 success, 1 input/validation error (bad CSV, bad scenario, lex/
parse/check problems), 2 lever script runtime error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ._version import __version__
from .dsl import LexError, ParseError, check, format_program, parse_program
from .engine import (
    EngineConfig,
    ScenarioCheckError,
    ScriptRuntimeError,
    YearRangeError,
    compare_scenarios,
    headline_metrics,
    run_scenario,
)
from .projection import (
    EOL_FATES,
    ProjectionError,
    ProjectionSeries,
    Vocabulary,
    load_baseline,
    load_vocabulary,
    serialize,
)
from .scenario import ScenarioError, load_scenario

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SCRIPT = 2
EXIT_IO = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"{path}: {exc}", EXIT_IO) from exc


def _write_text(path: Path, text: str):
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"{path}: {exc}", EXIT_IO) from exc


def _load_vocabulary(default_dir: Path, vocabulary_arg: str | None) -> Vocabulary:
    if vocabulary_arg is not None:
        path = Path(vocabulary_arg)
    else:
        path = default_dir / "vocabulary.json"
        if not path.exists():
            raise _CliError(
                f"no vocabulary config found at {path}; pass --vocabulary",
                EXIT_VALIDATION,
            )
    try:
        return load_vocabulary(_read_text(path))
    except ProjectionError as exc:
        raise _CliError(f"{path}: {exc}", EXIT_VALIDATION) from exc


def _load_baseline(baseline_arg: str, vocabulary_arg: str | None) -> ProjectionSeries:
    path = Path(baseline_arg)
    vocabulary = _load_vocabulary(path.parent, vocabulary_arg)
    try:
        return load_baseline(_read_text(path), vocabulary)
    except ProjectionError as exc:
        raise _CliError(f"{path}: {exc}", EXIT_VALIDATION) from exc


def _run(baseline: ProjectionSeries, scenario_path: str):
    try:
        scenario = load_scenario(scenario_path)
    except ScenarioError as exc:
        raise _CliError(str(exc), EXIT_VALIDATION) from exc
    except (LexError, ParseError) as exc:
        raise _CliError(f"{scenario_path}: {exc}", EXIT_VALIDATION) from exc
    try:
        return run_scenario(baseline, scenario, EngineConfig())
    except (ScenarioCheckError, YearRangeError) as exc:
        raise _CliError(f"{scenario_path}: {exc}", EXIT_VALIDATION) from exc
    except ScriptRuntimeError as exc:
        raise _CliError(str(exc), EXIT_SCRIPT) from exc


def _diagnostics_doc(result) -> dict:
    return {
        "engine_version": result.engine_version,
        "run_years": [result.run_first_year, result.run_last_year],
        "years": [
            {
                "year": d.year,
                "clamps_applied": [
                    {
                        "address": c.address,
                        "line": c.span.line,
                        "column": c.span.column,
                        "pre_value": c.pre_value,
                        "post_value": c.post_value,
                    }
                    for c in d.script.clamps_applied
                ],
                "divisions_guarded": d.script.divisions_guarded,
                "normalization": [
                    {
                        "region": n.region,
                        "scale": n.scale,
                        "mismanaged_default": n.mismanaged_default,
                    }
                    for n in d.normalization
                ],
            }
            for d in result.diagnostics
        ],
    }


def cmd_simulate(args) -> int:
    baseline = _load_baseline(args.baseline, args.vocabulary)
    result = _run(baseline, args.scenario)
    _write_text(Path(args.out), serialize(result.series))
    if args.diagnostics:
        _write_text(
            Path(args.diagnostics), json.dumps(_diagnostics_doc(result), indent=2) + "\n"
        )
    return EXIT_OK


def cmd_check(args) -> int:
    """Validate scripts; print every violation; optionally rewrite canonically."""
    clean = True
    if args.scenario:
        vocabulary = _load_vocabulary(Path(args.scenario).parent, args.vocabulary)
        try:
            scenario = load_scenario(args.scenario)
        except ScenarioError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_VALIDATION
        except (LexError, ParseError) as exc:
            print(f"{args.scenario}: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        for lever in scenario.levers:
            violations = check(lever.program, vocabulary, inputs=set(lever.inputs))
            for violation in violations:
                clean = False
                print(f"{lever.id}: {violation}", file=sys.stderr)
        return EXIT_OK if clean else EXIT_VALIDATION

    vocabulary = _load_vocabulary(Path("."), args.vocabulary)
    for file_arg in args.files:
        path = Path(file_arg)
        source = _read_text(path)
        try:
            program = parse_program(source, source_name=str(path))
        except (LexError, ParseError) as exc:
            print(f"{path}: {exc}", file=sys.stderr)
            clean = False
            continue
        for violation in check(program, vocabulary, inputs=None):
            clean = False
            print(f"{path}: {violation}", file=sys.stderr)
        if args.fmt:
            canonical = format_program(program)
            if canonical != source:
                _write_text(path, canonical)
    return EXIT_OK if clean else EXIT_VALIDATION


def cmd_diff(args) -> int:
    baseline = _load_baseline(args.baseline, args.vocabulary)
    if len(args.scenario) != 2:
        raise _CliError("diff needs exactly two --scenario paths", EXIT_VALIDATION)
    result_a = _run(baseline, args.scenario[0])
    result_b = _run(baseline, args.scenario[1])
    try:
        comparison = compare_scenarios(result_a, result_b)
    except ProjectionError as exc:
        raise _CliError(str(exc), EXIT_VALIDATION) from exc

    print(
        "cumulative global mismanaged delta (MT): "
        f"{comparison.cumulative_global_mismanaged_delta:+.6f}"
    )
    end_year = result_a.run_last_year
    for region in result_a.series.vocabulary.region_ids:
        parts = []
        for fate in EOL_FATES:
            delta = (
                comparison.headline_b.end_year_fates[region][fate]
                - comparison.headline_a.end_year_fates[region][fate]
            )
            parts.append(f"{fate} {delta:+.6f}")
        print(f"{region} {end_year}: " + ", ".join(parts))

    if args.out:
        lines = ["year,region,variable,delta"]
        series = result_a.series
        for region in series.vocabulary.region_ids:
            for year in series.years:
                for attr in series.vocabulary.attribute_ids:
                    delta = comparison.deltas[(region, year, attr)]
                    lines.append(f"{year},{region},{attr},{delta!r}")
        _write_text(Path(args.out), "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    baseline = _load_baseline(args.baseline, args.vocabulary)
    app = create_app({"default": baseline}, static_dir=args.static)
    port = args.port
    if port is None:
        port = int(os.environ.get("POLICY_LAB_PORT", "8000"))
    uvicorn.run(app, host=args.host, port=port, access_log=False)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="policy-lab",
        description="Policy intervention workbench over a plastics mass-flow baseline",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a scenario and write the result CSV")
    p.add_argument("--baseline", required=True, help="baseline CSV path")
    p.add_argument("--scenario", required=True, help="scenario JSON path")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--diagnostics", help="optional diagnostics JSON path")
    p.add_argument("--vocabulary", help="vocabulary JSON (default: next to baseline)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("check", help="validate lever scripts or a scenario")
    p.add_argument("files", nargs="*", help=".pol script files")
    p.add_argument("--scenario", help="scenario JSON path")
    p.add_argument("--fmt", action="store_true", help="rewrite files canonically")
    p.add_argument("--vocabulary", help="vocabulary JSON path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("diff", help="compare two scenarios on one baseline")
    p.add_argument("--baseline", required=True)
    p.add_argument(
        "--scenario", action="append", required=True, help="given twice: A then B"
    )
    p.add_argument("--out", help="optional cell-delta CSV path")
    p.add_argument("--vocabulary", help="vocabulary JSON path")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--baseline", required=True)
    p.add_argument("--port", type=int, default=None, help="default: $POLICY_LAB_PORT or 8000")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", help="directory of static files to serve at /")
    p.add_argument("--vocabulary", help="vocabulary JSON path")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check" and not args.scenario and not args.files:
        print("check: pass .pol files or --scenario", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except _CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
