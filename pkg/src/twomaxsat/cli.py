"""Command-line surface.

Subcommands: oracle, pipeline, repro, fuzz, audit, export.
Exit codes: 0 success / expectations met; 1 semantic negative (decision false,
expectation failed, bound violated); 2 input error; 3 resource cap exceeded.
Config precedence: flags > environment (MAXSAT_ prefix) > defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import export as ex
from . import harness
from .errors import (
    ExpectationFailedError,
    FormulaParseError,
    TooManyVariablesError,
    TwoMaxSatError,
)
from .formula import parse_cnf
from .oracle import decide_2maxsat, oracle_max_sat
from .pipeline import run_pipeline

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _env(name: str, default: str | None = None) -> str | None:
    return os.environ.get(f"MAXSAT_{name}", default)


def _env_int(name: str, default: str) -> int:
    raw = _env(name, default)
    try:
        return int(raw)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        print(f"error: MAXSAT_{name} must be an integer, got {raw!r}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _read_formula(path: str):
    if path == "-":
        return parse_cnf(sys.stdin.read())
    return parse_cnf(Path(path).read_text())


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def cmd_oracle(args: argparse.Namespace) -> int:
    f = _read_formula(args.formula)
    cap = args.var_cap
    if args.k is not None:
        ok = decide_2maxsat(f, args.k, cap)
        result = oracle_max_sat(f, cap)
        _emit(
            {
                "k": args.k,
                "satisfiable_at_k": ok,
                "max_count": result.max_count,
                "witness": result.witness.named(f.variables),
            }
        )
        return EXIT_OK if ok else EXIT_NEGATIVE
    result = oracle_max_sat(f, cap)
    _emit(
        {
            "max_count": result.max_count,
            "witness": result.witness.named(f.variables),
            "assignments_tried": result.assignments_tried,
        }
    )
    return EXIT_OK


def _write_exports(run, stages: list[str], fmt: str, out_dir: str) -> list[str]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for stage in stages:
        path = out / f"{stage}.{ex.stage_suffix(stage, fmt)}"
        path.write_text(ex.export_stage(run, stage, fmt))
        written.append(str(path))
    return written


def cmd_pipeline(args: argparse.Namespace) -> int:
    f = _read_formula(args.formula)
    run = run_pipeline(f, ordering=args.ordering, algorithm=args.algorithm)
    payload = ex.answer_json(run)
    if args.export:
        stages = [s.strip() for s in args.export.split(",") if s.strip()]
        payload["exports"] = _write_exports(run, stages, args.format, args.out)
    _emit(payload)
    return EXIT_OK


def cmd_repro(args: argparse.Namespace) -> int:
    if args.name == "all":
        specs = harness.builtin_counterexamples()
    else:
        try:
            specs = [harness.builtin_by_name(args.name)]
        except KeyError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_INPUT
    reports = []
    all_ok = True
    for spec in specs:
        report = harness.run_counterexample(spec, strict=False)
        reports.append(report)
        all_ok = all_ok and report["ok"]
        if args.export:
            f = parse_cnf(spec.dimacs)
            for algorithm in spec.algorithms:
                run = run_pipeline(f, ordering=spec.ordering, algorithm=algorithm)
                _write_exports(
                    run,
                    ["trie", "trielike", "layered", "answer"],
                    "dot",
                    str(Path(args.export) / f"{spec.name}-alg{algorithm}"),
                )
    _emit({"reports": reports, "ok": all_ok})
    return EXIT_OK if all_ok else EXIT_NEGATIVE


def cmd_fuzz(args: argparse.Namespace) -> int:
    params = harness.FuzzParams(
        max_n0=args.max_n0,
        max_m0=args.max_m0,
        orderings_per_formula=args.orderings,
        algorithms=tuple(int(a) for a in args.algorithms.split(",")),
        variable_cap=args.var_cap,
    )
    if args.threads > 1:
        mismatches = _fuzz_parallel(args.seed, args.iters, params, args.threads)
    else:
        mismatches = harness.fuzz(args.seed, args.iters, params)
    if args.shrink:
        mismatches = [harness.shrink(m, params.variable_cap) for m in mismatches]
    payload = {
        "seed": args.seed,
        "iterations": args.iters,
        "mismatches": [m.to_dict() for m in mismatches],
        "mismatch_count": len(mismatches),
    }
    if args.report:
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n")
    _emit(payload)
    return EXIT_OK


def _fuzz_parallel(seed: int, iterations: int, params, threads: int):
    """Same stream as harness.fuzz: formulas generated serially, checked in a pool,
    results merged in submission order."""
    import random as _random

    rng = _random.Random(seed)
    work = []
    for _ in range(iterations):
        f = harness.random_formula(rng, params)
        for ordering in harness.tie_consistent_orderings(f, params.orderings_per_formula):
            for algorithm in params.algorithms:
                work.append((f, ordering, algorithm))
    out = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(harness.check_one, f, ordering, algorithm, params.variable_cap)
            for f, ordering, algorithm in work
        ]
        for future in futures:
            found = future.result()
            if found is not None:
                out.append(found)
    return out


def cmd_audit(args: argparse.Namespace) -> int:
    f = _read_formula(args.formula)
    report = harness.audit_bounds(f, ordering=args.ordering, algorithm=args.algorithm)
    _emit(report.to_dict())
    return EXIT_OK if report.all_pass else EXIT_NEGATIVE


def cmd_export(args: argparse.Namespace) -> int:
    f = _read_formula(args.formula)
    run = run_pipeline(f, ordering=args.ordering, algorithm=args.algorithm)
    stages = [s.strip() for s in args.stages.split(",") if s.strip()]
    written = _write_exports(run, stages, args.format, args.out)
    _emit({"exports": written})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twomaxsat",
        description="2-MAXSAT trie-like-graph pipeline, exact oracle, and refutation harness",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=_env_int("THREADS", "1"),
        help="worker threads for the fuzzer (default 1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="exact 2-MAXSAT by exhaustive enumeration")
    p.add_argument("formula", help="DIMACS-like file ('-' for stdin)")
    p.add_argument("--k", type=int, default=None, help="decision threshold")
    p.add_argument("--var-cap", type=int, default=_env_int("VAR_CAP", "24"))
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("pipeline", help="run conversion steps 1-10 and report the claimed maximum")
    p.add_argument("formula")
    p.add_argument("--ordering", default=_env("ORDERING", "frequency"),
                   help="'frequency', 'lexical', or an explicit spec like 'y1>y2>v1'")
    p.add_argument("--algorithm", type=int, choices=(1, 3),
                   default=_env_int("ALGORITHM", "1"))
    p.add_argument("--export", default=None, help="comma-separated stages to write")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out", default="exports")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("repro", help="replay builtin counterexamples")
    p.add_argument("name", help="running | ce1 | ce2 | ce3 | family(N) | all")
    p.add_argument("--export", default=None, help="directory for stage exports")
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("fuzz", help="differential-test random formulas against the oracle")
    p.add_argument("--seed", type=int, default=_env_int("SEED", "0"))
    p.add_argument("--iters", type=int, default=_env_int("ITERS", "100"))
    p.add_argument("--max-n0", type=int, default=4)
    p.add_argument("--max-m0", type=int, default=3)
    p.add_argument("--orderings", type=int, default=6)
    p.add_argument("--algorithms", default="1,3")
    p.add_argument("--var-cap", type=int, default=_env_int("VAR_CAP", "24"))
    p.add_argument("--shrink", action="store_true", help="minimize each mismatch")
    p.add_argument("--report", default=None, help="write the JSON report here")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("audit", help="measure structure sizes against the proved bounds")
    p.add_argument("formula")
    p.add_argument("--ordering", default=_env("ORDERING", "frequency"))
    p.add_argument("--algorithm", type=int, choices=(1, 3),
                   default=_env_int("ALGORITHM", "1"))
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("export", help="write stage exports for a pipeline run")
    p.add_argument("formula")
    p.add_argument("--ordering", default=_env("ORDERING", "frequency"))
    p.add_argument("--algorithm", type=int, choices=(1, 3),
                   default=_env_int("ALGORITHM", "1"))
    p.add_argument("--stages", default="trie,trielike,layered,answer")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out", default="exports")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FormulaParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TooManyVariablesError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ExpectationFailedError as exc:
        print(f"expectation failed: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except TwoMaxSatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
