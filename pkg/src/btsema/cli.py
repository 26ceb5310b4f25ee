"""Command line interface.

Exit codes: 0 ok / traces equal, 1 validation failure, 2 runtime semantic
error, 3 I/O or parse error, 4 trace divergence.
"""

from __future__ import annotations

import argparse
import sys

from .dsl import export_dot, parse_tree
from .errors import ParseError, ScenarioError, ValidationError
from .harness.oracle import oracle_run
from .harness.runner import VERBOSITY, RunConfig, run_simulation
from .harness.trace import ERROR, Trace, trace_diff
from .scenario import ScenarioMismatch, check_scenario, parse_scenario
from .wfbt import check_wfbt

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2
EXIT_IO = 3
EXIT_DIVERGED = 4


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Exit(EXIT_IO, f"{path}: {exc.strerror}") from None


def _load_tree(path: str, check: bool = True):
    try:
        spec = parse_tree(_read(path))
    except ParseError as exc:
        raise _Exit(EXIT_IO, f"{path}:{exc}") from None
    if check:
        violations = check_wfbt(spec)
        if violations:
            raise _Exit(EXIT_INVALID, "\n".join(f"{path}:{v}" for v in violations))
    return spec


def _load_scenario(path: str):
    try:
        return parse_scenario(_read(path))
    except ScenarioError as exc:
        raise _Exit(EXIT_IO, "\n".join(f"{path}#{p}: {m}" for p, m in exc.problems)) from None


def cmd_validate(args) -> int:
    spec = _load_tree(args.tree)
    if args.scenario:
        problems = check_scenario(_load_scenario(args.scenario), spec)
        if problems:
            raise _Exit(EXIT_INVALID, "\n".join(f"{args.scenario}#{p}: {m}" for p, m in problems))
    print(f"{args.tree}: ok ({spec.size()} nodes)")
    return EXIT_OK


def _execute(args, runner) -> int:
    spec = _load_tree(args.tree)
    scenario = _load_scenario(args.scenario)
    config = RunConfig(
        max_ticks=args.max_ticks, stop_on_terminal=args.stop_on_terminal, verbosity=args.verbosity
    )
    try:
        trace = runner(spec, scenario, config)
    except (ScenarioMismatch, ValidationError) as exc:
        raise _Exit(EXIT_INVALID, str(exc)) from None
    if args.trace:
        try:
            trace.write(args.trace)
        except OSError as exc:
            raise _Exit(EXIT_IO, f"{args.trace}: {exc.strerror}") from None
    else:
        sys.stdout.write(trace.to_jsonl())
    if trace.status == ERROR:
        err = trace.events[-1]
        print(f"runtime error at t={err.t} {err.node}: {err.v}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_run(args) -> int:
    return _execute(args, run_simulation)


def cmd_oracle(args) -> int:
    return _execute(args, oracle_run)


def cmd_diff(args) -> int:
    try:
        a = Trace.from_jsonl(_read(args.a))
        b = Trace.from_jsonl(_read(args.b))
    except (ValueError, KeyError, TypeError) as exc:
        raise _Exit(EXIT_IO, f"malformed trace: {exc!r}") from None
    divergence = trace_diff(a, b)
    if divergence is None:
        print(f"identical ({len(a)} events)")
        return EXIT_OK
    print(divergence)
    return EXIT_DIVERGED


def cmd_export_dot(args) -> int:
    text = export_dot(_load_tree(args.tree))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="btsema", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a .bt file for well-formedness")
    p.add_argument("--tree", required=True)
    p.add_argument("--scenario", help="also cross-check this scenario against the tree")
    p.set_defaults(func=cmd_validate)

    for name, func, help_text in (
        ("run", cmd_run, "simulate with the runtime node objects"),
        ("oracle", cmd_oracle, "simulate with the reference interpreter"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--tree", required=True)
        p.add_argument("--scenario", required=True)
        p.add_argument("--max-ticks", type=int, help="override the scenario's max_ticks")
        p.add_argument("--stop-on-terminal", action="store_true")
        p.add_argument("--trace", help="write the JSON Lines trace here instead of stdout")
        p.add_argument("--verbosity", choices=VERBOSITY, default="full")
        p.set_defaults(func=func)

    p = sub.add_parser("diff", help="report the first divergence between two traces")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("export-dot", help="print a Graphviz rendering of the tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_ticks", None) is not None and args.max_ticks < 1:
        parser.error("--max-ticks must be >= 1")
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.message:
            print(exc.message, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
