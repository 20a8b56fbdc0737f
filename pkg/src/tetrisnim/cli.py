"""Command line front end.

Exit codes: 0 computed or PASS, 1 FAIL with a witness, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import is_tetris
from .games import spec_from_dict
from .hypergraph import Hypergraph, intersection_condition
from .suites import SUITES, figure1_report, run_suite
from .tables import sg_table, tetris_table

DEFAULT_CAPS = 3
DEFAULT_TRIALS = 100
DEFAULT_SEED = 0


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load(path: str, parse):
    data = _load_json(path)
    try:
        return parse(data)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_caps(text: str) -> int | list[int]:
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid caps {text!r}") from None
    if any(p < 0 for p in parts):
        raise argparse.ArgumentTypeError("caps must be nonnegative")
    return parts[0] if len(parts) == 1 else parts


def _parse_seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tetrisnim", description="Exact analysis of hypergraph NIM and combined games."
    )
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    group.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    fmt.set_defaults(pretty=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("condition", parents=[fmt], help="intersection condition of a hypergraph")
    p.add_argument("hypergraph")

    p = sub.add_parser("tetris-check", parents=[fmt], help="decide or refute the Tetris property")
    p.add_argument("hypergraph")
    p.add_argument("--caps", type=_parse_caps, default=DEFAULT_CAPS)

    for name in ("sg-table", "tetris-table"):
        p = sub.add_parser(name, parents=[fmt], help=f"{name.split('-')[0]} value table of a game")
        p.add_argument("spec")

    p = sub.add_parser("verify", parents=[fmt], help="run a seeded verification suite")
    p.add_argument("suite", choices=list(SUITES))
    p.add_argument("--seed", type=_parse_seed, default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--caps", type=_parse_caps, default=DEFAULT_CAPS)

    sub.add_parser("fig1", parents=[fmt], help="recompute the nine-vertex example")
    return parser


def _emit(obj, pretty: bool, out) -> None:
    if pretty:
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _execute(args) -> tuple[dict, int]:
    if args.command == "condition":
        h = _load(args.hypergraph, Hypergraph.from_dict)
        res = intersection_condition(h)
        body = {
            "command": "condition",
            "hypergraph": h.to_dict(),
            "status": res.status,
            "witness": None if res.witness is None else list(res.witness),
        }
        return body, 0 if res.passed else 1

    if args.command == "tetris-check":
        h = _load(args.hypergraph, Hypergraph.from_dict)
        try:
            verdict = is_tetris(h, args.caps)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        body = {"command": "tetris-check", "caps": args.caps, **verdict.to_dict()}
        return body, 1 if verdict.status == "NOT_TETRIS" else 0

    if args.command in ("sg-table", "tetris-table"):
        spec = _load(args.spec, spec_from_dict)
        table = sg_table(spec) if args.command == "sg-table" else tetris_table(spec)
        return table.to_dict(), 0

    if args.command == "verify":
        if not isinstance(args.caps, int):
            raise InputError("verify takes a single integer --caps")
        if args.trials < 0:
            raise InputError("--trials must be nonnegative")
        report = run_suite(args.suite, seed=args.seed, trials=args.trials, caps=args.caps)
        body = {
            "command": "verify",
            "suite": args.suite,
            "seed": args.seed,
            "trials": args.trials,
            "caps": args.caps,
            **report.to_dict(),
        }
        return body, 0 if report.passed else 1

    report = figure1_report()
    return {"command": "fig1", **report}, 0 if report["status"] == "PASS" else 1


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        body, code = _execute(args)
    except InputError as exc:
        sys.stderr.write(f"tetrisnim: error: {exc}\n")
        return 2
    _emit(body, args.pretty, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
