"""``revpebble`` command line.

Exit codes: 0 success (won / search completed / cross-check passed),
1 domain failure (not won, illegal move, mismatch, aborted search),
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import strategies
from .game import GameError, ParameterError, ScheduleFormatError, Schedule, dumps_canonical, run_schedule
from .revsim import SimulationError, builtin_machine, direct_run, execute
from .solver import DEFAULT_STATE_LIMIT, SearchConfig, StateLimitExceeded, max_winnable, winnable


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _hex(text: str) -> bytes:
    text = text[2:] if text.lower().startswith("0x") else text
    if len(text) % 2:
        text = "0" + text
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex string: {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revpebble", description="Reversible pebble-game schedules.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a schedule")
    g.add_argument("--strategy", required=True, choices=["naive", "bennett", "erasure", "kary"])
    g.add_argument("--n", type=_positive, required=True, help="levels; game length for naive")
    g.add_argument("--m", type=_positive, help="number of blocks (erasure)")
    g.add_argument("--k", type=int, help="branching factor (kary)")
    g.add_argument("--out", help="schedule file (default: standard output)")

    v = sub.add_parser("validate", help="replay a schedule file")
    v.add_argument("schedule")
    v.add_argument("--strict", action="store_true")

    s = sub.add_parser("solve", help="exhaustive winnability search")
    s.add_argument("--pebbles", type=_positive, required=True)
    s.add_argument("--erasures", type=_nonnegative, default=0)
    s.add_argument("--tg", type=_positive, help="game length to decide")
    s.add_argument("--max", action="store_true", help="find the longest winnable game")
    s.add_argument("--cap", type=_positive, help="length cap for --max")
    s.add_argument("--witness", help="write a winning schedule here")
    s.add_argument("--state-limit", type=_positive, default=DEFAULT_STATE_LIMIT)
    s.add_argument("--threads", type=_positive, default=1)

    r = sub.add_parser("simulate", help="run a schedule as a reversible simulation")
    r.add_argument("--machine", required=True, choices=["counter", "eca110", "tm-busy3"])
    r.add_argument("--width", type=int, default=32)
    r.add_argument("--input", type=_hex, default=b"", help="input configuration as hex")
    r.add_argument("--schedule", required=True)
    r.add_argument("--segment-len", type=_positive, default=1)

    t = sub.add_parser("tradeoff", help="pebbles-versus-erasures table")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--format", choices=["csv", "json"], default="csv")
    t.add_argument("--out")

    for subparser in sub.choices.values():
        subparser.set_defaults(subparser=subparser)
    return parser


def _generate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.strategy == "erasure":
        if args.m is None:
            parser.error("--strategy erasure requires --m")
        if args.n < 2:
            parser.error("--strategy erasure requires --n >= 2")
    if args.strategy == "kary" and (args.k is None or args.k < 2):
        parser.error("--strategy kary requires --k >= 2")
    try:
        if args.strategy == "naive":
            schedule = strategies.naive_schedule(args.n)
        elif args.strategy == "bennett":
            schedule = strategies.bennett_schedule(args.n)
        elif args.strategy == "erasure":
            schedule = strategies.erasure_schedule(args.n, args.m)
        else:
            schedule = strategies.kary_schedule(args.k, args.n)
    except ParameterError as exc:
        parser.error(str(exc))
    try:
        metrics = run_schedule(schedule, strict=True)
    except GameError as exc:
        print(f"internal error: generated schedule is illegal: {exc}", file=sys.stderr)
        return 1
    _emit(schedule.to_json(), args.out)
    print(metrics.summary(), file=sys.stdout if args.out else sys.stderr)
    return 0 if metrics.won else 1


def _validate(args: argparse.Namespace) -> int:
    try:
        schedule = Schedule.load(args.schedule)
    except (OSError, ScheduleFormatError) as exc:
        print(f"cannot read schedule: {exc}", file=sys.stderr)
        return 1
    try:
        metrics = run_schedule(schedule, strict=args.strict)
    except GameError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    sys.stdout.write(dumps_canonical(metrics.to_dict()))
    return 0 if metrics.won else 1


def _solve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.max == (args.tg is not None):
        parser.error("give exactly one of --tg or --max")
    if args.max and args.cap is None:
        parser.error("--max requires --cap")
    try:
        if args.max:
            length = max_winnable(args.pebbles, args.erasures, args.cap, args.state_limit)
            out = {"max_winnable": length, "pebbles": args.pebbles, "erasures": args.erasures, "cap": args.cap}
        else:
            length = args.tg
        result = winnable(
            SearchConfig(length, args.pebbles, args.erasures, args.state_limit, want_witness=bool(args.witness))
        )
    except StateLimitExceeded as exc:
        sys.stdout.write(dumps_canonical({"winnable": None, "states_visited": exc.states_visited}))
        print(str(exc), file=sys.stderr)
        return 1
    except ParameterError as exc:
        parser.error(str(exc))
    if not args.max:
        out = result.to_dict()
    if args.witness and result.witness is not None:
        result.witness.save(args.witness)
    sys.stdout.write(dumps_canonical(out))
    return 0


def _simulate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        machine = builtin_machine(args.machine, args.width)
    except ParameterError as exc:
        parser.error(str(exc))
    try:
        schedule = Schedule.load(args.schedule)
    except (OSError, ScheduleFormatError) as exc:
        print(f"cannot read schedule: {exc}", file=sys.stderr)
        return 1
    try:
        report = execute(machine, args.input, schedule, args.segment_len)
    except (SimulationError, GameError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    expected = direct_run(machine, args.input, schedule.params.game_length, args.segment_len)
    ok = report.final == expected
    out = report.to_dict()
    out["cross_check"] = ok
    sys.stdout.write(dumps_canonical(out))
    if not ok:
        print("final checkpoint differs from the direct run", file=sys.stderr)
    return 0 if ok else 1


def _tradeoff(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.n < 2:
        parser.error("--n must be >= 2")
    try:
        rows = strategies.tradeoff_table(args.n)
    except AssertionError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    text = strategies.tradeoff_csv(rows) if args.format == "csv" else strategies.tradeoff_json(rows)
    _emit(text, args.out)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = args.subparser
    if args.command == "generate":
        return _generate(args, sub)
    if args.command == "validate":
        return _validate(args)
    if args.command == "solve":
        return _solve(args, sub)
    if args.command == "simulate":
        return _simulate(args, sub)
    return _tradeoff(args, sub)


if __name__ == "__main__":
    sys.exit(main())
