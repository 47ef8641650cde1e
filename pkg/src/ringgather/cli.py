"""Command-line entry point: ``ringgather classify|run|verify|suir-verify``.

Exit status is 0 on success, 1 when a verification sweep finds a failure
and 2 on bad arguments.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .ring import GroundState, parse_config
from .sim import CrashSchedule, render_frame, run, write_trace
from .suig import AlgorithmVariant
from .symmetry import classify, ne_roles, node_edge_axis, quasi_axes, reflection_axes
from .verify import default_jobs, verify_suig, verify_suir, write_report


class UsageError(Exception):
    pass


def parse_range(text: str, parity: int | None = None) -> list[int]:
    """``7``, ``5..11`` (inclusive) or ``5,7,9``.

    With ``parity`` a range keeps only the members of that parity; listed
    values are passed through so that the callee can reject them.
    """
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split(".."))
            out = [v for v in range(lo, hi + 1) if parity is None or v % 2 == parity]
            if not out:
                raise UsageError(f"empty range {text!r}")
            return out
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"not an integer or range: {text!r}") from None


def _pair(p) -> str:
    return "{" + ",".join(str(i) for i in sorted(set(p))) + "}"


def describe(text: str) -> list[str]:
    config = parse_config(text)
    cls = classify(config)
    axes = reflection_axes(config)
    if cls.tag in ("Gathered", "L2", "P", "Other") or config.n % 2 == 0:
        line = str(cls)
        if axes:
            line += " axes=" + ",".join(str(a) for a in axes)
        lines = [line]
    elif cls.is_ne:
        axis = node_edge_axis(config)
        roles = ne_roles(config, axis)
        line = f"{cls} {axis} target={roles.target} main={_pair(roles.main)}"
        if roles.secondary is not None:
            line += f" secondary={_pair(roles.secondary)}"
        lines = [line]
    else:
        lines = [str(cls)]
    if config.n % 2 == 1 and not cls.is_ne and cls.tag not in ("Gathered", "P"):
        for q in quasi_axes(config):
            lines.append(
                f"  quasi {q.axis} r={q.r} r'={q.r_prime} target={q.target} "
                f"gap={q.gap_distance} leading={q.leading} orientation={q.orientation.name}"
            )
    return lines


def _cmd_classify(args) -> int:
    for line in describe(args.config):
        print(line)
    return 0


def _cmd_run(args) -> int:
    config = parse_config(args.config)
    if (args.crash_round is None) != (args.crash_node is None):
        raise UsageError("--crash-round and --crash-node go together")
    crash = None
    if args.crash_node is not None:
        crash = CrashSchedule(args.crash_round, args.crash_node)
    variant = AlgorithmVariant.SUIG_RING if config.n % 2 else AlgorithmVariant.SUIR_SHORTEST_PATH
    trace, outcome = run(GroundState.distinct(config), crash, variant, args.max_rounds)
    if args.render:
        for entry in trace:
            print(render_frame(entry))
    if args.json:
        with open(args.json, "w") as fh:
            write_trace(trace, fh)
    print(outcome)
    return 0


def _cmd_verify(args) -> int:
    ns = parse_range(args.n, parity=1)
    ks = parse_range(args.k) if args.k else None
    jobs = args.jobs or default_jobs()
    sweeps = []
    for n in ns:
        sweep = verify_suig(n, ks if ks is None else [k for k in ks if k <= n], args.crash, jobs)
        sweeps.append(sweep)
        print(f"n={n} " + " ".join(f"{key}={val}" for key, val in sweep.summary().items()) + f" ok={sweep.ok}")
    if args.report:
        with open(args.report, "w") as fh:
            for sweep in sweeps:
                write_report(sweep, fh)
    return 0 if all(s.ok for s in sweeps) else 1


def _cmd_suir(args) -> int:
    sweeps = []
    for n in parse_range(args.n, parity=0):
        sweep = verify_suir(n)
        sweeps.append(sweep)
        print(f"n={n} " + " ".join(f"{key}={val}" for key, val in sweep.summary().items()) + f" ok={sweep.ok}")
    return 0 if all(s.ok for s in sweeps) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ringgather", description="Crash-tolerant gathering on rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a configuration literal")
    p.add_argument("--config", required=True, help='e.g. "n=9;occ=0,2,7" or a bit string')
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("run", help="execute one traced run")
    p.add_argument("--config", required=True)
    p.add_argument("--crash-round", type=int)
    p.add_argument("--crash-node", type=int)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--render", action="store_true", help="print an ASCII frame per round")
    p.add_argument("--json", metavar="PATH", help="write the JSON-lines trace here")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("verify", help="exhaustive sweep of the ring gathering rule")
    p.add_argument("--n", required=True, help="odd ring size or range, e.g. 9 or 5..11")
    p.add_argument("--k", help="robot counts, e.g. 4..8 (default 4..n)")
    p.add_argument("--crash", choices=("all", "none"), default="all")
    p.add_argument("--jobs", type=int, default=0, help="worker processes (default: all cores)")
    p.add_argument("--report", metavar="PATH", help="write JSON-lines scenario reports here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("suir-verify", help="exhaustive sweep of two-robot rendezvous")
    p.add_argument("--n", required=True, help="even ring size or range")
    p.set_defaults(func=_cmd_suir)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"ringgather {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
