"""Command-line driver.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import catalog, twist
from .catalog import RankTooSmall, UnknownName
from .engine import DEFAULT_MAX_STEPS, EngineError, Presentation, diamond_check, normalize
from .parse import ParseError, parse_element
from .presentation_io import FormatError, read_presentation, write_presentation

NAMES = sorted(catalog.BUILDERS) + ["smashA"]


class UsageError(Exception):
    pass


def _shorthand(spec: str) -> tuple[str, int] | None:
    m = re.fullmatch(r"([A-Za-z_]+?)(\d+)", spec)
    if m and m.group(1) in NAMES:
        return m.group(1), int(m.group(2))
    return None


def _guard(rank: int, args) -> None:
    if rank > args.max_rank:
        raise UsageError(f"rank {rank} exceeds --max-rank {args.max_rank}")


def _build(name: str, rank: int, args) -> Presentation:
    _guard(rank, args)
    try:
        return catalog.build_named(name, rank)
    except UnknownName:
        raise UsageError(f"unknown algebra {name!r}; choose from {', '.join(NAMES)}") from None
    except RankTooSmall as exc:
        raise UsageError(str(exc)) from None


def load_algebra(spec: str, args) -> Presentation:
    """A presentation file, or a catalog shorthand such as ``euclidean3``."""
    path = Path(spec)
    if path.exists():
        return read_presentation(path)
    short = _shorthand(spec)
    if short is None:
        raise UsageError(f"{spec!r} is neither a file nor a name like euclidean3")
    return _build(*short, args)


def cmd_build(args) -> int:
    p = _build(args.name, args.rank, args)
    if args.out:
        write_presentation(p, args.out)
    else:
        from .presentation_io import dumps
        sys.stdout.write(dumps(p))
    return 0


def cmd_normalize(args) -> int:
    p = load_algebra(args.algebra, args)
    names = p.names
    x = parse_element(args.expr, names)
    system = p.rewrite_system()

    def show(step):
        w = "*".join(names[g] for g in step.word)
        print(f"rewrite {w} at {step.position}: {names[step.word[step.position]]}*"
              f"{names[step.word[step.position + 1]]} -> {step.replacement.format(names)}", file=sys.stderr)

    y = normalize(x, system, strategy=args.strategy, max_steps=args.max_steps,
                  trace=show if args.trace else None)
    print(y.format(names))
    return 0


def cmd_confluence(args) -> int:
    p = load_algebra(args.algebra, args)
    failed = diamond_check(p.rewrite_system(), max_steps=args.max_steps)
    names = p.names
    if args.json:
        print(json.dumps({"algebra": p.name, "rank": p.rank, "generators": p.size,
                          "failed_triples": [list(t) for t in failed]}, sort_keys=True))
    elif failed:
        for t in failed:
            print("failed " + " ".join(names[g] for g in t))
    else:
        print(f"{p.name}({p.rank}): confluent, {p.size} generators")
    return 1 if failed else 0


def _verify(claim: str, rank: int, args) -> twist.Report:
    _guard(rank, args)
    try:
        twist.check_claim_rank(claim, rank)
    except twist.UnknownClaim:
        raise UsageError(f"unknown claim {claim!r}; choose from {', '.join(twist.claim_ids())}") from None
    except RankTooSmall as exc:
        raise UsageError(str(exc)) from None
    return twist.verify_claim(claim, rank, max_steps=args.max_steps)


def _print_report(rep: twist.Report) -> None:
    print(f"{rep.claim} rank {rep.rank}: {rep.status}")
    for line in rep.diff:
        print(f"  {line}")
    if rep.failed_triples:
        print(f"  failed triples: {rep.failed_triples}")


def cmd_verify(args) -> int:
    rep = _verify(args.claim, args.rank, args)
    if args.json:
        print(json.dumps(rep.bundle(meta=not args.no_meta), sort_keys=True))
    else:
        _print_report(rep)
    return 0 if rep.passed else 1


def cmd_report(args) -> int:
    claims = twist.claim_ids() if args.all else sorted(args.claims)
    if not claims:
        raise UsageError("give claim ids or --all")
    for c in claims:
        if c not in twist.CLAIMS:
            raise UsageError(f"unknown claim {c!r}")
    _guard(args.rank, args)
    reports = []
    for c in claims:
        if args.rank < twist.CLAIMS[c][0]:
            raise UsageError(f"{c} needs rank >= {twist.CLAIMS[c][0]}")
        reports.append(_verify(c, args.rank, args))
    if args.json:
        print(json.dumps([r.bundle(meta=not args.no_meta) for r in reports], sort_keys=True))
    else:
        for r in reports:
            _print_report(r)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS,
                        help="rule applications allowed per normalization")
    common.add_argument("--max-rank", type=int, default=8, help="refuse ranks above this")

    parser = argparse.ArgumentParser(prog="qpbw", description="PBW presentations over Laurent polynomials")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="write a catalog presentation")
    p.add_argument("name", choices=NAMES)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("normalize", parents=[common], help="PBW normal form of an expression")
    p.add_argument("--algebra", required=True, help="presentation file or shorthand like euclidean3")
    p.add_argument("--expr", required=True)
    p.add_argument("--trace", action="store_true", help="print each rewrite step to stderr")
    p.add_argument("--strategy", choices=["leftmost", "rightmost"], default="leftmost")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("confluence", parents=[common], help="run the diamond check")
    p.add_argument("--algebra", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_confluence)

    p = sub.add_parser("verify", parents=[common], help="verify one claim")
    p.add_argument("claim")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-meta", action="store_true", help="omit timing from the JSON bundle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", parents=[common], help="verify several claims")
    p.add_argument("claims", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-meta", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, ParseError, FormatError, EngineError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
