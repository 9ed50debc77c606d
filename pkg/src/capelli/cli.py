"""Command line entry point: ``capelli verify capelli --n 3 --json`` and friends."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .configs import (
    config_from_json,
    config_to_json,
    diagram,
    enumerate_configs,
    fiber,
    in_class,
    lambda_step,
)
from .identities import (
    IDENTITIES,
    PINNABLE,
    ConventionError,
    ledger_path,
    pin_convention,
    run_identity,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _identity(name: str) -> str:
    key = name.replace("-", "_")
    if key not in IDENTITIES:
        raise UsageError(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)}")
    return key


def _load_config(path: str, n: int):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc.strerror}") from exc
    try:
        config = config_from_json(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed config JSON in {path!r}: {exc}") from exc
    if config.n != n:
        raise UsageError(f"config has n={config.n} but --n {n} was given")
    return config


def cmd_verify(args) -> int:
    identity = _identity(args.identity)
    try:
        report = run_identity(
            identity, args.n, m=args.m, s=args.s, allow_large=args.allow_large, perturb=args.perturb_offset
        )
    except ConventionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(report.to_json() if args.json else report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_enumerate(args) -> int:
    m = 1 if args.cls is None else args.cls
    try:
        configs = enumerate_configs(args.n, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for c in configs:
        print(config_to_json(c))
        if args.diagram:
            print(diagram(c))
            print()
    print(f"# {len(configs)} configurations in C^{m} for n={args.n}", file=sys.stderr)
    return EXIT_OK


def cmd_trace(args) -> int:
    c = _load_config(args.config, args.n)
    print("start")
    print(diagram(c))
    for m in range(1, c.n + 1):
        if not in_class(c, m):
            raise UsageError(f"configuration left C^{m} during the trace")
        nxt = lambda_step(c, m)
        status = "unchanged" if nxt == c else "changed"
        print()
        print(f"Lambda^{m}: {status}")
        if nxt != c:
            print(diagram(nxt))
        c = nxt
    print()
    print("result")
    print(config_to_json(c))
    return EXIT_OK


def cmd_fiber(args) -> int:
    c = _load_config(args.config, args.n)
    try:
        preimages = fiber(c, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for pre in preimages:
        print(config_to_json(pre))
    return EXIT_OK


def cmd_pin(args) -> int:
    identity = _identity(args.identity)
    if identity not in PINNABLE:
        raise UsageError(f"{identity} has no convention to pin; choose from {', '.join(PINNABLE)}")
    try:
        conv = pin_convention(identity, args.n, args.m)
    except ConventionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"{identity}: {conv.describe()}")
    print(f"# written to {ledger_path()}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="capelli", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify one identity exactly")
    p.add_argument("identity", help=", ".join(IDENTITIES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--allow-large", action="store_true", help="permit n=4")
    p.add_argument("--perturb-offset", type=int, default=0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("configs-enumerate", help="list the configurations in C^M")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", type=int, metavar="M")
    p.add_argument("--diagram", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("configs-trace", help="run Lambda step by step on a configuration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--config", required=True, metavar="FILE")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("fiber", help="preimages of a configuration under Lambda^M")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--config", required=True, metavar="FILE")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("pin", help="search and record a convention in the ledger")
    p.add_argument("identity", help=", ".join(PINNABLE))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_pin)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
