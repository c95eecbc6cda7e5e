"""Command-line scenario runner.

Subcommands: single, two, sweep, frames run a scenario from a config
file; catalog lists the bundled figure scenarios or runs one by name.
Exit codes: 0 success, 2 validation failure, 3 numerical-guard failure
(norm drift, domain leakage, incomplete scattering, grid gate), 4 I/O.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .errors import (
    DomainLeakageError,
    GridError,
    NormDriftError,
    ScatteringIncompleteError,
    ScenarioValidationError,
)
from .runners import RUNNERS, run_scenario
from .scenario import catalog_names, load_catalog_scenario, parse_scenario

_KIND_OF_COMMAND = {
    "single": "single",
    "two": "two_particle",
    "sweep": "sweep",
    "frames": "frames",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homwell",
        description="Delta-well beam splitter: wave-packet scattering and "
        "two-particle interference scenarios",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, kind in _KIND_OF_COMMAND.items():
        p = sub.add_parser(command, help=f"run a {kind} scenario from a config file")
        p.add_argument("--config", required=True, help="scenario config file")
        _common_flags(p)
    pc = sub.add_parser("catalog", help="list bundled scenarios or run one by name")
    pc.add_argument("name", nargs="?", help="catalog scenario to run")
    _common_flags(pc)
    return parser


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.add_argument(
        "--mode",
        choices=("exact", "approximate"),
        default=None,
        help="override the scenario's coefficient mode",
    )


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "catalog" and args.name is None:
            for name in catalog_names():
                scenario = load_catalog_scenario(name)
                print(f"{name}\t{scenario.kind}\tmode={scenario.mode}")
            return 0
        if args.command == "catalog":
            scenario = load_catalog_scenario(args.name)
        else:
            scenario = parse_scenario(args.config)
            expected = _KIND_OF_COMMAND[args.command]
            if scenario.kind != expected:
                raise ScenarioValidationError(
                    [f"subcommand {args.command!r} needs kind={expected!r}, "
                     f"config has {scenario.kind!r}"]
                )
        if args.mode is not None:
            scenario = replace(scenario, mode=args.mode)
        out_dir = args.out or scenario.out_dir or f"out/{scenario.name}"
        written = run_scenario(scenario, Path(out_dir), threads=args.threads)
        print(f"{scenario.name}: wrote {len(written)} files to {out_dir}")
        return 0
    except ScenarioValidationError as exc:
        for line in exc.violations:
            print(f"validation: {line}", file=sys.stderr)
        return 2
    except (GridError, DomainLeakageError, NormDriftError, ScatteringIncompleteError) as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
