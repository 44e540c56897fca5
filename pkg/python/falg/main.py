"""
falg — Free Cartan-Lie algebroid engine, command-line front end

Loads a problem spec (JSON), runs one computation or identity check and
prints a deterministic report. Exit codes: 0 every identity holds, 1 some
identity failed, 2 bad input.

Usage:
    python main.py validate --spec euclidean_rotations
    python main.py dims 3 4 almost
    python main.py expand --spec chi_plane --depth 4
    python main.py check-cartan --spec noncartan_rank2
    python main.py check-jacobi --spec euclidean_rotations --depth 4
    python main.py check-compat --spec euclidean_rotations --tensor g
    python main.py check-invariance --spec euclidean_rotations --tensor g --depth 3
    python main.py check-rep --spec euclidean_rotations --tensor g
    python main.py morphism --spec euclidean_rotations --target iso3 --depth 3
"""

import sys
import os
import argparse
import json
import logging
from typing import Optional, Sequence, Tuple

# Add repo root so common.python imports work
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from common.python.log_setup import set_console_level, setup_logging
from common.python.version import get_version

from errors import FalgError
from algebra.brackets import FLAVORS
from commands.base import Command, Options
from commands.check_cartan import CheckCartanCommand
from commands.check_compat import CheckCompatCommand
from commands.check_invariance import CheckInvarianceCommand
from commands.check_jacobi import CheckJacobiCommand
from commands.check_rep import CheckRepCommand
from commands.dims import DimsCommand
from commands.expand import ExpandCommand
from commands.morphism import MorphismCommand
from commands.validate import ValidateCommand
from problem_spec import load_spec
from report import EXIT_INPUT_ERROR, Report

logger = setup_logging("cli")

COMMANDS = {
    command.name: command
    for command in (
        ValidateCommand(),
        DimsCommand(),
        ExpandCommand(),
        CheckCartanCommand(),
        CheckJacobiCommand(),
        CheckCompatCommand(),
        CheckInvarianceCommand(),
        CheckRepCommand(),
        MorphismCommand(),
    )
}


def run_command(spec_path: Optional[str], command: str, options: Options) -> Tuple[int, Report]:
    """Run one command; raises FalgError / OSError on bad input."""
    try:
        handler: Command = COMMANDS[command]
    except KeyError:
        raise FalgError(f"unknown command {command!r} (choose from {', '.join(COMMANDS)})") from None
    spec = None
    if handler.needs_spec:
        if not spec_path:
            raise FalgError(f"{command} needs --spec FILE")
        spec = load_spec(spec_path)
    logger.info("running %s on %s", command, spec.path.name if spec else "-")
    report = handler.run(spec, options)
    logger.info("%s: %s", command, report.summary() or "done")
    return report.exit_code, report


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="falg", description="falg — free Cartan-Lie algebroid engine")
    parser.add_argument("command", choices=sorted(COMMANDS), help="What to compute or check")
    parser.add_argument("arguments", nargs="*", help="Positional arguments (dims: m D [flavor])")
    parser.add_argument("--spec", help="Problem spec JSON (bare names resolve to the shipped corpus)")
    parser.add_argument("--depth", type=_positive_int, help="Truncation depth D (default: from the problem spec)")
    parser.add_argument("--tensor", help="Tensor name from the problem spec")
    parser.add_argument("--target", help="Target algebroid name from the problem spec")
    parser.add_argument("--flavor", choices=FLAVORS,
                        help="almost or lie (default lie; check-jacobi defaults to almost)")
    parser.add_argument("--json", action="store_true", help="Emit the report as JSON")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    parser.add_argument("--version", action="version", version=get_version("FALG"))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    set_console_level(logging.DEBUG if args.verbose else logging.WARNING)
    logger.critical("%s starting...", get_version("FALG"))

    options = Options(depth=args.depth, tensor=args.tensor, target=args.target,
                      flavor=args.flavor, arguments=list(args.arguments))
    try:
        code, report = run_command(args.spec, args.command, options)
    except (FalgError, OSError) as e:
        logger.info("%s rejected input: %s", args.command, e)
        print(f"falg: error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except json.JSONDecodeError as e:
        print(f"falg: error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
