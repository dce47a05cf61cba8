"""
ornapop: command-line entry point.

Bootstraps services, registers the command modules, dispatches one
subcommand and maps failures onto exit codes.
"""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from ornapop.combinatorics.errors import (
    DomainError,
    IntegrityError,
    ResourceError,
    TreeParseError,
)
from ornapop.commands import count as count_commands
from ornapop.commands import image as image_commands
from ornapop.commands import lattice as lattice_commands
from ornapop.commands import orbit as orbit_commands
from ornapop.commands import pop as pop_commands
from ornapop.commands import tree as tree_commands
from ornapop.commands import verify as verify_commands
from ornapop.commands.common import ExitCode, report
from ornapop.config.settings import settings
from ornapop.services.lattice_service import LatticeService
from ornapop.services.verification_service import VerificationService
from ornapop.telemetries.logger import FORMAT as LOG_FORMAT
from ornapop.telemetries.logger import logger as structured_logger

logger = logging.getLogger(__name__)

COMMAND_MODULES = (
    tree_commands,
    lattice_commands,
    pop_commands,
    orbit_commands,
    image_commands,
    count_commands,
    verify_commands,
)


# ── Logging ──


def configure_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if (settings.DEBUG or verbose) else settings.LOG_LEVEL.upper()
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(level)
    structured_logger.set_level(level)


# ── Argument parsing ──


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ornapop",
        description="Ornamentation lattices of rooted plane trees and the pop-stack operator.",
    )
    parser.add_argument("--threads", type=int, default=None, help="Worker threads for enumeration and verify")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


# ── Application lifecycle ──


async def run(args: argparse.Namespace) -> int:
    """Initialise services, wire them into the commands, dispatch, shut down."""
    lattice_service = LatticeService(threads=args.threads)
    verification_service = VerificationService(lattices=lattice_service, threads=args.threads)

    await lattice_service.initialize()
    await verification_service.initialize()
    lattice_commands.configure(lattices=lattice_service)
    orbit_commands.configure(lattices=lattice_service)
    count_commands.configure(lattices=lattice_service)
    verify_commands.configure(verifier=verification_service)

    try:
        logger.debug("Dispatching %s", args.command)
        return int(await args.handler(args))
    finally:
        await verification_service.shutdown()
        await lattice_service.shutdown()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)

    configure_logging(args.verbose)
    if args.threads is not None and args.threads < 1:
        report("error: --threads must be at least 1")
        return ExitCode.MALFORMED

    try:
        return asyncio.run(run(args))
    except TreeParseError as exc:
        report(f"parse error: {exc}")
        return ExitCode.MALFORMED
    except (DomainError, ResourceError) as exc:
        report(f"error: {exc}")
        return ExitCode.MALFORMED
    except ValidationError as exc:
        report(f"invalid input: {exc}")
        return ExitCode.MALFORMED
    except OSError as exc:
        report(f"error: {exc}")
        return ExitCode.MALFORMED
    except IntegrityError as exc:
        structured_logger.error("integrity_failure", command=args.command, detail=str(exc))
        report(f"internal error: {exc}")
        return ExitCode.INTEGRITY


# ── Standalone run ──

if __name__ == "__main__":
    sys.exit(main())
