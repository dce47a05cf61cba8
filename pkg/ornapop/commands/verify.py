"""
``verify [--max-nodes N] [--suite <name>]``: run the acceptance suites.
"""

from __future__ import annotations

import argparse
from typing import Optional

from ornapop.commands.common import ExitCode, emit, report
from ornapop.services.verification_service import SUITES, VerificationService

_verifier: Optional[VerificationService] = None


def configure(verifier: VerificationService) -> None:
    global _verifier
    _verifier = verifier


def _service() -> VerificationService:
    if _verifier is None or not _verifier.is_initialized:
        raise RuntimeError("verification service unavailable")
    return _verifier


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("verify", help="Run the self-verification suites")
    parser.add_argument("--max-nodes", type=int, default=None, help="Largest tree size to sweep")
    parser.add_argument("--suite", choices=SUITES, default=None, help="Run a single suite")
    parser.set_defaults(handler=handle)


async def handle(args: argparse.Namespace) -> int:
    result = await _service().run(max_nodes=args.max_nodes, suite=args.suite)
    for suite in result.suites:
        emit(f"{suite.name}: {'pass' if suite.passed else 'FAIL'} ({suite.instances} instances)")
        for failure in suite.failures:
            report(
                f"{failure.suite} | {failure.instance} | expected {failure.expected} | actual {failure.actual}"
            )
    return ExitCode.OK if result.passed else ExitCode.NEGATIVE
