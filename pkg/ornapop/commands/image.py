"""
``image --input <file> [--k K] [--preimage]``

Membership of each record in the Pop^k image:

* ``k = 1``: the hug criterion, exact on every tree;
* chains: the Tamari characterization, exact for every ``k``;
* other trees with ``k ≥ 2``: only the necessary conditions are checked.

Members print ``member`` (or ``necessary-conditions-hold``); with
``--preimage`` a record σ with Pop^k(σ) = δ follows. Any non-member makes
the command exit 3 with its witnesses on stderr.
"""

from __future__ import annotations

import argparse
import logging

from ornapop.combinatorics.errors import DomainError
from ornapop.combinatorics.image import find_hug, label, pop_preimage, popk_necessary
from ornapop.combinatorics.ornamentation import Ornamentation
from ornapop.combinatorics.tamari import popk_certificate, tamari_popk_report
from ornapop.commands.common import ExitCode, emit, report
from ornapop.models.records import dump_line, load_ornamentations
from ornapop.models.reports import PopkReport

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("image", help="Pop^k image membership")
    parser.add_argument("--input", required=True, help="Ornamentation records")
    parser.add_argument("--k", type=int, default=1, help="Number of Pop applications (default 1)")
    parser.add_argument("--preimage", action="store_true", help="Emit a certifying preimage for members")
    parser.set_defaults(handler=handle)


def _report_failures(result: PopkReport) -> None:
    for failure in result.failures:
        report(f"{failure.condition.value}: {failure.detail}")


def _check(delta: Ornamentation, k: int, preimage: bool) -> bool:
    if k < 0:
        raise DomainError("--k must be non-negative")

    if k == 0:
        emit("member")
        if preimage:
            emit(dump_line(delta))
        return True

    if k == 1:
        hug = find_hug(delta)
        if hug is not None:
            v, u = hug
            report(f"{label(v)} hugs {label(u)}")
            return False
        emit("member")
        if preimage:
            emit(dump_line(pop_preimage(delta)))
        return True

    if delta.tree.is_chain:
        result = tamari_popk_report(delta, k)
        if not result.passed:
            _report_failures(result)
            return False
        emit("member")
        if preimage:
            emit(dump_line(popk_certificate(delta, k)))
        return True

    if preimage:
        raise DomainError("--preimage for k >= 2 is only available on chains")
    result = popk_necessary(delta, k)
    if not result.passed:
        _report_failures(result)
        return False
    logger.debug("Necessary conditions hold for k=%d; membership is not decided", k)
    emit("necessary-conditions-hold")
    return True


async def handle(args: argparse.Namespace) -> int:
    verdicts = [_check(d, args.k, args.preimage) for d in load_ornamentations(args.input)]
    return ExitCode.OK if all(verdicts) else ExitCode.NEGATIVE
