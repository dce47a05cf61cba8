"""
``pop --input <file> [--times K]``: apply Pop^K to every record.
"""

from __future__ import annotations

import argparse

from ornapop.combinatorics.rank_orbit import pop_power
from ornapop.commands.common import ExitCode, emit_all
from ornapop.models.records import dump_line, load_ornamentations


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("pop", help="Apply the pop-stack operator")
    parser.add_argument("--input", required=True, help="Ornamentation records, one JSON object per line")
    parser.add_argument("--times", type=int, default=1, help="Number of applications (default 1)")
    parser.set_defaults(handler=handle)


async def handle(args: argparse.Namespace) -> int:
    elements = load_ornamentations(args.input)
    emit_all(dump_line(pop_power(d, args.times)) for d in elements)
    return ExitCode.OK
