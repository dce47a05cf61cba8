"""
Orbit commands:

* ``orbit --input <file>``: forward orbit of each record, then its size;
* ``max-orbit --tree <paren> [--oracle]``: closed-form maximum orbit size;
* ``dagger --tree <paren>``: the extremal element and its orbit size.
"""

from __future__ import annotations

import argparse
from typing import Optional

from ornapop.combinatorics.rank_orbit import build_delta_dagger, forward_orbit, max_orbit_size
from ornapop.commands.common import ExitCode, emit, emit_all, report, tree_argument
from ornapop.models.records import dump_line, load_ornamentations
from ornapop.services.lattice_service import LatticeService

_lattices: Optional[LatticeService] = None


def configure(lattices: LatticeService) -> None:
    global _lattices
    _lattices = lattices


def _service() -> LatticeService:
    if _lattices is None or not _lattices.is_initialized:
        raise RuntimeError("lattice service unavailable")
    return _lattices


def register(subparsers: argparse._SubParsersAction) -> None:
    orbit = subparsers.add_parser("orbit", help="Print the forward Pop orbit")
    orbit.add_argument("--input", required=True, help="Ornamentation records")
    orbit.set_defaults(handler=handle_orbit)

    max_orbit = subparsers.add_parser("max-orbit", help="Maximum forward-orbit size of Pop on O(T)")
    max_orbit.add_argument("--tree", required=True)
    max_orbit.add_argument("--oracle", action="store_true", help="Also enumerate O(T) and compare")
    max_orbit.set_defaults(handler=handle_max_orbit)

    dagger = subparsers.add_parser("dagger", help="Emit the element with the longest orbit")
    dagger.add_argument("--tree", required=True)
    dagger.set_defaults(handler=handle_dagger)


async def handle_orbit(args: argparse.Namespace) -> int:
    for delta in load_ornamentations(args.input):
        orbit = forward_orbit(delta)
        emit_all(dump_line(d) for d in orbit)
        emit(str(len(orbit)))
    return ExitCode.OK


async def handle_max_orbit(args: argparse.Namespace) -> int:
    tree = tree_argument(args.tree)
    value = max_orbit_size(tree)
    emit(str(value))
    if not args.oracle:
        return ExitCode.OK
    brute = await _service().max_orbit(tree)
    emit(str(brute))
    if brute != value:
        report(f"formula {value} disagrees with enumeration {brute}")
        return ExitCode.NEGATIVE
    return ExitCode.OK


async def handle_dagger(args: argparse.Namespace) -> int:
    delta = build_delta_dagger(tree_argument(args.tree))
    emit(dump_line(delta), str(len(forward_orbit(delta))))
    return ExitCode.OK
