"""
``enumerate --tree <paren> [--dot <path>] [--count-only]``
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Optional

from ornapop.combinatorics.lattice_lab import lattice_to_dot
from ornapop.commands.common import ExitCode, emit, emit_all, tree_argument
from ornapop.models.records import dump_line
from ornapop.services.lattice_service import LatticeService

logger = logging.getLogger(__name__)

# ── Module-level service reference (set via configure()) ──

_lattices: Optional[LatticeService] = None


def configure(lattices: LatticeService) -> None:
    """Wire services into this command module (called at startup)."""
    global _lattices
    _lattices = lattices


def _service() -> LatticeService:
    if _lattices is None or not _lattices.is_initialized:
        raise RuntimeError("lattice service unavailable")
    return _lattices


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("enumerate", help="Enumerate the ornamentation lattice of a tree")
    parser.add_argument("--tree", required=True, help="Balanced-parenthesis tree")
    parser.add_argument("--dot", type=Path, help="Write the Hasse diagram as DOT to this path")
    parser.add_argument("--count-only", action="store_true", help="Print only the number of elements")
    parser.set_defaults(handler=handle)


async def handle(args: argparse.Namespace) -> int:
    tree = tree_argument(args.tree)
    lattice = await _service().lattice(tree)
    if args.dot is not None:
        args.dot.write_text(lattice_to_dot(lattice), encoding="utf-8")
        logger.info("Wrote DOT for %s to %s", tree.render(), args.dot)
    if args.count_only:
        emit(str(len(lattice)))
    else:
        emit_all(dump_line(d) for d in lattice.elements)
    return ExitCode.OK
