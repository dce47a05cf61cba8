"""
``count --chain N --k K [--method recurrence|gf|brute] [--series]``

Size of the Pop^k image of the Tamari lattice on ``N`` nodes, or with
``--series`` the sizes for 0 … N nodes, one per line.
"""

from __future__ import annotations

import argparse
from typing import Optional

from ornapop.combinatorics.errors import DomainError, ResourceError
from ornapop.combinatorics.tamari import count_popk_images, gf_coefficients
from ornapop.combinatorics.trees import chain_tree
from ornapop.commands.common import ExitCode, emit_all
from ornapop.config.settings import settings
from ornapop.services.lattice_service import LatticeService

METHODS = ("recurrence", "gf", "brute")

_lattices: Optional[LatticeService] = None


def configure(lattices: LatticeService) -> None:
    global _lattices
    _lattices = lattices


def _service() -> LatticeService:
    if _lattices is None or not _lattices.is_initialized:
        raise RuntimeError("lattice service unavailable")
    return _lattices


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("count", help="Count Pop^k images of Tamari lattices")
    parser.add_argument("--chain", type=int, required=True, help="Number of chain nodes N")
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--method", choices=METHODS, default="recurrence")
    parser.add_argument("--series", action="store_true", help="Print the values for 0..N")
    parser.set_defaults(handler=handle)


async def _brute(n: int, k: int) -> int:
    if n == 0:
        # O of the empty tree has a single element.
        return 1
    images = await _service().popk_image(chain_tree(n), k)
    return len(images)


async def handle(args: argparse.Namespace) -> int:
    n, k = args.chain, args.k
    if n < 0 or k < 0:
        raise DomainError("--chain and --k must be non-negative")
    sizes = range(n + 1) if args.series else [n]

    if args.method == "recurrence":
        values = [count_popk_images(m, k) for m in sizes]
    elif args.method == "gf":
        coefficients = gf_coefficients(k, n)
        values = [coefficients[m] for m in sizes]
    else:
        if n > settings.BRUTE_COUNT_MAX_CHAIN:
            raise ResourceError(
                f"brute counting on C_{n} exceeds the cap of {settings.BRUTE_COUNT_MAX_CHAIN} nodes"
            )
        values = [await _brute(m, k) for m in sizes]

    emit_all(str(v) for v in values)
    return ExitCode.OK
