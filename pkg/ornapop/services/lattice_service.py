"""
Lattice service: enumerated ornamentation lattices, memoized per tree,
and the brute-force oracles that run on them.
"""

from __future__ import annotations

import asyncio
import threading
from typing import Optional

from ornapop.combinatorics.lattice_lab import (
    LatticeGraph,
    brute_max_orbit,
    brute_popk_image,
    enumerate_lattice,
)
from ornapop.combinatorics.ornamentation import Ornamentation
from ornapop.combinatorics.trees import RootedPlaneTree
from ornapop.config.settings import settings
from ornapop.services.base.base_service import BaseService
from ornapop.telemetries.logger import logger

EVENT = "lattice_service"


class LatticeService(BaseService):
    """
    Keeps every ``LatticeGraph`` built during a run, keyed by the tree's
    canonical parenthesis string.

    ``get`` is safe to call from worker threads; the async helpers push
    enumeration off the event loop with ``asyncio.to_thread``.
    """

    def __init__(self, threads: Optional[int] = None) -> None:
        self._threads = threads
        self._lattices: dict[str, LatticeGraph] = {}
        self._lock = threading.Lock()

    # ── Lifecycle ──

    async def shutdown(self) -> None:
        self._lattices.clear()
        await super().shutdown()

    async def health_check(self) -> bool:
        return self.is_initialized

    @property
    def threads(self) -> int:
        return self._threads or settings.THREADS

    @property
    def cached(self) -> int:
        return len(self._lattices)

    # ── Lattices ──

    def get(self, tree: RootedPlaneTree) -> LatticeGraph:
        """Enumerate O(tree) once per run."""
        self._ensure_initialized()
        key = tree.render()
        lattice = self._lattices.get(key)
        if lattice is not None:
            return lattice
        lattice = enumerate_lattice(tree, threads=self.threads)
        with self._lock:
            # Another worker may have finished first; keep the first copy.
            lattice = self._lattices.setdefault(key, lattice)
        logger.debug(EVENT, message=f"Cached lattice of {key}", size=len(lattice))
        return lattice

    async def lattice(self, tree: RootedPlaneTree) -> LatticeGraph:
        return await asyncio.to_thread(self.get, tree)

    # ── Oracles ──

    async def popk_image(self, tree: RootedPlaneTree, k: int) -> list[Ornamentation]:
        lattice = await self.lattice(tree)
        return await asyncio.to_thread(brute_popk_image, lattice, k)

    async def max_orbit(self, tree: RootedPlaneTree) -> int:
        lattice = await self.lattice(tree)
        return await asyncio.to_thread(brute_max_orbit, lattice)
