"""
Base class for the toolkit's services.

A service owns cached state (enumerated lattices, suite registries) for
the lifetime of one CLI invocation. Subclasses implement
``health_check`` and may extend ``initialize`` / ``shutdown``.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from types import TracebackType
from typing import Optional

logger = logging.getLogger(__name__)


class BaseService(ABC):
    """Abstract base for every service."""

    _initialized: bool = False

    # ── Lifecycle ──

    async def initialize(self) -> None:
        """Called once before the first command runs."""
        logger.debug("%s initialising…", self.name)
        self._initialized = True

    async def shutdown(self) -> None:
        """Called once after the command finished; drop cached state here."""
        logger.debug("%s shutting down…", self.name)
        self._initialized = False

    async def __aenter__(self) -> BaseService:
        await self.initialize()
        return self

    async def __aexit__(
        self,
        exc_type: Optional[type[BaseException]],
        exc: Optional[BaseException],
        tb: Optional[TracebackType],
    ) -> None:
        await self.shutdown()

    @abstractmethod
    async def health_check(self) -> bool:
        """Return ``True`` if the service can serve requests."""
        ...

    # ── Helpers ──

    @property
    def name(self) -> str:
        return self.__class__.__name__

    @property
    def is_initialized(self) -> bool:
        return self._initialized

    def _ensure_initialized(self) -> None:
        if not self._initialized:
            raise RuntimeError(
                f"{self.name} has not been initialised. "
                "Call `await service.initialize()` first."
            )
