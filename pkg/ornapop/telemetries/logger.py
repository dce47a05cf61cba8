"""
Structured logger for the toolkit.

Events are an ``event_name`` followed by ``key=value`` pairs. Values that
are trees or ornamentations are rendered in their canonical text forms
(``((()))``, ``((())):[{0,1,2},{1},{2}]``) so log lines can be pasted back
into the CLI. Records go to stderr; stdout is reserved for results.
"""

from __future__ import annotations

import json
import logging
import sys
from typing import Any

FORMAT = "%(asctime)s │ %(levelname)-8s │ %(name)s │ %(message)s"


def _node_set(nodes: Any) -> str:
    return "{" + ",".join(str(v) for v in sorted(nodes)) + "}"


def render_value(value: Any) -> str:
    """Text form of one event field."""
    # Ornamentation: has a tree and a tuple of ornaments
    if hasattr(value, "ornaments") and hasattr(value, "tree"):
        ornaments = ",".join(_node_set(o) for o in value.ornaments)
        return f"{value.tree.render()}:[{ornaments}]"
    # RootedPlaneTree
    if hasattr(value, "render") and callable(value.render):
        return value.render()
    if isinstance(value, (set, frozenset)):
        return _node_set(value)
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value)
    return str(value)


class StructuredLogger:
    """Event logger on its own stderr handler, detached from the root logger."""

    def __init__(self, name: str = "ornapop") -> None:
        self._logger = logging.getLogger(name)
        if not self._logger.handlers:
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter(FORMAT))
            self._logger.addHandler(handler)
            self._logger.propagate = False

    def set_level(self, level: int | str) -> None:
        self._logger.setLevel(level)

    def format(self, event_name: str, **fields: Any) -> str:
        if not fields:
            return f"[{event_name}]"
        return f"[{event_name}] " + " ".join(f"{k}={render_value(v)}" for k, v in fields.items())

    # ── Levels ──

    def debug(self, event_name: str, **fields: Any) -> None:
        if self._logger.isEnabledFor(logging.DEBUG):
            self._logger.debug(self.format(event_name, **fields))

    def info(self, event_name: str, **fields: Any) -> None:
        if self._logger.isEnabledFor(logging.INFO):
            self._logger.info(self.format(event_name, **fields))

    def warning(self, event_name: str, **fields: Any) -> None:
        self._logger.warning(self.format(event_name, **fields))

    def error(self, event_name: str, **fields: Any) -> None:
        self._logger.error(self.format(event_name, **fields))


# Singleton instance
logger = StructuredLogger()
