"""
Shared plumbing for the command modules: exit codes and output streams.

Results go to stdout, one value per line; witnesses and diagnostics go to
stderr.
"""

from __future__ import annotations

import sys
from enum import IntEnum
from typing import Iterable

from ornapop.combinatorics.trees import RootedPlaneTree, parse_tree


class ExitCode(IntEnum):
    OK = 0
    INTEGRITY = 1
    MALFORMED = 2
    NEGATIVE = 3


def emit(*lines: str) -> None:
    for line in lines:
        sys.stdout.write(line + "\n")


def emit_all(lines: Iterable[str]) -> None:
    emit(*lines)


def report(line: str) -> None:
    sys.stderr.write(line + "\n")


def tree_argument(text: str) -> RootedPlaneTree:
    return parse_tree(text)
