"""Shared fixtures for the test suite."""

from __future__ import annotations

from functools import lru_cache

import pytest

from ornapop.combinatorics.lattice_lab import LatticeGraph, enumerate_lattice
from ornapop.combinatorics.ornamentation import Ornamentation
from ornapop.combinatorics.tamari import GSequence
from ornapop.combinatorics.trees import RootedPlaneTree, chain_tree, parse_tree
from ornapop.config.settings import settings


def g(*values: int) -> Ornamentation:
    """Chain element from its 1-based g-sequence."""
    return GSequence.of(values).to_ornamentation()


@lru_cache(maxsize=None)
def lattice(paren: str) -> LatticeGraph:
    return enumerate_lattice(parse_tree(paren))


@pytest.fixture
def c3() -> RootedPlaneTree:
    return chain_tree(3)


@pytest.fixture
def star() -> RootedPlaneTree:
    return parse_tree("(()()())")


@pytest.fixture
def fork() -> RootedPlaneTree:
    """root - a - {b, c}"""
    return parse_tree("((()()))")


@pytest.fixture
def override_settings(monkeypatch: pytest.MonkeyPatch):
    """``override_settings(NAME=value, ...)`` for the duration of a test."""

    def apply(**values: object) -> None:
        for name, value in values.items():
            monkeypatch.setattr(settings, name, value)

    return apply
