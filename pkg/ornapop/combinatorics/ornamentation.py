"""
Ornamentations of a rooted plane tree and the lattice operations on them.

An ornamentation assigns to every node ``v`` an ornament (a connected node
set whose unique maximal element is ``v``) such that any two ornaments are
nested or disjoint. Elements compare by pointwise inclusion; the meet is the
pointwise intersection.

Pop is computed per node from the minimal reductions: the ornament at ``v``
loses every maximal subornament that has no other maximal subornament
hanging below it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, reduce as fold
from typing import Iterable, Optional, Sequence

from ornapop.combinatorics.errors import DomainError
from ornapop.combinatorics.trees import NodeId, RootedPlaneTree
from ornapop.models.reports import ValidationReport, ViolationKind

Ornament = frozenset[NodeId]


class Comparison(str, Enum):
    LESS = "<"
    EQUAL = "="
    GREATER = ">"
    INCOMPARABLE = "incomparable"


class Ornamentation:
    """
    Immutable element of O(T).

    ``Ornamentation(tree, sets)`` validates both axioms and raises
    :class:`DomainError` on a violation. Internal code that already knows
    the result is valid uses :meth:`trusted`.
    """

    __slots__ = ("_tree", "_orn", "__dict__")

    def __init__(self, tree: RootedPlaneTree, ornaments: Sequence[Iterable[NodeId]]) -> None:
        sets = _as_sets(tree, ornaments)
        report = _check(tree, sets)
        if not report.ok:
            raise DomainError(f"not an ornamentation: {report.message}")
        self._tree = tree
        self._orn = sets

    @classmethod
    def trusted(cls, tree: RootedPlaneTree, ornaments: tuple[Ornament, ...]) -> Ornamentation:
        obj = cls.__new__(cls)
        obj._tree = tree
        obj._orn = ornaments
        return obj

    # ── Access ──

    @property
    def tree(self) -> RootedPlaneTree:
        return self._tree

    @property
    def ornaments(self) -> tuple[Ornament, ...]:
        return self._orn

    def __getitem__(self, v: NodeId) -> Ornament:
        return self._orn[v]

    @cached_property
    def key(self) -> tuple[tuple[NodeId, ...], ...]:
        """Canonical sorted form; also the canonical sort key of elements."""
        return tuple(tuple(sorted(o)) for o in self._orn)

    def is_singleton(self, v: NodeId) -> bool:
        return len(self._orn[v]) == 1

    # ── Structure ──

    @cached_property
    def wrappers(self) -> tuple[Optional[NodeId], ...]:
        """
        For every ``u`` the node whose ornament is the smallest one properly
        containing δ(u); ``None`` stands for the imaginary node ω.
        """
        out: list[Optional[NodeId]] = []
        for u in self._tree.nodes():
            w = self._tree.parent(u)
            while w is not None and u not in self._orn[w]:
                w = self._tree.parent(w)
            out.append(w)
        return tuple(out)

    def wrapped(self, v: Optional[NodeId]) -> list[NodeId]:
        """Nodes wrapped by ``v`` (``None`` = ω), ascending."""
        return [u for u, w in enumerate(self.wrappers) if w == v]

    def section(self, v: NodeId, child: NodeId) -> Ornament:
        """Δ_{δ(v)}(child): the part of δ(v) at or below ``child``."""
        return frozenset(x for x in self._orn[v] if self._tree.is_below(x, child))

    def section_children(self, v: NodeId) -> list[NodeId]:
        """ch_{δ(v)}(v) in plane order."""
        return [c for c in self._tree.children(v) if c in self._orn[v]]

    def relabeled(self, tree: RootedPlaneTree, mapping: Sequence[NodeId]) -> Ornamentation:
        """Transport along a node relabeling ``old -> new`` onto ``tree``."""
        moved: list[Ornament] = [frozenset()] * tree.n
        for v, o in enumerate(self._orn):
            moved[mapping[v]] = frozenset(mapping[x] for x in o)
        return Ornamentation(tree, moved)

    # ── Dunder ──

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Ornamentation)
            and self._tree == other._tree
            and self._orn == other._orn
        )

    def __hash__(self) -> int:
        return hash((self._tree, self._orn))

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, o)) + "}" for o in self.key)
        return f"Ornamentation({self._tree.render()!r}, [{body}])"


@dataclass(frozen=True)
class Anatomy:
    """Decomposition of one ornament δ(v)."""

    wrapped: tuple[NodeId, ...]
    subornaments: tuple[Ornament, ...]
    sections: dict[NodeId, Ornament]


# ── Validation ──


def _as_sets(tree: RootedPlaneTree, ornaments: Sequence[Iterable[NodeId]]) -> tuple[Ornament, ...]:
    if len(ornaments) != tree.n:
        raise DomainError(f"expected {tree.n} ornaments, got {len(ornaments)}")
    sets = tuple(frozenset(o) for o in ornaments)
    for o in sets:
        for x in o:
            tree.check_node(x)
    return sets


def _check(tree: RootedPlaneTree, sets: tuple[Ornament, ...]) -> ValidationReport:
    for v, o in enumerate(sets):
        if v not in o or any(not tree.is_below(x, v) for x in o):
            return ValidationReport(
                ok=False,
                kind=ViolationKind.TOP,
                nodes=[v],
                message=f"ornament at node {v} is not topped by {v}",
            )
        for x in sorted(o):
            if x != v and tree.parent(x) not in o:
                return ValidationReport(
                    ok=False,
                    kind=ViolationKind.CONNECTIVITY,
                    nodes=[v],
                    message=f"ornament at node {v} is not connected (node {x})",
                )
    for v in tree.nodes():
        for w in range(v + 1, tree.n):
            a, b = sets[v], sets[w]
            if a & b and not (a <= b or b <= a):
                return ValidationReport(
                    ok=False,
                    kind=ViolationKind.OVERLAP,
                    nodes=[v, w],
                    message=f"ornaments at nodes {v} and {w} overlap without nesting",
                )
    return ValidationReport(ok=True)


def validate(tree: RootedPlaneTree, ornaments: Sequence[Iterable[NodeId]]) -> ValidationReport:
    """
    Check both ornamentation axioms.

    Per-node axioms are checked first in index order, then pairs in
    lexicographic order; the report names the first violation.

    Raises:
        DomainError: wrong number of sets, or a set names an unknown node.
    """
    return _check(tree, _as_sets(tree, ornaments))


# ── Extremal elements ──


def delta_min(tree: RootedPlaneTree) -> Ornamentation:
    return Ornamentation.trusted(tree, tuple(frozenset((v,)) for v in tree.nodes()))


def delta_max(tree: RootedPlaneTree) -> Ornamentation:
    return Ornamentation.trusted(tree, tuple(frozenset(tree.descendants(v)) for v in tree.nodes()))


# ── Order and meet ──


def _same_tree(a: Ornamentation, b: Ornamentation) -> None:
    if a.tree != b.tree:
        raise DomainError("ornamentations live on different trees")


def compare(a: Ornamentation, b: Ornamentation) -> Comparison:
    _same_tree(a, b)
    below = all(x <= y for x, y in zip(a.ornaments, b.ornaments))
    above = all(y <= x for x, y in zip(a.ornaments, b.ornaments))
    if below and above:
        return Comparison.EQUAL
    if below:
        return Comparison.LESS
    if above:
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


def leq(a: Ornamentation, b: Ornamentation) -> bool:
    return compare(a, b) in (Comparison.LESS, Comparison.EQUAL)


def meet(a: Ornamentation, *others: Ornamentation) -> Ornamentation:
    for b in others:
        _same_tree(a, b)
    sets = tuple(
        fold(lambda acc, o: acc & o, (b.ornaments[v] for b in others), a.ornaments[v])
        for v in a.tree.nodes()
    )
    return Ornamentation.trusted(a.tree, sets)


# ── Wraps, reductions, covers ──


def anatomy(delta: Ornamentation, v: NodeId) -> Anatomy:
    delta.tree.check_node(v)
    wrapped = tuple(delta.wrapped(v))
    return Anatomy(
        wrapped=wrapped,
        subornaments=tuple(delta[u] for u in wrapped),
        sections={c: delta.section(v, c) for c in delta.section_children(v)},
    )


def minimal_reduction_nodes(delta: Ornamentation, v: NodeId) -> list[NodeId]:
    """M_δ(v): wrapped nodes with no other wrapped node below them."""
    delta.tree.check_node(v)
    wrapped = delta.wrapped(v)
    below = delta.tree.is_below
    return [u for u in wrapped if not any(w != u and below(w, u) for w in wrapped)]


def reduce(delta: Ornamentation, v: NodeId, u: NodeId) -> Ornamentation:
    """
    δ_u^v: replace δ(v) by δ(v) minus Δ_{δ(v)}(u).

    The reduction need not be minimal.

    Raises:
        DomainError: ``v`` does not wrap ``u``.
    """
    tree = delta.tree
    tree.check_node(v)
    tree.check_node(u)
    if delta.wrappers[u] != v:
        raise DomainError(f"node {v} does not wrap node {u}")
    sets = list(delta.ornaments)
    sets[v] = frozenset(x for x in delta[v] if not tree.is_below(x, u))
    return Ornamentation.trusted(tree, tuple(sets))


def covers_below(delta: Ornamentation) -> list[Ornamentation]:
    """Every element covered by ``delta``, ordered by ``(v, u)``."""
    seen: set[Ornamentation] = set()
    out: list[Ornamentation] = []
    for v in delta.tree.nodes():
        for u in minimal_reduction_nodes(delta, v):
            lower = reduce(delta, v, u)
            if lower not in seen:
                seen.add(lower)
                out.append(lower)
    return out


# ── Pop ──


def pop(delta: Ornamentation) -> Ornamentation:
    sets = []
    for v in delta.tree.nodes():
        removed: set[NodeId] = set()
        for u in minimal_reduction_nodes(delta, v):
            removed |= delta[u]
        sets.append(delta[v] - removed if removed else delta[v])
    return Ornamentation.trusted(delta.tree, tuple(sets))


def pop_via_covers(delta: Ornamentation) -> Ornamentation:
    """Pop straight from its definition: the meet of δ and everything it covers."""
    return meet(delta, *covers_below(delta))


def weight(delta: Ornamentation) -> int:
    return sum(len(o) for o in delta.ornaments)
