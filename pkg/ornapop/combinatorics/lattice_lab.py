"""
Exhaustive enumeration of ornamentation lattices and the brute-force
oracles built on it: joins, semidistributivity, Pop^k images, orbit
lengths and the search for elements that pass every Pop^k necessary
condition without being in the image.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

import graphviz
import networkx as nx

from ornapop.combinatorics.errors import DomainError, IntegrityError, ResourceError
from ornapop.combinatorics.image import popk_necessary
from ornapop.combinatorics.ornamentation import (
    Ornament,
    Ornamentation,
    covers_below,
    delta_max,
    delta_min,
    pop,
    weight,
)
from ornapop.combinatorics.trees import NodeId, RootedPlaneTree, enumerate_plane_trees
from ornapop.config.settings import settings
from ornapop.models.records import compact_label
from ornapop.models.reports import SemidistributivityReport
from ornapop.telemetries.logger import logger

ElementKey = tuple[tuple[NodeId, ...], ...]


class LatticeGraph:
    """
    A fully enumerated O(T).

    ``elements`` are in canonical order (sorted ornament lists, so δ_min
    comes first); ``hasse`` holds cover pairs ``(lower, upper)`` as element
    indices and ``graph`` the same relation as a networkx digraph.
    """

    def __init__(
        self,
        tree: RootedPlaneTree,
        elements: list[Ornamentation],
        covers: list[tuple[Ornamentation, Ornamentation]],
    ) -> None:
        self.tree = tree
        self.elements: tuple[Ornamentation, ...] = tuple(sorted(elements, key=lambda d: d.key))
        self.index: dict[ElementKey, int] = {d.key: i for i, d in enumerate(self.elements)}
        self.hasse: tuple[tuple[int, int], ...] = tuple(
            sorted((self.index[lo.key], self.index[up.key]) for lo, up in covers)
        )
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(range(len(self.elements)))
        self.graph.add_edges_from(self.hasse)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, delta: Ornamentation) -> int:
        if delta.tree != self.tree:
            raise DomainError(f"{delta!r} lives on {delta.tree.render()}, not on {self.tree.render()}")
        try:
            return self.index[delta.key]
        except KeyError:
            raise DomainError(f"{delta!r} is not an element of O({self.tree.render()})") from None

    @property
    def bottom(self) -> int:
        return self.index[delta_min(self.tree).key]

    @property
    def top(self) -> int:
        return self.index[delta_max(self.tree).key]

    # ── Order ideals ──

    @cached_property
    def down_sets(self) -> tuple[frozenset[int], ...]:
        """``down_sets[i]``: every element ≤ element ``i``."""
        down: list[frozenset[int]] = [frozenset()] * len(self.elements)
        for i in nx.topological_sort(self.graph):
            down[i] = frozenset({i}).union(*(down[j] for j in self.graph.predecessors(i)))
        return tuple(down)

    @cached_property
    def up_sets(self) -> tuple[frozenset[int], ...]:
        up: list[frozenset[int]] = [frozenset()] * len(self.elements)
        for i in reversed(list(nx.topological_sort(self.graph))):
            up[i] = frozenset({i}).union(*(up[j] for j in self.graph.successors(i)))
        return tuple(up)

    def leq(self, i: int, j: int) -> bool:
        return i in self.down_sets[j]

    # ── Pop map ──

    @cached_property
    def pop_targets(self) -> tuple[int, ...]:
        return tuple(self.index[pop(d).key] for d in self.elements)


# ── Enumeration ──


def enumerate_lattice(
    tree: RootedPlaneTree,
    cap: Optional[int] = None,
    threads: Optional[int] = None,
) -> LatticeGraph:
    """
    Breadth-first closure of δ_max under ``covers_below``.

    Each layer's covers are computed on a thread pool; deduplication and
    the final canonical sort happen on the calling thread, so the result
    does not depend on scheduling.

    Raises:
        ResourceError: more than ``cap`` elements (default ``LATTICE_SIZE_CAP``).
    """
    limit = settings.LATTICE_SIZE_CAP if cap is None else cap
    workers = max(1, settings.THREADS if threads is None else threads)

    top = delta_max(tree)
    seen: set[Ornamentation] = {top}
    elements = [top]
    covers: list[tuple[Ornamentation, Ornamentation]] = []
    frontier = [top]
    layers = 0

    with ThreadPoolExecutor(max_workers=workers) as pool:
        while frontier:
            layers += 1
            next_frontier: list[Ornamentation] = []
            for upper, lowers in zip(frontier, pool.map(covers_below, frontier)):
                for lower in lowers:
                    covers.append((lower, upper))
                    if lower in seen:
                        continue
                    seen.add(lower)
                    elements.append(lower)
                    next_frontier.append(lower)
                    if len(elements) > limit:
                        logger.warning("lattice_cap_exceeded", tree=tree, cap=limit)
                        raise ResourceError(
                            f"O({tree.render()}) has more than {limit} elements"
                        )
            frontier = next_frontier

    lattice = LatticeGraph(tree, elements, covers)
    if not nx.is_directed_acyclic_graph(lattice.graph):
        raise IntegrityError(f"Hasse diagram of O({tree.render()}) has a cycle")
    if lattice.elements[0] != delta_min(tree):
        raise IntegrityError(f"δ_min is not the first element of O({tree.render()})")
    logger.info(
        "lattice_enumerated",
        tree=tree,
        size=len(lattice),
        edges=len(lattice.hasse),
        layers=layers,
    )
    return lattice


# ── Joins and meets ──


def _extremum(candidates: frozenset[int], below: Callable[[int], frozenset[int]]) -> list[int]:
    return sorted(x for x in candidates if below(x) & candidates == {x})


def join_in_lattice(lattice: LatticeGraph, a: Ornamentation, b: Ornamentation) -> Ornamentation:
    """
    Least common upper bound, found over the enumerated lattice.

    Raises:
        IntegrityError: the minimal upper bound is not unique.
    """
    common = lattice.up_sets[lattice.index_of(a)] & lattice.up_sets[lattice.index_of(b)]
    minimal = _extremum(common, lambda x: lattice.down_sets[x])
    if len(minimal) != 1:
        raise IntegrityError(f"{len(minimal)} minimal upper bounds of {a!r} and {b!r}")
    return lattice.elements[minimal[0]]


def meet_in_lattice(lattice: LatticeGraph, a: Ornamentation, b: Ornamentation) -> Ornamentation:
    common = lattice.down_sets[lattice.index_of(a)] & lattice.down_sets[lattice.index_of(b)]
    maximal = _extremum(common, lambda x: lattice.up_sets[x])
    if len(maximal) != 1:
        raise IntegrityError(f"{len(maximal)} maximal lower bounds of {a!r} and {b!r}")
    return lattice.elements[maximal[0]]


# ── Semidistributivity ──


def _minimum(lattice: LatticeGraph, subset: frozenset[int]) -> Optional[int]:
    found = [m for m in subset if subset <= lattice.up_sets[m]]
    return found[0] if found else None


def _maximum(lattice: LatticeGraph, subset: frozenset[int]) -> Optional[int]:
    found = [m for m in subset if subset <= lattice.down_sets[m]]
    return found[0] if found else None


def cover_witnesses(
    tree: RootedPlaneTree, lower: Ornamentation, upper: Ornamentation
) -> tuple[Ornamentation, Ornamentation]:
    """
    The two constructed extremal elements for the cover ``lower ⋖ upper``.

    With ``v`` the node whose ornament shrinks and ``u`` the top of the
    removed part: the lower witness is all singletons except the path
    ``[u, v]`` at ``v``; the upper witness is δ_max with Δ(u) cut out of
    every ornament strictly between ``u`` and ``v`` (``v`` included).
    """
    changed = [v for v in tree.nodes() if lower[v] != upper[v]]
    if len(changed) != 1:
        raise IntegrityError(f"{lower!r} and {upper!r} differ at {len(changed)} nodes")
    v = changed[0]
    u = min(upper[v] - lower[v])

    down_sets: list[Ornament] = [frozenset((w,)) for w in tree.nodes()]
    down_sets[v] = frozenset(tree.path(u, v))

    cut = frozenset(tree.descendants(u))
    between = set(tree.path(u, v)) - {u}
    up_sets = [
        frozenset(tree.descendants(w)) - cut if w in between else frozenset(tree.descendants(w))
        for w in tree.nodes()
    ]
    return Ornamentation.trusted(tree, tuple(down_sets)), Ornamentation.trusted(tree, tuple(up_sets))


def check_semidistributive(lattice: LatticeGraph) -> SemidistributivityReport:
    """
    Cover-local test: for every cover ``x' ⋖ x`` the elements below ``x``
    but not below ``x'`` have a minimum, the elements above ``x'`` but not
    above ``x`` have a maximum, and both match the constructed witnesses.
    The first failing cover is returned as data.
    """
    tree = lattice.tree
    checked = 0
    for lo, hi in lattice.hasse:
        checked += 1
        failure = SemidistributivityReport(
            tree=tree.render(), ok=False, covers_checked=checked, lower=lo, upper=hi
        )
        below = lattice.down_sets[hi] - lattice.down_sets[lo]
        above = lattice.up_sets[lo] - lattice.up_sets[hi]
        low_end = _minimum(lattice, below)
        high_end = _maximum(lattice, above)
        if low_end is None:
            return failure.model_copy(update={"reason": "no minimum below the cover"})
        if high_end is None:
            return failure.model_copy(update={"reason": "no maximum above the cover"})

        down_witness, up_witness = cover_witnesses(tree, lattice.elements[lo], lattice.elements[hi])
        if lattice.elements[low_end] != down_witness:
            return failure.model_copy(
                update={"reason": f"minimum {compact_label(lattice.elements[low_end])} "
                                  f"!= constructed {compact_label(down_witness)}"}
            )
        if lattice.elements[high_end] != up_witness:
            return failure.model_copy(
                update={"reason": f"maximum {compact_label(lattice.elements[high_end])} "
                                  f"!= constructed {compact_label(up_witness)}"}
            )
    return SemidistributivityReport(tree=tree.render(), ok=True, covers_checked=checked)


# ── Brute-force oracles ──


def popk_image_indices(lattice: LatticeGraph, k: int) -> list[int]:
    if k < 0:
        raise DomainError("k must be non-negative")
    targets = lattice.pop_targets
    image = set(range(len(lattice)))
    for _ in range(k):
        image = {targets[i] for i in image}
    return sorted(image)


def brute_popk_image(lattice: LatticeGraph, k: int) -> list[Ornamentation]:
    """``{Pop^k(δ) : δ ∈ O(T)}`` in canonical order."""
    return [lattice.elements[i] for i in popk_image_indices(lattice, k)]


def orbit_lengths(lattice: LatticeGraph) -> list[int]:
    targets = lattice.pop_targets
    lengths = [0] * len(lattice)
    lengths[lattice.bottom] = 1
    # Pop strictly decreases weight, so ascending weight visits targets first.
    order = sorted(range(len(lattice)), key=lambda i: weight(lattice.elements[i]))
    for i in order:
        if i != lattice.bottom:
            lengths[i] = lengths[targets[i]] + 1
    return lengths


def brute_max_orbit(lattice: LatticeGraph) -> int:
    return max(orbit_lengths(lattice))


@dataclass(frozen=True)
class Counterexample:
    """An element passing every Pop^k necessary condition yet outside the image."""

    tree: RootedPlaneTree
    delta: Ornamentation
    k: int


def search_popk_counterexample(
    max_nodes: int,
    k: int,
    chains_only: bool = False,
    lattice_of: Optional[Callable[[RootedPlaneTree], LatticeGraph]] = None,
) -> Optional[Counterexample]:
    """
    First witness over trees with at most ``max_nodes`` nodes, scanning
    sizes upward, trees in canonical order and elements in canonical order.

    Raises:
        DomainError: ``k < 2``.
        ResourceError: ``max_nodes`` exceeds ``MAX_TREE_NODES``.
    """
    if k < 2:
        raise DomainError("the necessary conditions are exact for k < 2; use k >= 2")
    if max_nodes > settings.MAX_TREE_NODES:
        raise ResourceError(f"search over {max_nodes} nodes exceeds the cap of {settings.MAX_TREE_NODES}")
    build = lattice_of or enumerate_lattice

    for n in range(1, max_nodes + 1):
        for tree in enumerate_plane_trees(n):
            if chains_only and not tree.is_chain:
                continue
            lattice = build(tree)
            image = set(popk_image_indices(lattice, k))
            for i, delta in enumerate(lattice.elements):
                if i not in image and popk_necessary(delta, k).passed:
                    logger.info("counterexample_found", k=k, element=delta)
                    return Counterexample(tree=tree, delta=delta, k=k)
    return None


# ── DOT export ──


def lattice_to_dot(lattice: LatticeGraph) -> str:
    """Hasse diagram as DOT; edges run from each element to the ones it covers."""
    dot = graphviz.Digraph(name="ornamentation_lattice", comment=lattice.tree.render())
    dot.attr(rankdir="TB")
    dot.attr("node", shape="box", fontname="monospace")
    for i, delta in enumerate(lattice.elements):
        dot.node(str(i), compact_label(delta))
    for lo, hi in lattice.hasse:
        dot.edge(str(hi), str(lo))
    return dot.source
