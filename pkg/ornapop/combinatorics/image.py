"""
Membership in the image of Pop and necessary conditions for Pop^k.

Top-level ornaments are treated as wrapped by the imaginary node ω, a
virtual parent of the root whose ornament is the whole tree. ω only ever
exists in memory.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional, Union

from ornapop.combinatorics.errors import DomainError, IntegrityError
from ornapop.combinatorics.ornamentation import Ornament, Ornamentation, pop, validate
from ornapop.combinatorics.rank_orbit import v_rank
from ornapop.combinatorics.trees import NodeId
from ornapop.models.reports import PopkCondition, PopkFailure, PopkReport


class Imaginary(Enum):
    OMEGA = "ω"


OMEGA = Imaginary.OMEGA

ExtendedNode = Union[NodeId, Imaginary]


def label(v: ExtendedNode) -> str:
    """Human-readable node name: ``ω`` or ``v1``, ``v2``, … (1-based)."""
    return OMEGA.value if v is OMEGA else f"v{v + 1}"


def wrapper(delta: Ornamentation, u: NodeId) -> ExtendedNode:
    delta.tree.check_node(u)
    w = delta.wrappers[u]
    return OMEGA if w is None else w


def _section(delta: Ornamentation, v: ExtendedNode, child: NodeId) -> Ornament:
    if v is OMEGA:
        return frozenset(delta.tree.descendants(child))
    return delta.section(v, child)


# ── Hugs ──


def hugs(delta: Ornamentation, v: ExtendedNode, u: NodeId) -> bool:
    """
    ``v`` hugs ``u`` when it wraps ``u`` and some section of δ(u) is the
    whole corresponding section of δ(v).
    """
    delta.tree.check_node(u)
    if v is not OMEGA:
        delta.tree.check_node(v)
    if delta.is_singleton(u) or wrapper(delta, u) != v:
        return False
    return any(
        delta.section(u, c) == _section(delta, v, c) for c in delta.section_children(u)
    )


def hug_pairs(delta: Ornamentation) -> list[tuple[ExtendedNode, NodeId]]:
    """Every hugging pair ``(wrapper, u)``, ordered by ``u``."""
    return [(wrapper(delta, u), u) for u in delta.tree.nodes() if hugs(delta, wrapper(delta, u), u)]


def find_hug(delta: Ornamentation) -> Optional[tuple[ExtendedNode, NodeId]]:
    pairs = hug_pairs(delta)
    return pairs[0] if pairs else None


def in_pop_image(delta: Ornamentation) -> bool:
    return find_hug(delta) is None


def in_pop_image_by_enclosure(delta: Ornamentation) -> bool:
    """
    The same predicate phrased through enclosures: for each ``u`` take the
    smallest ornament properly containing δ(u) (the whole tree if there is
    none); no section of δ(u) may coincide with the matching section of it.
    """
    tree = delta.tree
    whole = frozenset(tree.nodes())
    for u in tree.nodes():
        mine = delta[u]
        enclosing = [o for o in delta.ornaments if mine < o]
        o_u = min(enclosing, key=len) if enclosing else whole
        for c in delta.section_children(u):
            outer = frozenset(x for x in o_u if tree.is_below(x, c))
            if delta.section(u, c) == outer:
                return False
    return True


def pop_preimage(delta: Ornamentation) -> Ornamentation:
    """
    An element σ with ``pop(σ) = δ``: every δ(u) is stretched to the whole
    part of its wrapper's ornament below ``u``.

    Raises:
        DomainError: δ is not in the Pop image; the message names a hug.
        IntegrityError: the constructed σ does not pop back to δ.
    """
    hug = find_hug(delta)
    if hug is not None:
        v, u = hug
        raise DomainError(f"not in the Pop image: {label(v)} hugs {label(u)}")

    tree = delta.tree
    sets = tuple(_section(delta, wrapper(delta, u), u) for u in tree.nodes())
    report = validate(tree, sets)
    if not report.ok:
        raise IntegrityError(f"Pop preimage is not an ornamentation: {report.message}")
    sigma = Ornamentation.trusted(tree, sets)
    if pop(sigma) != delta:
        raise IntegrityError(f"Pop preimage of {delta!r} pops to {pop(sigma)!r}")
    return sigma


# ── Beads and Pop^k ──


def beads(delta: Ornamentation, v: NodeId, child: NodeId) -> list[NodeId]:
    """
    Singleton ornaments below the section of δ(v) at ``child`` that reach
    it through nodes which are in δ(v) or singletons themselves.

    Raises:
        DomainError: ``child`` is not a child of ``v`` inside δ(v).
    """
    tree = delta.tree
    tree.check_node(v)
    if child not in delta.section_children(v):
        raise DomainError(f"{label(child)} is not a child of {label(v)} in its ornament")
    ornament = delta[v]
    found: list[NodeId] = []
    stack = [child]
    while stack:
        w = stack.pop()
        if w not in ornament:
            found.append(w)
        stack.extend(
            c for c in tree.children(w) if c in ornament or delta.is_singleton(c)
        )
    return sorted(found)


def popk_necessary(delta: Ornamentation, k: int) -> PopkReport:
    """
    Conditions every element of the Pop^k image satisfies.

    * each ``u ≠ v`` in δ(v) has v-rank at least ``k``;
    * for ``k ≥ 1`` nothing is hugged;
    * every section of every ornament has at least ``k - 1`` beads.

    Passing does not guarantee membership outside of chains.
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    tree = delta.tree
    failures: list[PopkFailure] = []

    for v in tree.nodes():
        for u in sorted(delta[v] - {v}):
            rank = v_rank(tree, v, u)
            if rank < k:
                failures.append(
                    PopkFailure(
                        condition=PopkCondition.RANK,
                        witness=[v, u],
                        detail=f"rk_{label(v)}({label(u)}) = {rank} < {k}",
                    )
                )

    if k >= 1:
        for w, u in hug_pairs(delta):
            failures.append(
                PopkFailure(
                    condition=PopkCondition.HUG,
                    witness=[u] if w is OMEGA else [w, u],
                    detail=f"{label(w)} hugs {label(u)}",
                )
            )

    if k >= 2:
        for v in tree.nodes():
            for c in delta.section_children(v):
                count = len(beads(delta, v, c))
                if count < k - 1:
                    failures.append(
                        PopkFailure(
                            condition=PopkCondition.BEADS,
                            witness=[v, c],
                            detail=f"section of {label(v)} at {label(c)} has {count} beads, needs {k - 1}",
                        )
                    )

    return PopkReport(k=k, failures=failures)
