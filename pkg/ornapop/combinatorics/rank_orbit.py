"""
Chain profiles, v-ranks, the maximum forward-orbit size of Pop and the
extremal ornamentation δ† that attains it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, total_ordering
from typing import Optional, Union

from ornapop.combinatorics.errors import DomainError, IntegrityError
from ornapop.combinatorics.ornamentation import (
    Ornament,
    Ornamentation,
    delta_min,
    pop,
    validate,
)
from ornapop.combinatorics.trees import Chain, NodeId, RootedPlaneTree
from ornapop.config.settings import settings
from ornapop.telemetries.logger import logger


# ── Chain profiles ──


@dataclass(frozen=True)
class ChainProfile:
    """
    ``b`` and ``f`` along one maximal chain.

    ``b[v] = |Δ_T(v)| - height_C(v) - 1`` counts the off-chain descendants
    of ``v``; ``f`` is the chain potential, zero at the leaf and growing by
    one per step upward while the child still has room for it.
    """

    chain: Chain
    b: dict[NodeId, int] = field(compare=False)
    f: dict[NodeId, int] = field(compare=False)


def _closed_form_f(tree: RootedPlaneTree, chain: Chain, v: NodeId) -> int:
    if v == chain.leaf:
        return 0
    below = chain.nodes[chain.position(v) + 1 :]
    return (
        min(tree.subtree_size(u) + 2 * tree.depth(u) for u in below)
        - len(chain)
        - tree.depth(v)
        - 1
    )


def chain_profile(tree: RootedPlaneTree, chain: Chain) -> ChainProfile:
    """
    Compute ``b`` and ``f`` on ``chain`` by the leaf-up recursion, then
    recompute ``f`` from its closed form and insist the two agree.

    Raises:
        DomainError: ``chain`` is not a maximal chain of ``tree``.
        IntegrityError: recursion and closed form disagree.
    """
    if chain not in tree.chains:
        raise DomainError(f"{list(chain.nodes)} is not a maximal chain of {tree.render()}")
    b = {v: tree.subtree_size(v) - chain.height(v) - 1 for v in chain}
    f: dict[NodeId, int] = {}
    for v in reversed(chain.nodes):
        c = chain.child(v)
        if c is None:
            f[v] = 0
        else:
            f[v] = f[c] + 1 if f[c] + 1 <= b[c] else f[c]
    for v in chain:
        closed = _closed_form_f(tree, chain, v)
        if closed != f[v]:
            logger.error("chain_profile_mismatch", tree=tree, node=v, recursion=f[v], closed=closed)
            raise IntegrityError(
                f"f at node {v} of chain {list(chain.nodes)}: recursion {f[v]} != closed form {closed}"
            )
    return ChainProfile(chain=chain, b=b, f=f)


@lru_cache(maxsize=512)
def chain_profiles(tree: RootedPlaneTree) -> tuple[ChainProfile, ...]:
    """Profiles of every maximal chain, by leaf index; memoized per tree."""
    return tuple(chain_profile(tree, c) for c in tree.chains)


def _profile_of(tree: RootedPlaneTree, chain: Chain) -> ChainProfile:
    return chain_profiles(tree)[tree.chains.index(chain)]


# ── Ranks ──


@total_ordering
class Rank:
    """
    A v-rank: ``-1`` outside the subtree, a natural number inside it and
    ``∞`` at the anchor itself. Compares with ints and other ranks.
    """

    __slots__ = ("_value",)

    def __init__(self, value: Optional[int]) -> None:
        # None encodes infinity
        self._value = value

    @classmethod
    def infinite(cls) -> Rank:
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def value(self) -> int:
        if self._value is None:
            raise DomainError("an infinite rank has no integer value")
        return self._value

    def _key(self, other: object) -> Optional[tuple[int, int]]:
        if isinstance(other, Rank):
            return (1, 0) if other._value is None else (0, other._value)
        if isinstance(other, int) and not isinstance(other, bool):
            return (0, other)
        return None

    def __eq__(self, other: object) -> bool:
        key = self._key(other)
        if key is None:
            return NotImplemented
        return self._key(self) == key

    def __lt__(self, other: Union[Rank, int]) -> bool:
        key = self._key(other)
        if key is None:
            return NotImplemented
        return self._key(self) < key  # type: ignore[operator]

    def __hash__(self) -> int:
        return hash(self._key(self))

    def __str__(self) -> str:
        return "inf" if self._value is None else str(self._value)

    def __repr__(self) -> str:
        return f"Rank({self})"


def v_rank(tree: RootedPlaneTree, v: NodeId, u: NodeId) -> Rank:
    """
    Height of ``u`` in the tree obtained by hanging ``f_C(v)`` extra nodes
    under every chain ``C`` through ``v``; ``-1`` off the subtree of ``v``.
    """
    tree.check_node(v)
    tree.check_node(u)
    if not tree.is_below(u, v):
        return Rank(-1)
    if u == v:
        return Rank.infinite()
    return Rank(
        max(
            c.height(u) + _profile_of(tree, c).f[v]
            for c in tree.chains_through(u)
        )
    )


# ── Maximum orbit ──


def max_orbit_size(tree: RootedPlaneTree) -> int:
    """
    Largest forward-orbit size of Pop on O(T).

    Three closed forms are evaluated and must agree:
    the chain minimum of ``|Δ(v)| + 2·depth(v) - 1``, the largest root-child
    rank plus two, and the chain maximum of ``|C| + f_C(root)``.

    Raises:
        IntegrityError: the three expressions disagree.
    """
    profiles = chain_profiles(tree)
    by_potential = max(len(p.chain) + p.f[tree.root] for p in profiles)
    if tree.n == 1:
        return by_potential

    by_depth = max(
        min(tree.subtree_size(v) + 2 * tree.depth(v) - 1 for v in c.nodes[1:])
        for c in tree.chains
    )
    by_rank = max(v_rank(tree, tree.root, u).value for u in tree.children(tree.root)) + 2
    if not by_depth == by_rank == by_potential:
        logger.error(
            "max_orbit_mismatch",
            tree=tree,
            by_depth=by_depth,
            by_rank=by_rank,
            by_potential=by_potential,
        )
        raise IntegrityError(
            f"max orbit expressions disagree on {tree.render()}: "
            f"{by_depth}, {by_rank}, {by_potential}"
        )
    return by_depth


# ── δ† ──


@dataclass(frozen=True)
class DaggerConstruction:
    """
    The extremal element δ† together with the data it is built from.

    ``numbering[i]`` is the node called ``v_i``: the chain ``C*`` first,
    root to leaf, then the off-chain nodes in the fixed linear extension.
    ``boughs[i]`` lists the off-chain nodes hanging from ``v_i`` but not
    from ``v_{i+1}``.
    """

    tree: RootedPlaneTree
    chain: Chain
    k: int
    numbering: tuple[NodeId, ...]
    boughs: tuple[tuple[NodeId, ...], ...]
    delta: Ornamentation

    @property
    def orbit_size(self) -> int:
        return len(self.chain) + self.k


def _extremal_chain(tree: RootedPlaneTree) -> ChainProfile:
    # max() keeps the first maximum, i.e. the smallest leaf index
    return max(chain_profiles(tree), key=lambda p: len(p.chain) + p.f[tree.root])


def dagger_construction(tree: RootedPlaneTree) -> DaggerConstruction:
    profile = _extremal_chain(tree)
    chain = profile.chain
    k = profile.f[tree.root]
    on_chain = set(chain.nodes)

    bough_of: dict[NodeId, int] = {}
    for u in tree.nodes():
        if u not in on_chain:
            bough_of[u] = max(chain.position(a) for a in tree.ancestors(u) if a in on_chain)
    boughs = tuple(
        tuple(sorted(u for u, i in bough_of.items() if i == pos)) for pos in range(len(chain))
    )
    off_chain = sorted(bough_of, key=lambda u: (-bough_of[u], tree.depth(u), u))
    numbering = chain.nodes + tuple(off_chain)

    sets: list[Ornament] = [frozenset((v,)) for v in tree.nodes()]
    top = len(chain) + k - 1
    for i in range(k + 1):
        sets[numbering[i]] = frozenset(numbering[i : top - i + 1])
    report = validate(tree, sets)
    if not report.ok:
        raise IntegrityError(f"δ† on {tree.render()} is invalid: {report.message}")

    return DaggerConstruction(
        tree=tree,
        chain=chain,
        k=k,
        numbering=numbering,
        boughs=boughs,
        delta=Ornamentation.trusted(tree, tuple(sets)),
    )


def build_delta_dagger(tree: RootedPlaneTree) -> Ornamentation:
    return dagger_construction(tree).delta


def dagger_prediction(construction: DaggerConstruction, p: int) -> Ornamentation:
    """
    Closed form of Pop^p(δ†): ``v_i`` keeps itself plus ``v_{i+1}`` …
    ``v_{|C*|+k-1-i-p}`` for ``i ≤ k``; every other ornament stays a singleton.
    """
    if p < 0:
        raise DomainError("p must be non-negative")
    num = construction.numbering
    tree = construction.tree
    sets: list[Ornament] = [frozenset((v,)) for v in tree.nodes()]
    top = len(construction.chain) + construction.k - 1
    for i in range(construction.k + 1):
        sets[num[i]] = frozenset((num[i],)) | frozenset(num[i + 1 : max(i + 1, top - i - p + 1)])
    return Ornamentation.trusted(tree, tuple(sets))


# ── Orbits ──


def forward_orbit(delta: Ornamentation) -> list[Ornamentation]:
    """
    ``[δ, Pop(δ), Pop²(δ), …]`` ending with the first occurrence of δ_min.

    Raises:
        IntegrityError: more than ``n² + ORBIT_SLACK`` steps were needed.
    """
    bottom = delta_min(delta.tree)
    cap = delta.tree.n ** 2 + settings.ORBIT_SLACK
    orbit = [delta]
    while orbit[-1] != bottom:
        if len(orbit) > cap:
            raise IntegrityError(f"orbit of {delta!r} did not reach δ_min within {cap} steps")
        orbit.append(pop(orbit[-1]))
    return orbit


def pop_power(delta: Ornamentation, times: int) -> Ornamentation:
    if times < 0:
        raise DomainError("the number of Pop applications must be non-negative")
    for _ in range(times):
        delta = pop(delta)
    return delta
