"""
Rooted plane trees: parsing, rendering, node statistics, maximal chains
and exhaustive generation.

Nodes are identified by their preorder index (root = 0). Because of the
preorder numbering, the subtree of ``v`` is always the contiguous block
``range(v, v + subtree_size(v))``, which every descendant test relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

from ornapop.combinatorics.errors import DomainError, ResourceError, TreeParseError
from ornapop.config.settings import settings

NodeId = int


@dataclass(frozen=True)
class Chain:
    """A maximal chain, listed from the root down to a leaf."""

    nodes: tuple[NodeId, ...]

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[NodeId]:
        return iter(self.nodes)

    def __contains__(self, v: object) -> bool:
        return v in self.nodes

    @property
    def leaf(self) -> NodeId:
        return self.nodes[-1]

    def position(self, v: NodeId) -> int:
        return self.nodes.index(v)

    def height(self, v: NodeId) -> int:
        """Height of ``v`` within the chain (the leaf has height 0)."""
        return len(self.nodes) - 1 - self.position(v)

    def child(self, v: NodeId) -> Optional[NodeId]:
        """The unique chain child of ``v``, or ``None`` for the leaf."""
        i = self.position(v)
        return self.nodes[i + 1] if i + 1 < len(self.nodes) else None


@dataclass(frozen=True)
class NodeStats:
    depth: int
    height: int
    subtree_size: int
    descendants: tuple[NodeId, ...]
    ancestors: tuple[NodeId, ...]


class RootedPlaneTree:
    """
    Immutable rooted tree with ordered children.

    Construct from per-node children lists that already follow preorder
    numbering; use :func:`parse_tree` for the parenthesis format.
    """

    def __init__(self, children: Sequence[Sequence[NodeId]]) -> None:
        if not children:
            raise DomainError("a tree needs at least one node")
        self._children: tuple[tuple[NodeId, ...], ...] = tuple(tuple(c) for c in children)
        n = len(self._children)
        parent: list[Optional[NodeId]] = [None] * n
        for v, kids in enumerate(self._children):
            for c in kids:
                if not 0 < c < n or parent[c] is not None:
                    raise DomainError(f"children lists do not form a tree (node {c})")
                parent[c] = v
        self._parent = tuple(parent)

        # Preorder check: a DFS visiting children in plane order must see 0..n-1.
        order: list[NodeId] = []
        stack = [0]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self._children[v]))
        if order != list(range(n)):
            raise DomainError("node indices are not in preorder")

        size = [1] * n
        height = [0] * n
        for v in range(n - 1, -1, -1):
            for c in self._children[v]:
                size[v] += size[c]
                height[v] = max(height[v], height[c] + 1)
        depth = [0] * n
        for v in range(1, n):
            depth[v] = depth[parent[v]] + 1  # type: ignore[index]
        self._size = tuple(size)
        self._height = tuple(height)
        self._depth = tuple(depth)

    # ── Basic structure ──

    @property
    def n(self) -> int:
        return len(self._children)

    @property
    def root(self) -> NodeId:
        return 0

    def nodes(self) -> range:
        return range(self.n)

    def check_node(self, v: object) -> NodeId:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < self.n:
            raise DomainError(f"node {v!r} is not in a tree with {self.n} nodes")
        return v

    def parent(self, v: NodeId) -> Optional[NodeId]:
        return self._parent[v]

    def children(self, v: NodeId) -> tuple[NodeId, ...]:
        return self._children[v]

    def is_leaf(self, v: NodeId) -> bool:
        return not self._children[v]

    def leaves(self) -> list[NodeId]:
        return [v for v in self.nodes() if self.is_leaf(v)]

    @cached_property
    def is_chain(self) -> bool:
        return all(len(kids) <= 1 for kids in self._children)

    # ── Order relation ──

    def depth(self, v: NodeId) -> int:
        return self._depth[v]

    def height(self, v: NodeId) -> int:
        return self._height[v]

    def subtree_size(self, v: NodeId) -> int:
        return self._size[v]

    def descendants(self, v: NodeId) -> range:
        """Δ_T(v), including ``v`` itself."""
        return range(v, v + self._size[v])

    def is_below(self, u: NodeId, v: NodeId) -> bool:
        """``u ≤_T v``: ``u`` lies in the subtree of ``v``."""
        return v <= u < v + self._size[v]

    def ancestors(self, v: NodeId) -> tuple[NodeId, ...]:
        """∇_T(v) in ascending index order, including ``v``."""
        path = [v]
        while self._parent[path[-1]] is not None:
            path.append(self._parent[path[-1]])  # type: ignore[arg-type]
        return tuple(reversed(path))

    def path(self, u: NodeId, v: NodeId) -> tuple[NodeId, ...]:
        """The closed path ``[u, v]`` listed from ``v`` down to ``u``."""
        if not self.is_below(u, v):
            raise DomainError(f"node {u} is not below node {v}")
        return tuple(w for w in self.ancestors(u) if w >= v)

    # ── Chains ──

    @cached_property
    def chains(self) -> tuple[Chain, ...]:
        return tuple(Chain(self.ancestors(leaf)) for leaf in self.leaves())

    def chains_through(self, v: NodeId) -> list[Chain]:
        return [c for c in self.chains if self.is_below(c.leaf, v)]

    # ── Rendering / relabeling ──

    def render(self) -> str:
        parts: list[str] = []

        def walk(v: NodeId) -> None:
            parts.append("(")
            for c in self._children[v]:
                walk(c)
            parts.append(")")

        walk(0)
        return "".join(parts)

    def mirrored(self) -> tuple[RootedPlaneTree, tuple[NodeId, ...]]:
        """
        Reverse every children list.

        Returns the mirrored tree and the relabeling ``old -> new`` that
        carries each node to its image.
        """
        mapping = [0] * self.n
        new_children: list[list[NodeId]] = []

        def walk(v: NodeId) -> NodeId:
            me = len(new_children)
            mapping[v] = me
            new_children.append([])
            for c in reversed(self._children[v]):
                new_children[me].append(walk(c))
            return me

        walk(0)
        return RootedPlaneTree(new_children), tuple(mapping)

    # ── Dunder ──

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootedPlaneTree) and self._children == other._children

    def __hash__(self) -> int:
        return hash(self._children)

    def __repr__(self) -> str:
        return f"RootedPlaneTree({self.render()!r})"


# ── Operations ──


def parse_tree(text: str) -> RootedPlaneTree:
    """
    Parse a balanced-parenthesis string into a tree.

    One node per matched pair; the outermost pair is the root and nested
    pairs become children in textual order.

    Raises:
        TreeParseError: empty input, unbalanced parentheses, a second
            top-level pair, or any other character. ``offset`` is a byte
            offset into the UTF-8 encoding of ``text``.
    """
    data = text.encode("utf-8")
    if not data:
        raise TreeParseError("empty input", 0)

    children: list[list[NodeId]] = []
    stack: list[NodeId] = []
    for offset, byte in enumerate(data):
        if byte == ord("("):
            if not stack and children:
                raise TreeParseError("trailing characters after the root", offset)
            node = len(children)
            children.append([])
            if stack:
                children[stack[-1]].append(node)
            stack.append(node)
        elif byte == ord(")"):
            if not stack:
                raise TreeParseError("unbalanced ')'", offset)
            stack.pop()
        else:
            raise TreeParseError(f"unexpected byte {byte:#04x}", offset)
    if stack:
        raise TreeParseError("unclosed '('", len(data))
    return RootedPlaneTree(children)


def chain_tree(n: int) -> RootedPlaneTree:
    """The chain C_n with nodes 0 → 1 → … → n-1."""
    if n < 1:
        raise DomainError("a chain needs at least one node")
    return RootedPlaneTree([[v + 1] for v in range(n - 1)] + [[]])


def node_stats(tree: RootedPlaneTree, v: NodeId) -> NodeStats:
    tree.check_node(v)
    return NodeStats(
        depth=tree.depth(v),
        height=tree.height(v),
        subtree_size=tree.subtree_size(v),
        descendants=tuple(tree.descendants(v)),
        ancestors=tree.ancestors(v),
    )


def maximal_chains(tree: RootedPlaneTree) -> list[Chain]:
    """One chain per leaf, ordered by leaf index."""
    return list(tree.chains)


def _balanced(pairs: int) -> Iterator[str]:
    # '(' sorts before ')', so trying '(' first yields lexicographic order.
    buf: list[str] = []

    def extend(opened: int, closed: int) -> Iterator[str]:
        if closed == pairs:
            yield "".join(buf)
            return
        if opened < pairs:
            buf.append("(")
            yield from extend(opened + 1, closed)
            buf.pop()
        if closed < opened:
            buf.append(")")
            yield from extend(opened, closed + 1)
            buf.pop()

    yield from extend(0, 0)


def enumerate_plane_trees(n: int, cap: Optional[int] = None) -> list[RootedPlaneTree]:
    """
    All plane trees with ``n`` nodes in lexicographic parenthesis order.

    Raises:
        DomainError: ``n < 1``.
        ResourceError: ``n`` exceeds ``cap`` (default ``settings.MAX_TREE_NODES``).
    """
    limit = settings.MAX_TREE_NODES if cap is None else cap
    if n < 1:
        raise DomainError("trees have at least one node")
    if n > limit:
        raise ResourceError(f"plane trees with {n} nodes exceed the cap of {limit}")
    return [parse_tree(f"({body})") for body in _balanced(n - 1)]


def catalan(n: int) -> int:
    value = 1
    for i in range(n):
        value = value * 2 * (2 * i + 1) // (i + 2)
    return value
