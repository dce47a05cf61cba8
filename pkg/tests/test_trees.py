from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ornapop.combinatorics.errors import DomainError, ResourceError, TreeParseError
from ornapop.combinatorics.trees import (
    RootedPlaneTree,
    catalan,
    chain_tree,
    enumerate_plane_trees,
    maximal_chains,
    node_stats,
    parse_tree,
)

SMALL_TREES = [t for n in range(1, 7) for t in enumerate_plane_trees(n)]


# ── Parsing ──


def test_parse_chain():
    tree = parse_tree("((()))")
    assert tree.n == 3
    assert [tree.children(v) for v in tree.nodes()] == [(1,), (2,), ()]
    assert tree.is_chain


def test_parse_star():
    tree = parse_tree("(()())")
    assert tree.children(0) == (1, 2)
    assert tree.parent(2) == 0
    assert not tree.is_chain


def test_parse_unclosed_reports_offset():
    with pytest.raises(TreeParseError) as info:
        parse_tree("((()")
    assert info.value.offset == 4


@pytest.mark.parametrize(
    "text, offset",
    [("", 0), ("())", 2), ("()()", 2), ("(x)", 1), ("(() )", 3)],
)
def test_parse_errors(text: str, offset: int):
    with pytest.raises(TreeParseError) as info:
        parse_tree(text)
    assert info.value.offset == offset


def test_offsets_are_bytes():
    with pytest.raises(TreeParseError) as info:
        parse_tree("(é)")
    assert info.value.offset == 1


def test_constructor_rejects_non_preorder():
    with pytest.raises(DomainError):
        RootedPlaneTree([[2, 1], [], []])


@given(st.sampled_from(SMALL_TREES))
def test_render_round_trip(tree: RootedPlaneTree):
    assert parse_tree(tree.render()) == tree


# ── Statistics ──


def test_node_stats_chain(c3):
    root = node_stats(c3, 0)
    assert (root.depth, root.height, root.subtree_size) == (0, 2, 3)
    leaf = node_stats(c3, 2)
    assert (leaf.depth, leaf.height, leaf.subtree_size) == (2, 0, 1)
    assert leaf.ancestors == (0, 1, 2)


def test_node_stats_star():
    stats = node_stats(parse_tree("(()())"), 1)
    assert (stats.depth, stats.height, stats.subtree_size) == (1, 0, 1)
    assert stats.ancestors == (0, 1)
    assert stats.descendants == (1,)


def test_node_stats_rejects_unknown_node(c3):
    with pytest.raises(DomainError):
        node_stats(c3, 3)


def test_path_runs_from_top_down():
    tree = parse_tree("((()()))")
    assert tree.path(3, 0) == (0, 1, 3)
    with pytest.raises(DomainError):
        tree.path(0, 3)


# ── Chains ──


def test_maximal_chains():
    assert [c.nodes for c in maximal_chains(parse_tree("((()))"))] == [(0, 1, 2)]
    assert len(maximal_chains(parse_tree("(()()())"))) == 3
    assert [c.nodes for c in maximal_chains(parse_tree("((())())"))] == [(0, 1, 2), (0, 3)]


@given(st.sampled_from(SMALL_TREES))
def test_every_leaf_in_one_chain(tree: RootedPlaneTree):
    chains = maximal_chains(tree)
    assert sorted(c.leaf for c in chains) == tree.leaves()
    assert set().union(*(set(c.nodes) for c in chains)) == set(tree.nodes())


@given(st.sampled_from(SMALL_TREES))
def test_depth_plus_chain_height(tree: RootedPlaneTree):
    for chain in tree.chains:
        for v in chain:
            assert tree.depth(v) + chain.height(v) == len(chain) - 1


# ── Generation ──


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_counts(n: int):
    trees = enumerate_plane_trees(n)
    assert len(trees) == catalan(n - 1)
    assert len(set(trees)) == len(trees)
    renders = [t.render() for t in trees]
    assert renders == sorted(renders)


def test_enumeration_small_cases():
    assert [t.render() for t in enumerate_plane_trees(1)] == ["()"]
    assert [t.render() for t in enumerate_plane_trees(3)] == ["((()))", "(()())"]


def test_enumeration_cap(override_settings):
    override_settings(MAX_TREE_NODES=4)
    assert len(enumerate_plane_trees(4)) == 5
    with pytest.raises(ResourceError):
        enumerate_plane_trees(5)
    with pytest.raises(DomainError):
        enumerate_plane_trees(0)


@given(st.sampled_from(SMALL_TREES))
def test_mirror_is_an_involution(tree: RootedPlaneTree):
    mirror, mapping = tree.mirrored()
    back, _ = mirror.mirrored()
    assert back == tree
    assert sorted(mapping) == list(tree.nodes())
    for v in tree.nodes():
        assert mirror.subtree_size(mapping[v]) == tree.subtree_size(v)


def test_chain_tree():
    assert chain_tree(3) == parse_tree("((()))")
    with pytest.raises(DomainError):
        chain_tree(0)
