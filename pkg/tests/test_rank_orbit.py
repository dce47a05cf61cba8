from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import g, lattice
from ornapop.combinatorics.errors import DomainError
from ornapop.combinatorics.lattice_lab import brute_max_orbit
from ornapop.combinatorics.ornamentation import delta_min
from ornapop.combinatorics.rank_orbit import (
    Rank,
    build_delta_dagger,
    chain_profile,
    chain_profiles,
    dagger_construction,
    dagger_prediction,
    forward_orbit,
    max_orbit_size,
    v_rank,
)
from ornapop.combinatorics.trees import Chain, RootedPlaneTree, chain_tree, enumerate_plane_trees, parse_tree

TREES_UPTO_6 = [t for n in range(1, 7) for t in enumerate_plane_trees(n)]
TREES_UPTO_8 = [t for n in range(1, 9) for t in enumerate_plane_trees(n)]


# ── Chain profiles ──


@pytest.mark.parametrize("n", range(1, 7))
def test_chain_tree_profiles_vanish(n: int):
    tree = chain_tree(n)
    (profile,) = chain_profiles(tree)
    assert set(profile.b.values()) == {0}
    assert set(profile.f.values()) == {0}


def test_star_profiles(star):
    for profile in chain_profiles(star):
        assert profile.f[0] == 0


def test_fork_profile(fork):
    profile = chain_profile(fork, fork.chains[0])
    assert profile.chain.nodes == (0, 1, 2)
    assert (profile.f[0], profile.f[1], profile.f[2]) == (1, 0, 0)
    assert profile.b[1] == 1


def test_profile_rejects_foreign_chain(fork):
    with pytest.raises(DomainError):
        chain_profile(fork, Chain((0, 1)))


@pytest.mark.parametrize("tree", TREES_UPTO_8, ids=lambda t: t.render())
def test_profiles_agree_with_closed_form(tree: RootedPlaneTree):
    # chain_profile raises IntegrityError on a mismatch
    for profile in chain_profiles(tree):
        nodes = profile.chain.nodes
        assert profile.f[nodes[-1]] == 0
        for upper, lower in zip(nodes, nodes[1:]):
            assert profile.f[upper] in (profile.f[lower], profile.f[lower] + 1)
            assert profile.f[upper] >= profile.f[lower]


# ── Ranks ──


def test_rank_ordering():
    assert Rank(-1) < Rank(0) < Rank(5) < Rank.infinite()
    assert Rank(3) == 3
    assert Rank(2) < 3
    assert Rank.infinite() > 10**9
    assert str(Rank.infinite()) == "inf"
    with pytest.raises(DomainError):
        Rank.infinite().value


def test_chain_ranks_are_heights(c3):
    assert v_rank(c3, 0, 1) == 1
    assert v_rank(c3, 0, 2) == 0
    assert v_rank(c3, 1, 0) == -1
    assert v_rank(c3, 1, 1).is_infinite


def test_fork_ranks_include_potential(fork):
    # f = 1 at the root lifts every rank below it by one
    assert v_rank(fork, 0, 1) == 2
    assert v_rank(fork, 0, 2) == 1
    assert v_rank(fork, 1, 2) == 0


@given(st.sampled_from(TREES_UPTO_6))
def test_ranks_decrease_downward_and_grow_with_anchor(tree: RootedPlaneTree):
    for v in tree.nodes():
        for u in tree.descendants(v):
            parent = tree.parent(u)
            if u != v and parent is not None and parent != v:
                assert v_rank(tree, v, u) < v_rank(tree, v, parent)
            anchor = tree.parent(v)
            if u != v and anchor is not None:
                assert v_rank(tree, v, u) <= v_rank(tree, anchor, u)


# ── Maximum orbit ──


@pytest.mark.parametrize("n", range(1, 8))
def test_chain_max_orbit(n: int):
    assert max_orbit_size(chain_tree(n)) == n


def test_known_max_orbits(star, fork):
    assert max_orbit_size(star) == 2
    assert max_orbit_size(fork) == 4
    assert max_orbit_size(parse_tree("()")) == 1


@pytest.mark.slow
@pytest.mark.parametrize("tree", TREES_UPTO_6, ids=lambda t: t.render())
def test_max_orbit_matches_enumeration(tree: RootedPlaneTree):
    assert max_orbit_size(tree) == brute_max_orbit(lattice(tree.render()))


# ── δ† ──


def test_dagger_examples(c3, star, fork):
    assert build_delta_dagger(c3) == g(3, 2, 3)

    on_star = build_delta_dagger(star)
    assert on_star[0] == frozenset({0, 1})
    assert all(on_star.is_singleton(v) for v in (1, 2, 3))

    built = dagger_construction(fork)
    assert built.chain.nodes == (0, 1, 2)
    assert built.k == 1
    assert built.numbering == (0, 1, 2, 3)
    assert built.boughs == ((), (3,), ())
    assert built.delta[0] == frozenset({0, 1, 2, 3})
    assert built.delta[1] == frozenset({1, 2})


@pytest.mark.parametrize("tree", TREES_UPTO_6, ids=lambda t: t.render())
def test_dagger_orbit_is_extremal_and_predicted(tree: RootedPlaneTree):
    built = dagger_construction(tree)
    orbit = forward_orbit(built.delta)
    assert len(orbit) == built.orbit_size == max_orbit_size(tree)
    for p, element in enumerate(orbit):
        assert element == dagger_prediction(built, p)


@pytest.mark.parametrize("paren", ["(((()(()))))", "(((()()())))", "(((()())()))", "((()(()())))"])
def test_dagger_prediction_settles_at_the_bottom(paren: str):
    tree = parse_tree(paren)
    built = dagger_construction(tree)
    last = len(forward_orbit(built.delta)) - 1
    for p in range(last, last + 4):
        assert dagger_prediction(built, p) == delta_min(tree)


@given(st.sampled_from(TREES_UPTO_6))
def test_dagger_tail_hangs_below_the_chain(tree: RootedPlaneTree):
    built = dagger_construction(tree)
    base = len(built.chain)
    for i in range(built.k):
        for j in range(base, base + built.k - i):
            assert tree.is_below(built.numbering[j], built.numbering[i + 1])


# ── Orbits ──


def test_orbits(c3):
    assert forward_orbit(g(3, 2, 3)) == [g(3, 2, 3), g(2, 2, 3), g(1, 2, 3)]
    assert forward_orbit(delta_min(c3)) == [delta_min(c3)]
    assert forward_orbit(g(3, 3, 3)) == [g(3, 3, 3), g(1, 2, 3)]
