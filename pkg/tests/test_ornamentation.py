from __future__ import annotations

import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from conftest import g, lattice
from ornapop.combinatorics.errors import DomainError
from ornapop.combinatorics.ornamentation import (
    Comparison,
    Ornamentation,
    anatomy,
    compare,
    covers_below,
    delta_max,
    delta_min,
    leq,
    meet,
    minimal_reduction_nodes,
    pop,
    pop_via_covers,
    reduce,
    validate,
    weight,
)
from ornapop.combinatorics.trees import enumerate_plane_trees, parse_tree
from ornapop.models.reports import ViolationKind

TREES_UPTO_5 = [t.render() for n in range(1, 6) for t in enumerate_plane_trees(n)]


@st.composite
def elements(draw, trees=TREES_UPTO_5):
    paren = draw(st.sampled_from(trees))
    return draw(st.sampled_from(lattice(paren).elements))


# ── Validation ──


def test_delta_max_is_valid(c3):
    assert validate(c3, delta_max(c3).ornaments).ok


def test_overlap_is_reported(c3):
    report = validate(c3, [{0, 1}, {1, 2}, {2}])
    assert not report.ok
    assert report.kind is ViolationKind.OVERLAP
    assert report.nodes == [0, 1]


def test_disconnected_ornament_is_reported(c3):
    report = validate(c3, [{0, 2}, {1}, {2}])
    assert report.kind is ViolationKind.CONNECTIVITY
    assert report.nodes == [0]


def test_foreign_top_is_reported(c3):
    report = validate(c3, [{0}, {0, 1}, {2}])
    assert report.kind is ViolationKind.TOP
    assert report.nodes == [1]


def test_unknown_node_is_a_domain_error(c3):
    with pytest.raises(DomainError):
        validate(c3, [{0, 7}, {1}, {2}])
    with pytest.raises(DomainError):
        validate(c3, [{0}, {1}])


def test_constructor_validates(c3):
    with pytest.raises(DomainError):
        Ornamentation(c3, [{0, 1}, {1, 2}, {2}])


# ── Order and meet ──


def test_compare():
    assert compare(g(2, 2, 3), g(3, 3, 3)) is Comparison.LESS
    assert compare(g(3, 3, 3), g(2, 2, 3)) is Comparison.GREATER
    assert compare(g(2, 2, 3), g(1, 3, 3)) is Comparison.INCOMPARABLE
    assert compare(g(2, 2, 3), g(2, 2, 3)) is Comparison.EQUAL


def test_compare_across_trees():
    with pytest.raises(DomainError):
        compare(g(1, 2, 3), delta_min(parse_tree("(()())")))


def test_meet_examples():
    assert meet(g(3, 2, 3), g(3, 3, 3)) == g(3, 2, 3)
    assert meet(g(2, 2, 3), g(1, 3, 3)) == g(1, 2, 3)
    assert meet(g(2, 2, 3), g(2, 2, 3)) == g(2, 2, 3)


@given(st.data())
def test_meet_is_a_valid_semilattice_operation(data):
    paren = data.draw(st.sampled_from(TREES_UPTO_5))
    pool = lattice(paren).elements
    a, b, c = (data.draw(st.sampled_from(pool)) for _ in range(3))
    m = meet(a, b)
    assert validate(m.tree, m.ornaments).ok
    assert m == meet(b, a)
    assert meet(m, c) == meet(a, meet(b, c))
    assert meet(a, a) == a
    assert leq(m, a) and leq(m, b)


# ── Anatomy and reductions ──


def test_anatomy_of_delta_max(c3):
    parts = anatomy(delta_max(c3), 0)
    assert parts.wrapped == (1,)
    assert parts.sections == {1: frozenset({1, 2})}


def test_anatomy_wraps_nested_singletons():
    parts = anatomy(g(3, 2, 3), 0)
    assert parts.wrapped == (1, 2)
    assert parts.subornaments == (frozenset({1}), frozenset({2}))
    assert parts.sections == {1: frozenset({1, 2})}


def test_anatomy_of_singleton(c3):
    parts = anatomy(delta_min(c3), 1)
    assert parts.wrapped == () and parts.sections == {}


@given(elements())
def test_ornament_decomposes_into_top_and_subornaments(delta):
    for v in delta.tree.nodes():
        parts = anatomy(delta, v)
        union = frozenset({v}).union(*parts.subornaments)
        assert union == delta[v]
        assert sum(len(o) for o in parts.subornaments) == len(delta[v]) - 1
        assert sum(len(s) for s in parts.sections.values()) == len(delta[v]) - 1


def test_minimal_reduction_nodes(c3):
    assert minimal_reduction_nodes(g(3, 2, 3), 0) == [2]
    assert minimal_reduction_nodes(delta_max(c3), 0) == [1]
    assert minimal_reduction_nodes(g(3, 2, 3), 1) == []


def test_reduce():
    assert reduce(g(3, 3, 3), 0, 1) == g(1, 3, 3)
    assert reduce(g(3, 3, 3), 1, 2) == g(3, 2, 3)
    # non-minimal reductions are allowed
    assert reduce(g(3, 2, 3), 0, 1) == g(1, 2, 3)


def test_reduce_requires_wrapping():
    with pytest.raises(DomainError):
        reduce(g(3, 3, 3), 0, 2)


@given(elements())
def test_reductions_are_ornamentations(delta):
    for u, w in enumerate(delta.wrappers):
        if w is not None:
            reduced = reduce(delta, w, u)
            assert validate(reduced.tree, reduced.ornaments).ok


def test_covers_below():
    assert covers_below(g(3, 3, 3)) == [g(1, 3, 3), g(3, 2, 3)]
    assert covers_below(g(3, 2, 3)) == [g(2, 2, 3)]
    assert covers_below(g(1, 2, 3)) == []


@given(elements())
def test_covers_drop_weight_by_one(delta):
    covers = covers_below(delta)
    assert len(covers) == sum(len(minimal_reduction_nodes(delta, v)) for v in delta.tree.nodes())
    for lower in covers:
        assert compare(lower, delta) is Comparison.LESS
        assert weight(lower) < weight(delta)


@pytest.mark.parametrize("paren", [t for t in TREES_UPTO_5 if len(t) <= 8])
def test_weight_one_below_is_a_cover(paren: str):
    pool = lattice(paren).elements
    for upper in pool:
        covers = set(covers_below(upper))
        for lower in pool:
            if leq(lower, upper) and weight(lower) == weight(upper) - 1:
                assert lower in covers


# ── Pop ──


def test_pop_examples(c3):
    assert pop(g(3, 2, 3)) == g(2, 2, 3)
    assert pop(g(3, 3, 3)) == g(1, 2, 3)
    assert pop(delta_min(c3)) == delta_min(c3)


def test_weight_examples(c3):
    assert weight(delta_min(c3)) == 3
    assert weight(delta_max(c3)) == 6
    assert weight(g(3, 2, 3)) == 5


def test_single_node_tree():
    tree = parse_tree("()")
    only = delta_min(tree)
    assert only == delta_max(tree)
    assert pop(only) == only
    assert covers_below(only) == []


@given(elements())
def test_pop_is_below_and_only_fixes_the_bottom(delta):
    popped = pop(delta)
    assert leq(popped, delta)
    assert (popped == delta) == (delta == delta_min(delta.tree))


@given(elements())
def test_pop_matches_meet_of_covers(delta):
    assert pop(delta) == pop_via_covers(delta)


@given(elements())
def test_pop_shrinks_every_section(delta):
    popped = pop(delta)
    for v in delta.tree.nodes():
        for child in delta.section_children(v):
            before = delta.section(v, child)
            after = frozenset(x for x in popped[v] if delta.tree.is_below(x, child))
            assert len(after) <= len(before) - 1


@hsettings(max_examples=60)
@given(elements())
def test_pop_keeps_nesting_with_original(delta):
    popped = pop(delta)
    for u in delta.tree.nodes():
        for v in delta.tree.nodes():
            a, b = delta[u], popped[v]
            assert not (a & b) or a <= b or b <= a
