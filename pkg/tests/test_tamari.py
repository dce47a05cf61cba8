from __future__ import annotations

import pytest

from conftest import g, lattice
from ornapop.combinatorics.errors import DomainError
from ornapop.combinatorics.image import in_pop_image
from ornapop.combinatorics.lattice_lab import brute_popk_image
from ornapop.combinatorics.ornamentation import delta_min
from ornapop.combinatorics.rank_orbit import pop_power
from ornapop.combinatorics.tamari import (
    GSequence,
    count_popk_images,
    gf_coefficients,
    in_popk_image_tamari,
    motzkin_numbers,
    popk_certificate,
    tamari_popk_preimage,
    tamari_popk_report,
)
from ornapop.combinatorics.trees import catalan, chain_tree, parse_tree
from ornapop.models.reports import PopkCondition

CATALAN_ROW = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012]
SHIFTED_MOTZKIN_ROW = [1, 1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798]


# ── g-sequences ──


def test_gsequence_round_trip(c3):
    delta = g(3, 2, 3)
    assert delta[0] == frozenset({0, 1, 2})
    assert delta.tree == c3
    assert GSequence.from_ornamentation(delta) == GSequence.of([3, 2, 3])
    assert str(GSequence.of([3, 2, 3])) == "[3,2,3]"


@pytest.mark.parametrize("values", [[2, 3, 3], [1, 1, 3], [4, 2, 3], []])
def test_gsequence_rejects_invalid(values):
    with pytest.raises(DomainError):
        GSequence.of(values)


def test_gsequence_needs_chain():
    with pytest.raises(DomainError):
        GSequence.from_ornamentation(delta_min(parse_tree("(()())")))


def test_wrapper():
    seq = GSequence.of([4, 3, 3, 4])
    assert seq.wrapper(2) == 1
    assert seq.wrapper(3) == 2
    assert seq.wrapper(1) == 0


# ── Membership ──


def test_membership_examples():
    assert in_popk_image_tamari(g(2, 2, 3), 1)
    assert not in_popk_image_tamari(g(2, 2, 3), 2)
    assert in_popk_image_tamari(GSequence.of([2, 2, 3, 4, 5]), 3)


def test_condition_two_failure_is_named():
    report = tamari_popk_report(g(2, 2, 3), 2)
    assert [f.condition for f in report.failures] == [PopkCondition.TAMARI_II]
    assert report.failures[0].witness == [0]


def test_hug_failures_are_named():
    # δ(v2) = {v2, v3, v4} reaches the leaf; δ(v3) = {v3, v4} shares its bottom
    report = tamari_popk_report(g(1, 4, 4, 4), 1)
    conditions = {(f.condition, tuple(f.witness)) for f in report.failures}
    assert (PopkCondition.TAMARI_I, (1,)) in conditions
    assert (PopkCondition.TAMARI_I, (1, 2)) in conditions
    assert not in_popk_image_tamari(g(1, 4, 4, 4), 1)


def test_wrapped_hug_detected():
    # v1 = {v1..v3}, v2 = {v2, v3}: v1 hugs v2
    report = tamari_popk_report(GSequence.of([3, 3, 3, 4]), 1)
    assert any(f.witness == [0, 1] for f in report.failures)


def test_identity_power_contains_everything():
    assert in_popk_image_tamari(g(3, 3, 3), 0)


def test_membership_needs_chain():
    with pytest.raises(DomainError):
        in_popk_image_tamari(delta_min(parse_tree("(()())")), 1)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("k", range(5))
def test_characterization_matches_enumeration(n: int, k: int):
    graph = lattice(chain_tree(n).render())
    image = set(brute_popk_image(graph, k))
    for delta in graph.elements:
        assert in_popk_image_tamari(delta, k) == (delta in image)


@pytest.mark.parametrize("n", range(1, 6))
def test_chain_hug_test_matches_general_one(n: int):
    for delta in lattice(chain_tree(n).render()).elements:
        assert in_popk_image_tamari(delta, 1) == in_pop_image(delta)


# ── Preimages ──


def test_preimage_examples():
    assert tamari_popk_preimage(g(2, 2, 3), 1) == GSequence.of([2, 2, 3])
    stretched = tamari_popk_preimage(GSequence.of([2, 2, 3, 4]), 2)
    assert stretched == GSequence.of([3, 2, 3, 4])
    assert pop_power(stretched.to_ornamentation(), 1) == g(2, 2, 3, 4)
    assert tamari_popk_preimage(GSequence.of([1, 2, 3, 4, 5]), 3) == GSequence.of([1, 2, 3, 4, 5])


def test_preimage_refuses_non_members():
    with pytest.raises(DomainError):
        tamari_popk_preimage(g(2, 2, 3), 2)
    with pytest.raises(DomainError):
        tamari_popk_preimage(g(2, 2, 3), 0)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("k", range(1, 4))
def test_certificates_reach_every_member(n: int, k: int):
    for delta in brute_popk_image(lattice(chain_tree(n).render()), k):
        sigma = popk_certificate(delta, k)
        assert pop_power(sigma, k) == delta


# ── Counting ──


def test_count_examples():
    assert count_popk_images(5, 0) == 42
    assert count_popk_images(5, 1) == 9
    assert count_popk_images(6, 2) == 8


def test_count_is_exact_for_large_n():
    assert count_popk_images(40, 0) == catalan(40)


def test_gf_rows():
    assert gf_coefficients(0, 5) == [1, 1, 2, 5, 14, 42]
    assert gf_coefficients(1, 6) == [1, 1, 1, 2, 4, 9, 21]
    assert gf_coefficients(2, 6) == [1, 1, 1, 1, 2, 4, 8]
    assert gf_coefficients(0, 12) == CATALAN_ROW
    assert gf_coefficients(1, 12) == SHIFTED_MOTZKIN_ROW


@pytest.mark.parametrize("k", range(4))
def test_gf_agrees_with_recurrence(k: int):
    assert gf_coefficients(k, 12) == [count_popk_images(n, k) for n in range(13)]


def test_motzkin_shift():
    assert motzkin_numbers(11) == SHIFTED_MOTZKIN_ROW[1:]


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("k", range(4))
def test_counts_match_enumeration(n: int, k: int):
    assert len(brute_popk_image(lattice(chain_tree(n).render()), k)) == count_popk_images(n, k)
