"""Tests for the GL(k, 2) action and the classification."""

from functools import reduce

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcd_certify.analysis import profile
from lcd_certify.defining_vector import DefiningVector, type_signature
from lcd_certify.enumeration import SearchSpec, SolutionSet
from lcd_certify.equivalence import (
    EquivalenceError,
    LinearAutomorphism,
    NotInvertibleError,
    OrbitTooLargeError,
    apply,
    are_equivalent,
    canonical_form,
    canonical_form_and_stabilizer,
    classify,
    generators,
    gl_order,
    group_elements,
    orbit,
    stabilizer_order,
)

TABLE_TWO_ROW_ONE = DefiningVector.parse("2212121201212112211111121111112")


def vectors(k: int) -> st.SearchStrategy[DefiningVector]:
    return st.lists(st.integers(0, 2), min_size=2**k - 1, max_size=2**k - 1).map(
        lambda entries: DefiningVector(k, tuple(entries)),
    )


def automorphisms(k: int) -> st.SearchStrategy[LinearAutomorphism]:
    """Random words in the generators."""
    return st.lists(st.integers(0, 2), max_size=40).map(
        lambda word: reduce(
            lambda acc, i: generators(k)[i].compose(acc),
            word,
            LinearAutomorphism.identity(k),
        ),
    )


@pytest.mark.parametrize(("k", "order"), [(2, 6), (3, 168), (4, 20160), (5, 9999360)])
def test_gl_order(k: int, order: int):
    assert gl_order(k) == order


@pytest.mark.parametrize("k", [2, 3])
def test_group_elements(k: int):
    elements = list(group_elements(k))
    assert len(elements) == gl_order(k)
    assert len({e.images for e in elements}) == gl_order(k)


def test_not_invertible():
    with pytest.raises(NotInvertibleError):
        LinearAutomorphism(3, (1, 2, 3))
    with pytest.raises(EquivalenceError):
        apply(LinearAutomorphism.identity(3), TABLE_TWO_ROW_ONE)


@given(automorphisms(4))
def test_inverse_composes_to_identity(automorphism: LinearAutomorphism):
    identity = LinearAutomorphism.identity(4)
    assert automorphism.compose(automorphism.inverse()) == identity


@given(vectors(5), automorphisms(5))
def test_action_preserves_invariants(
    vector: DefiningVector,
    automorphism: LinearAutomorphism,
):
    moved = apply(automorphism, vector)
    assert type_signature(moved) == type_signature(vector)
    before, after = profile(vector), profile(moved)
    assert (before.d, before.h, before.weight_enumerator) == (
        after.d,
        after.h,
        after.weight_enumerator,
    )
    assert canonical_form(moved) == canonical_form(vector)


@given(vectors(5), automorphisms(5))
def test_are_equivalent_finds_witness(
    vector: DefiningVector,
    automorphism: LinearAutomorphism,
):
    moved = apply(automorphism, vector)
    witness = are_equivalent(vector, moved)
    assert witness is not None
    assert apply(witness, vector) == moved


@given(vectors(3))
def test_orbit_stabilizer(vector: DefiningVector):
    assert len(orbit(vector)) * stabilizer_order(vector) == gl_order(3)
    assert canonical_form(vector) == min(orbit(vector))


def test_stabilizer_by_brute_force():
    vector = DefiningVector(3, (2, 1, 0, 1, 1, 0, 2))
    fixed = [g for g in group_elements(3) if apply(g, vector) == vector]
    assert stabilizer_order(vector) == len(fixed)


def test_stabilizer_of_simplex():
    simplex = DefiningVector.of([1] * 31)
    assert canonical_form_and_stabilizer(simplex) == (simplex, gl_order(5))


def test_orbit_limit():
    with pytest.raises(OrbitTooLargeError):
        orbit(TABLE_TWO_ROW_ONE, limit=1000)


def test_inequivalent():
    other = DefiningVector.parse("2222021201212112210121121111112")
    assert are_equivalent(TABLE_TWO_ROW_ONE, other) is None
    assert are_equivalent(TABLE_TWO_ROW_ONE, DefiningVector(3, (1,) * 7)) is None


def test_classify_listed_solutions():
    first = DefiningVector(3, (1, 1, 1, 1, 1, 1, 1))
    second = DefiningVector(3, (2, 1, 1, 1, 1, 1, 0))
    members = sorted(orbit(first) | orbit(second))
    spec = SearchSpec(7, 3, 3, max_entry=2)
    solution_set = SolutionSet(spec, members, len(members), {})
    classes = classify(solution_set)
    assert len(classes) == 2
    for found in classes:
        assert found.member_count == found.orbit_size
        assert found.orbit_size * found.stabilizer_order == gl_order(3)
    assert {c.representative for c in classes} == {
        canonical_form(first),
        canonical_form(second),
    }
