"""Tests for the defining vector search."""

import pickle
import random
from collections import Counter

import pytest

from lcd_certify.analysis import is_lcd
from lcd_certify.defining_vector import (
    DefiningVector,
    TypeSignature,
    generator_from,
    weight_vector,
)
from lcd_certify.enumeration import (
    InfeasibleSpecError,
    SearchBudgetExceededError,
    SearchMode,
    SearchSpec,
    count_by_type,
    entry_bounds,
    entry_lower_bound,
    enumerate_defining_vectors,
    oracle_min_distance,
    random_search,
    subspace_capacity,
    subspaces,
)
from lcd_certify.equivalence import classify, gl_order

FORTY_FOUR = SearchSpec(44, 5, 22, max_entry=2, require_zero_entry=True)
FORTY_FOUR_TYPES = {
    TypeSignature.parse("]](0)_1|(1)_16|(2)_14]]"): 3720,
    TypeSignature.parse("]](0)_3|(1)_12|(2)_16]]"): 1085,
}


def test_spec_invariants():
    with pytest.raises(InfeasibleSpecError):
        SearchSpec(10, 5, 4, max_entry=0)
    with pytest.raises(InfeasibleSpecError):
        SearchSpec(3, 5, 4, max_entry=1)
    assert SearchSpec(44, 5, 22, 2, node_budget=1) == SearchSpec(44, 5, 22, 2)
    assert FORTY_FOUR.describe() == "[44,5,22] max 2, zero required"
    assert SearchSpec(9, 5, 3, 2, exact_distance=False).describe() == "[9,5,>=3] max 2"


@pytest.mark.parametrize(
    ("n", "d", "low", "high"),
    [(44, 22, 0, 2), (45, 22, 0, 3), (93, 48, 3, 3), (48, 24, 0, 3), (13, 6, 0, 1)],
)
def test_entry_bounds(n: int, d: int, low: int, high: int):
    assert entry_lower_bound(n, 5, d) == low
    assert entry_bounds(n, 5, d) == high


def test_subspace_capacity():
    assert subspace_capacity(44, 5, 22, 1) == 22
    assert subspace_capacity(31, 5, 16, 2) == 7
    assert subspace_capacity(31, 5, 16, 4) == 1


def test_subspaces():
    levels = subspaces(4)
    assert [len(levels[r]) for r in (1, 2, 3)] == [15, 35, 15]
    assert all(len(space) == 2**r - 1 for r in (1, 2, 3) for space in levels[r])


def test_no_thirteen_five_six():
    spec = SearchSpec(13, 5, 6, max_entry=entry_bounds(13, 5, 6))
    for mode in SearchMode:
        solutions = enumerate_defining_vectors(spec, mode=mode)
        assert solutions.total == 0
        assert solutions.solutions == []


@pytest.mark.parametrize("mode", list(SearchMode))
def test_simplex_is_unique(mode: SearchMode):
    spec = SearchSpec(31, 5, 16, max_entry=entry_bounds(31, 5, 16))
    solutions = enumerate_defining_vectors(spec, mode=mode)
    assert solutions.solutions == [DefiningVector.of([1] * 31)]
    assert solutions.total == 1


def test_forced_copies_above_cap():
    spec = SearchSpec(93, 5, 48, max_entry=2)
    assert enumerate_defining_vectors(spec).total == 0
    zero = SearchSpec(62, 5, 32, max_entry=2, require_zero_entry=True)
    assert enumerate_defining_vectors(zero).total == 0


def test_forty_four_counts():
    solutions = enumerate_defining_vectors(FORTY_FOUR)
    assert solutions.total == 4805
    assert count_by_type(solutions) == FORTY_FOUR_TYPES
    assert solutions.is_listed
    assert len(solutions.representatives()) == 2
    classes = classify(solutions)
    assert sorted(c.stabilizer_order for c in classes) == [2688, 9216]
    assert all(c.orbit_size * c.stabilizer_order == gl_order(5) for c in classes)
    assert sum(c.orbit_size for c in classes) == 4805
    for vector in random.Random(0).sample(solutions.solutions, 500):
        assert oracle_min_distance(vector) == weight_vector(vector).min_distance == 22
        assert 0 in vector.entries


@pytest.mark.slow
def test_forty_four_labeled_agrees():
    labeled = enumerate_defining_vectors(FORTY_FOUR, mode=SearchMode.LABELED)
    orbits = enumerate_defining_vectors(FORTY_FOUR)
    assert labeled.solutions == orbits.solutions
    assert labeled.by_type == orbits.by_type


def test_listing_limit():
    solutions = enumerate_defining_vectors(FORTY_FOUR, max_labeled=100)
    assert solutions.total == 4805
    assert solutions.solutions == []
    assert not solutions.is_listed


def test_forty_eight_classes():
    spec = SearchSpec(48, 5, 24, max_entry=2, require_zero_entry=True)
    classes = classify(enumerate_defining_vectors(spec))
    assert Counter(str(c.type_signature) for c in classes) == {
        "]](0)_1|(1)_12|(2)_18]]": 2,
        "]](0)_3|(1)_8|(2)_20]]": 1,
        "]](0)_7|(2)_24]]": 1,
    }
    assert sorted(c.profile.h for c in classes) == [3, 5, 5, 5]
    enumerators = [c.profile.weight_enumerator.as_dict() for c in classes]
    assert {24: 28, 32: 3} in enumerators
    assert {24: 26, 28: 4, 32: 1} in enumerators
    assert all(sum(e.values()) == 31 for e in enumerators)


def test_projective_seventeen():
    spec = SearchSpec(17, 5, 8, max_entry=1)
    classes = classify(enumerate_defining_vectors(spec))
    assert len(classes) == 1
    assert classes[0].profile.h == 4


@pytest.mark.parametrize("workers", [2])
def test_workers_agree(workers: int):
    spec = SearchSpec(17, 5, 8, max_entry=1)
    single = enumerate_defining_vectors(spec)
    split = enumerate_defining_vectors(spec, workers=workers)
    assert split.solutions == single.solutions
    assert split.orbits == single.orbits


def test_budget_exceeded():
    spec = SearchSpec(44, 5, 22, max_entry=2, require_zero_entry=True, node_budget=10)
    with pytest.raises(SearchBudgetExceededError) as info:
        enumerate_defining_vectors(spec, mode=SearchMode.LABELED)
    assert info.value.nodes > 10


def test_deterministic_reruns():
    first = enumerate_defining_vectors(FORTY_FOUR)
    second = enumerate_defining_vectors(FORTY_FOUR)
    assert first.solutions == second.solutions
    assert first.orbits == second.orbits


def test_oracle_min_distance():
    assert oracle_min_distance(DefiningVector.of([1] * 31)) == 16
    assert oracle_min_distance(DefiningVector(3, (1, 1, 1, 0, 0, 0, 0))) == 0
    vector = DefiningVector.parse("2212121201212112211111121111112")
    assert oracle_min_distance(vector) == weight_vector(vector).min_distance == 20


def test_random_search_is_seeded():
    spec = SearchSpec(7, 5, 2, max_entry=entry_bounds(7, 5, 2), exact_distance=False)

    def accept(vector: DefiningVector) -> bool:
        return is_lcd(generator_from(vector))

    first = random_search(spec, seed=3, accept=accept)
    assert first is not None
    assert first == random_search(spec, seed=3, accept=accept)
    assert is_lcd(generator_from(first))
    assert oracle_min_distance(first) >= 2


def test_random_search_exhausts():
    max_entry = entry_bounds(6, 5, 2)
    spec = SearchSpec(6, 5, 2, max_entry=max_entry, exact_distance=False)
    found = random_search(spec, seed=0, accept=lambda v: is_lcd(generator_from(v)))
    assert found is None


def test_budget_exceeded_with_workers():
    spec = SearchSpec(
        45,
        5,
        22,
        max_entry=2,
        require_zero_entry=True,
        node_budget=2000,
    )
    with pytest.raises(SearchBudgetExceededError) as info:
        enumerate_defining_vectors(spec, workers=2)
    assert info.value.nodes > 2000
    assert all(v.n == 45 for v in info.value.partial)


def test_budget_error_pickles():
    vector = DefiningVector.of([1] * 31)
    error = SearchBudgetExceededError(FORTY_FOUR, 10, [vector])
    restored = pickle.loads(pickle.dumps(error))  # noqa: S301
    assert isinstance(restored, SearchBudgetExceededError)
    assert (restored.spec, restored.nodes, restored.partial) == (
        FORTY_FOUR,
        10,
        [vector],
    )
    assert str(restored) == str(error)
    infeasible = InfeasibleSpecError(FORTY_FOUR, "no room")
    assert str(pickle.loads(pickle.dumps(infeasible))) == str(infeasible)  # noqa: S301
