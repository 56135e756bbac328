"""Tests for defining vectors, weight vectors and the derived generators."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lcd_certify.analysis import hull_dimension
from lcd_certify.defining_vector import (
    DefiningVector,
    DefiningVectorError,
    DimensionOutOfRangeError,
    InvalidPointError,
    NonIntegralSolutionError,
    TypeSignature,
    VectorParseError,
    WeightVector,
    build_macdonald,
    build_point_table,
    build_simplex,
    build_spectral,
    defining_vector_from_weights,
    defining_vector_of,
    extend_parity,
    generator_from,
    juxtapose,
    macdonald_vector,
    normalize,
    reduce_at_point,
    sigma,
    type_signature,
    weight_vector,
)
from lcd_certify.gf2 import BitMatrix

TABLE_TWO_ROW_ONE = "2212121201212112211111121111112"

vectors = st.lists(st.integers(0, 4), min_size=31, max_size=31).map(DefiningVector.of)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_point_order_is_binary_counting(k: int):
    table = build_point_table(k)
    assert table.columns == tuple(range(1, 2**k))
    assert table.coordinates(1) == (1,) + (0,) * (k - 1)
    assert table.index_of(2**k - 1) == 2**k - 1


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_spectral_identity(k: int):
    pair = build_spectral(k)
    product = pair.p @ pair.inverse_numerator()
    assert np.array_equal(product, 2 ** (k - 1) * np.eye(2**k - 1, dtype=np.int64))
    assert np.array_equal(pair.p + pair.q, np.ones_like(pair.p))


def test_spectral_is_read_only():
    with pytest.raises(ValueError, match="read-only"):
        build_spectral(3).p[0, 0] = 5


@pytest.mark.parametrize(
    ("n", "d", "expected"),
    [(44, 22, 22), (45, 22, 38), (49, 24, 40), (31, 16, 0)],
)
def test_sigma(n: int, d: int, expected: int):
    assert sigma(n, 5, d) == expected


def test_parse_forms():
    digits = DefiningVector.parse(TABLE_TWO_ROW_ONE)
    assert digits.k == 5
    assert digits.n == 41
    assert DefiningVector.parse("10, 0 1") == DefiningVector(2, (10, 0, 1))
    assert DefiningVector(2, (10, 0, 1)).to_text() == "10,0,1"
    assert str(digits) == TABLE_TWO_ROW_ONE


@pytest.mark.parametrize(
    ("text", "k", "fragment"),
    [
        ("", None, "empty input"),
        ("12a", None, "position 3"),
        ("111", 5, "expected 31 entries"),
        ("1111", None, "2^k - 1"),
        ("1", None, "outside the supported range"),
        ("1,,2", None, "misplaced separator"),
    ],
)
def test_parse_errors(text: str, k: int | None, fragment: str):
    with pytest.raises(VectorParseError, match=fragment.replace("^", r"\^")):
        DefiningVector.parse(text, k)


def test_invalid_vectors():
    with pytest.raises(DefiningVectorError):
        DefiningVector(2, (1, -1, 0))
    with pytest.raises(DimensionOutOfRangeError):
        DefiningVector(9, (0,) * 511)
    with pytest.raises(InvalidPointError):
        DefiningVector(2, (1, 1, 1))[4]


def test_simplex_weights():
    simplex = DefiningVector.of([1] * 31)
    assert weight_vector(simplex).weights == (16,) * 31
    assert generator_from(simplex) == build_simplex(5)


@settings(max_examples=1000)
@given(vectors)
def test_weight_vector_round_trip(vector: DefiningVector):
    weights = weight_vector(vector)
    assert sum(weights.weights) == 16 * vector.n
    assert weights.n == vector.n
    assert defining_vector_from_weights(weights) == vector


def test_weights_without_preimage():
    with pytest.raises(NonIntegralSolutionError):
        defining_vector_from_weights(WeightVector(2, (1, 0, 0)))
    with pytest.raises(NonIntegralSolutionError):
        defining_vector_from_weights(WeightVector(2, (0, 0, 2)))


@given(vectors, st.integers(1, 3))
def test_juxtaposition_shifts_weights_and_keeps_hull(
    vector: DefiningVector,
    copies: int,
):
    assume(not vector.is_degenerate)
    lifted = juxtapose(vector, copies)
    assert lifted.n == vector.n + 31 * copies
    assert weight_vector(lifted).weights == tuple(
        w + 16 * copies for w in weight_vector(vector).weights
    )
    hull = hull_dimension(generator_from(vector))
    assert hull_dimension(generator_from(lifted)) == hull


def test_juxtapose_and_normalize():
    vector = DefiningVector.parse(TABLE_TWO_ROW_ONE)
    base, rest = normalize(juxtapose(vector, 2))
    assert base == 2
    assert rest == vector
    with pytest.raises(DefiningVectorError):
        juxtapose(vector, -1)


def test_type_signature():
    signature = type_signature(DefiningVector.parse(TABLE_TWO_ROW_ONE))
    assert str(signature) == "]](0)_1|(1)_19|(2)_11]]"
    assert TypeSignature.parse("]](0)_1|(1)_19|(2)_11]]") == signature
    with pytest.raises(DefiningVectorError):
        TypeSignature.parse("]](0)_1|(1)19]]")


@given(vectors, st.integers(1, 31))
def test_reduced_code_contracts(vector: DefiningVector, point: int):
    assume(not vector.is_degenerate)
    removed, reduced = reduce_at_point(vector, point)
    assert removed == vector[point]
    assert reduced.k == 4
    assert reduced.n == vector.n - removed
    assert weight_vector(reduced).min_distance >= weight_vector(vector).min_distance
    assert not reduced.is_degenerate
    reduced_hull = hull_dimension(generator_from(reduced))
    assert hull_dimension(generator_from(vector)) >= reduced_hull - 1


def test_reduce_needs_dimension_three():
    with pytest.raises(DefiningVectorError):
        reduce_at_point(DefiningVector(2, (1, 1, 1)), 1)


def test_generator_round_trip():
    vector = DefiningVector.parse(TABLE_TWO_ROW_ONE)
    matrix = generator_from(vector)
    assert matrix.shape == (5, 41)
    padded = matrix.hstack(BitMatrix.zeros(5, 2))
    assert defining_vector_of(padded) == (vector, 2)


def test_extend_parity():
    extended = extend_parity(build_simplex(2))
    assert extended == BitMatrix.from_array([[1, 0, 1, 0], [0, 1, 1, 0]])
    odd = extend_parity(BitMatrix.from_array([[1, 1, 1]]))
    assert odd.to_array().tolist() == [[1, 1, 1, 1]]


@pytest.mark.parametrize(("k", "m"), [(3, 1), (4, 2), (5, 1), (5, 3), (5, 4)])
def test_macdonald(k: int, m: int):
    vector = macdonald_vector(k, m)
    assert vector.n == 2**k - 2**m
    assert generator_from(vector) == build_macdonald(k, m)
    assert weight_vector(vector).min_distance == 2 ** (k - 1) - 2 ** (m - 1)


def test_macdonald_range():
    with pytest.raises(DefiningVectorError):
        macdonald_vector(4, 4)
    with pytest.raises(DefiningVectorError):
        build_macdonald(4, 0)
