"""Defining vectors of binary linear codes.

A nondegenerate binary `[n, k]` code is determined up to equivalence by how
often each nonzero point of `F_2^k` appears as a column of a generator matrix.
The points are ordered recursively: `S_2` lists `(1,0), (0,1), (1,1)` and
`S_{k+1}` lists `S_k` padded with a zero, then `e_{k+1}`, then `S_k` padded
with a one. With bit `b` standing for coordinate `b + 1`, this order makes the
`i`-th point the binary expansion of `i`; code elsewhere in the package relies
on that identity and `PointTable` checks it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache
from typing import TYPE_CHECKING

import numpy as np

from lcd_certify.gf2 import BitMatrix, rank

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

MIN_DIMENSION = 2
MAX_DIMENSION = 8


class DefiningVectorError(Exception):
    """Base class for defining vector errors."""


class DimensionOutOfRangeError(DefiningVectorError):
    """Raised when the code dimension is outside the supported range."""

    def __init__(self, k: int, max_dimension: int = MAX_DIMENSION) -> None:
        """Initialize the error."""
        super().__init__(
            f"Dimension {k} is outside the supported range "
            f"{MIN_DIMENSION}..{max_dimension}.",
        )


class VectorParseError(DefiningVectorError):
    """Raised when a defining vector cannot be parsed."""

    def __init__(self, text: str, reason: str) -> None:
        """Initialize the error."""
        shown = text if len(text) <= 80 else text[:77] + "..."  # noqa: PLR2004
        super().__init__(f"Cannot parse defining vector '{shown}': {reason}")
        self.text = text
        self.reason = reason


class InvalidPointError(DefiningVectorError):
    """Raised when a point index does not name a nonzero point."""

    def __init__(self, point: int, k: int) -> None:
        """Initialize the error."""
        super().__init__(
            f"Point {point} is not in 1..{2**k - 1} for dimension {k}.",
        )


class NonIntegralSolutionError(DefiningVectorError):
    """Raised when a weight vector has no nonnegative integral preimage."""

    def __init__(self, weights: Sequence[int], reason: str) -> None:
        """Initialize the error."""
        super().__init__(f"No defining vector has weights {list(weights)}: {reason}")


def num_points(k: int) -> int:
    """Return `2^k - 1`, the number of nonzero points of `F_2^k`."""
    return (1 << k) - 1


def check_dimension(k: int, max_dimension: int = MAX_DIMENSION) -> None:
    """Raise if `k` is not a supported dimension."""
    if not MIN_DIMENSION <= k <= max_dimension:
        raise DimensionOutOfRangeError(k, max_dimension)


@dataclass(frozen=True)
class PointTable:
    """The ordered nonzero points of `F_2^k`, as integers."""

    k: int
    columns: tuple[int, ...]

    def point(self, index: int) -> int:
        """Return the point with 1-based `index`."""
        if not 1 <= index <= len(self.columns):
            raise InvalidPointError(index, self.k)
        return self.columns[index - 1]

    def index_of(self, point: int) -> int:
        """Return the 1-based index of a nonzero point."""
        if not 1 <= point <= len(self.columns):
            raise InvalidPointError(point, self.k)
        # The recursive order lists the points as 1, 2, ..., 2^k - 1.
        return point

    def coordinates(self, index: int) -> tuple[int, ...]:
        """Return the coordinate tuple of the point with 1-based `index`."""
        value = self.point(index)
        return tuple((value >> b) & 1 for b in range(self.k))


@cache
def build_point_table(k: int) -> PointTable:
    """Build the recursive point order for dimension `k`."""
    check_dimension(k)
    points = [0b01, 0b10, 0b11]
    for j in range(MIN_DIMENSION, k):
        top = 1 << j
        points = [*points, top, *(p | top for p in points)]
    if points != list(range(1, 1 << k)):
        msg = f"Point order for dimension {k} is not the binary counting order."
        raise DefiningVectorError(msg)
    return PointTable(k, tuple(points))


@dataclass(frozen=True, eq=False)
class SpectralPair:
    """The 0/1 incidence matrices `P_k` and `Q_k = J - P_k`.

    `p[j, i]` is one exactly when the `j`-th hyperplane misses the `i`-th
    point. Both arrays are read-only.
    """

    k: int
    p: np.ndarray
    q: np.ndarray

    def inverse_numerator(self) -> np.ndarray:
        """Return `J - 2 Q_k`, which is `2^(k-1) P_k^{-1}`."""
        return 1 - 2 * self.q


@cache
def build_spectral(k: int) -> SpectralPair:
    """Build `(P_k, Q_k)` by the block recursion from dimension 2."""
    check_dimension(k)
    p = np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0]], dtype=np.int64)
    q = 1 - p
    for _ in range(MIN_DIMENSION, k):
        size = p.shape[0]
        zero = np.zeros((size, 1), dtype=np.int64)
        one = np.ones((size, 1), dtype=np.int64)
        p = np.block(
            [
                [p, zero, p],
                [zero.T, np.ones((1, 1), dtype=np.int64), one.T],
                [p, one, q],
            ],
        )
        q = 1 - p
    p.setflags(write=False)
    q.setflags(write=False)
    return SpectralPair(k, p, q)


@dataclass(frozen=True, order=True)
class DefiningVector:
    """Column multiplicities of a binary `[n, k]` code, one per nonzero point."""

    k: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate the length and signs of the entries."""
        check_dimension(self.k)
        if len(self.entries) != num_points(self.k):
            msg = (
                f"A dimension {self.k} defining vector has {num_points(self.k)} "
                f"entries, got {len(self.entries)}."
            )
            raise DefiningVectorError(msg)
        if any(v < 0 for v in self.entries):
            msg = f"Defining vector entries must be nonnegative: {self.entries}."
            raise DefiningVectorError(msg)

    @classmethod
    def of(cls, entries: Iterable[int]) -> DefiningVector:
        """Build a defining vector, inferring `k` from the length."""
        values = tuple(int(v) for v in entries)
        k = (len(values) + 1).bit_length() - 1
        if num_points(k) != len(values):
            msg = f"Length {len(values)} is not of the form 2^k - 1."
            raise DefiningVectorError(msg)
        return cls(k, values)

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> DefiningVector:
        """Parse a digit string or a comma/space separated list.

        A digit string lists one single-digit entry per point. Entries above
        nine must use a separated list.
        """
        stripped = text.strip()
        if not stripped:
            raise VectorParseError(text, "empty input")
        if re.fullmatch(r"\d+", stripped):
            values = [int(c) for c in stripped]
        elif re.fullmatch(r"\d+(\s*[,\s]\s*\d+)*", stripped):
            values = [int(v) for v in re.split(r"[,\s]+", stripped)]
        else:
            bad = next(
                (i for i, c in enumerate(stripped) if not (c.isdigit() or c in ", ")),
                None,
            )
            if bad is None:
                raise VectorParseError(text, "misplaced separator")
            raise VectorParseError(
                text,
                f"unexpected character {stripped[bad]!r} at position {bad + 1}",
            )
        expected = num_points(k) if k is not None else None
        if expected is not None and len(values) != expected:
            raise VectorParseError(
                text,
                f"expected {expected} entries for dimension {k}, got {len(values)}",
            )
        try:
            return cls.of(values)
        except DefiningVectorError as err:
            raise VectorParseError(text, str(err)) from err

    @property
    def n(self) -> int:
        """Return the code length."""
        return sum(self.entries)

    @property
    def max_entry(self) -> int:
        """Return `l_max`."""
        return max(self.entries)

    @property
    def min_entry(self) -> int:
        """Return `l_min`."""
        return min(self.entries)

    def __getitem__(self, index: int) -> int:
        """Return the entry of the point with 1-based `index`."""
        if not 1 <= index <= len(self.entries):
            raise InvalidPointError(index, self.k)
        return self.entries[index - 1]

    def support(self) -> list[int]:
        """Return the 1-based indices of nonzero entries."""
        return [i for i, v in enumerate(self.entries, start=1) if v]

    def dimension(self) -> int:
        """Return the rank of the column support."""
        support = self.support()
        if not support:
            return 0
        return rank(BitMatrix.from_columns(self.k, support))

    @property
    def is_degenerate(self) -> bool:
        """Whether the columns fail to span `F_2^k`."""
        return self.dimension() < self.k

    def to_text(self) -> str:
        """Render as a digit string, or comma separated if an entry exceeds 9."""
        if all(v <= 9 for v in self.entries):  # noqa: PLR2004
            return "".join(str(v) for v in self.entries)
        return ",".join(str(v) for v in self.entries)

    def __str__(self) -> str:
        """Render as text."""
        return self.to_text()


@dataclass(frozen=True)
class WeightVector:
    """Hyperplane complement weights `w_j = n - (points of H_j counted)`."""

    k: int
    weights: tuple[int, ...]

    @property
    def n(self) -> int:
        """Return the code length, `sum(w) / 2^(k-1)`."""
        return sum(self.weights) >> (self.k - 1)

    @property
    def min_distance(self) -> int:
        """Return the minimum distance."""
        return min(self.weights)

    def excess(self) -> tuple[int, ...]:
        """Return `w - d * 1`."""
        d = self.min_distance
        return tuple(w - d for w in self.weights)

    def __str__(self) -> str:
        """Render as a comma separated list."""
        return ",".join(str(w) for w in self.weights)


def weight_vector(vector: DefiningVector) -> WeightVector:
    """Return `W = P_k L`: the weight of the codeword for each hyperplane."""
    weights = build_spectral(vector.k).p @ np.asarray(vector.entries, dtype=np.int64)
    return WeightVector(vector.k, tuple(int(w) for w in weights))


def defining_vector_from_weights(weights: WeightVector) -> DefiningVector:
    """Invert `W = P_k L` using `P_k^{-1} = (J - 2 Q_k) / 2^(k-1)`."""
    k = weights.k
    w = np.asarray(weights.weights, dtype=np.int64)
    if w.shape != (num_points(k),):
        raise NonIntegralSolutionError(weights.weights, "wrong number of weights")
    numer = build_spectral(k).inverse_numerator() @ w
    denom = 1 << (k - 1)
    if np.any(numer % denom):
        raise NonIntegralSolutionError(weights.weights, "preimage is not integral")
    entries = numer // denom
    if np.any(entries < 0):
        raise NonIntegralSolutionError(weights.weights, "preimage has negative entries")
    return DefiningVector(k, tuple(int(v) for v in entries))


def sigma(n: int, k: int, d: int) -> int:
    """Return `2^(k-1) n - d (2^k - 1)`, the total weight excess."""
    return (1 << (k - 1)) * n - d * num_points(k)


@dataclass(frozen=True, order=True)
class TypeSignature:
    """Multiset of entry values, as sorted `(value, multiplicity)` pairs."""

    parts: tuple[tuple[int, int], ...]

    _PART = re.compile(r"\((\d+)\)_(\d+)")

    @classmethod
    def parse(cls, text: str) -> TypeSignature:
        """Parse the `]](0)_1|(1)_15|(2)_15]]` notation."""
        body = text.strip().removeprefix("]]").removesuffix("]]")
        parts = []
        for chunk in body.split("|"):
            match = cls._PART.fullmatch(chunk.strip())
            if match is None:
                msg = f"Malformed type signature part {chunk!r} in {text!r}."
                raise DefiningVectorError(msg)
            parts.append((int(match[1]), int(match[2])))
        return cls(tuple(sorted(parts)))

    def __str__(self) -> str:
        """Render in `]](v)_m|...]]` notation."""
        return "]]" + "|".join(f"({v})_{m}" for v, m in self.parts) + "]]"


def type_signature(vector: DefiningVector) -> TypeSignature:
    """Return the value multiset of the entries."""
    values, counts = np.unique(np.asarray(vector.entries), return_counts=True)
    return TypeSignature(tuple(zip(map(int, values), map(int, counts))))


def normalize(vector: DefiningVector) -> tuple[int, DefiningVector]:
    """Split `L` as `l_min * 1 + L'` and return `(l_min, L')`."""
    base = vector.min_entry
    return base, DefiningVector(vector.k, tuple(v - base for v in vector.entries))


def juxtapose(vector: DefiningVector, copies: int) -> DefiningVector:
    """Append `copies` simplex codes: `L + copies * 1`."""
    if copies < 0 and copies + vector.min_entry < 0:
        msg = f"Cannot remove {-copies} simplex copies from {vector}."
        raise DefiningVectorError(msg)
    return DefiningVector(vector.k, tuple(v + copies for v in vector.entries))


def reduce_at_point(vector: DefiningVector, point: int) -> tuple[int, DefiningVector]:
    """Return `(m, L_1)` for the residual code at `point` with `m = l_point`.

    The quotient map `F_2^k -> F_2^k / <a_p>` is realised by clearing the
    lowest set bit `b` of `a_p` (adding `a_p` when needed) and deleting
    coordinate `b`. Each pair `{a, a + a_p}` lands on one point of `F_2^(k-1)`.
    """
    k = vector.k
    if k <= MIN_DIMENSION:
        msg = f"Cannot reduce a dimension {k} defining vector."
        raise DefiningVectorError(msg)
    pivot_point = build_point_table(k).point(point)
    pivot = (pivot_point & -pivot_point).bit_length() - 1
    low = (1 << pivot) - 1
    reduced = [0] * num_points(k - 1)
    for alpha, value in enumerate(vector.entries, start=1):
        if alpha == pivot_point or not value:
            continue
        image = alpha ^ pivot_point if alpha >> pivot & 1 else alpha
        image = (image & low) | ((image >> (pivot + 1)) << pivot)
        reduced[image - 1] += value
    return vector[point], DefiningVector(k - 1, tuple(reduced))


def generator_from(vector: DefiningVector) -> BitMatrix:
    """Return the `k x n` generator, points repeated in ascending order."""
    columns = [
        point
        for point, count in zip(build_point_table(vector.k).columns, vector.entries)
        for _ in range(count)
    ]
    return BitMatrix.from_columns(vector.k, columns)


def defining_vector_of(matrix: BitMatrix) -> tuple[DefiningVector, int]:
    """Count the columns of a generator by point.

    Returns the defining vector and the number of zero columns.
    """
    counts = [0] * num_points(matrix.rows)
    zeros = 0
    for value in matrix.column_values():
        if value:
            counts[value - 1] += 1
        else:
            zeros += 1
    return DefiningVector(matrix.rows, tuple(counts)), zeros


def extend_parity(matrix: BitMatrix) -> BitMatrix:
    """Append an overall parity column."""
    parity = matrix.to_array().sum(axis=1, keepdims=True) % 2
    return BitMatrix.from_array(np.hstack([matrix.to_array(), parity]))


def build_simplex(k: int) -> BitMatrix:
    """Return the generator of the simplex code `S_k`."""
    return BitMatrix.from_columns(k, build_point_table(k).columns)


def build_macdonald(k: int, m: int) -> BitMatrix:
    """Return the generator of the MacDonald code `S_{k,m}` for `1 <= m < k`.

    Its columns are the last `2^k - 2^m` points of the simplex order.
    """
    check_dimension(k)
    if not 1 <= m < k:
        msg = f"MacDonald parameter m={m} must satisfy 1 <= m < {k}."
        raise DefiningVectorError(msg)
    return BitMatrix.from_columns(k, build_point_table(k).columns[(1 << m) - 1 :])


def macdonald_vector(k: int, m: int) -> DefiningVector:
    """Return the defining vector of `S_{k,m}`."""
    check_dimension(k)
    if not 1 <= m < k:
        msg = f"MacDonald parameter m={m} must satisfy 1 <= m < {k}."
        raise DefiningVectorError(msg)
    head = (1 << m) - 1
    return DefiningVector(k, (0,) * head + (1,) * (num_points(k) - head))
