"""Dense bit matrices over GF(2).

Rows are stored packed (eight columns per byte, little bit order) so that row
operations during elimination are vectorised XORs over whole rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence


class GF2Error(Exception):
    """Base class for GF(2) matrix errors."""


class DimensionMismatchError(GF2Error):
    """Raised when two operands have incompatible shapes."""

    def __init__(self, op: str, left: tuple[int, int], right: tuple[int, int]) -> None:
        """Initialize the error."""
        super().__init__(
            f"Cannot {op} a {left[0]}x{left[1]} matrix with a {right[0]}x{right[1]} "
            "matrix.",
        )


class NotSquareError(GF2Error):
    """Raised when a square matrix is required."""

    def __init__(self, shape: tuple[int, int]) -> None:
        """Initialize the error."""
        super().__init__(f"Expected a square matrix, got {shape[0]}x{shape[1]}.")


class SingularMatrixError(GF2Error):
    """Raised when inverting a singular matrix."""

    def __init__(self, size: int) -> None:
        """Initialize the error."""
        super().__init__(f"The {size}x{size} matrix is singular over GF(2).")


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """A matrix over GF(2) with packed rows.

    Bits beyond `cols` in the last byte of each row are always zero.
    """

    rows: int
    cols: int
    packed: np.ndarray

    @classmethod
    def from_array(cls, array: np.ndarray | Sequence[Sequence[int]]) -> BitMatrix:
        """Build a matrix from a 0/1 array-like; entries are reduced mod 2."""
        bits = np.asarray(array, dtype=np.int64)
        if bits.ndim != 2:  # noqa: PLR2004
            msg = f"Expected a 2-dimensional array, got {bits.ndim} dimensions."
            raise GF2Error(msg)
        bits = (bits % 2).astype(np.uint8)
        rows, cols = bits.shape
        return cls(rows, cols, np.packbits(bits, axis=1, bitorder="little"))

    @classmethod
    def from_columns(cls, height: int, columns: Iterable[int]) -> BitMatrix:
        """Build a `height`-row matrix whose columns are given as integers.

        Bit `r` of each integer is the entry in row `r`.
        """
        cols = list(columns)
        bits = np.zeros((height, len(cols)), dtype=np.uint8)
        for j, value in enumerate(cols):
            for r in range(height):
                bits[r, j] = (value >> r) & 1
        return cls.from_array(bits)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        """Return the all-zero matrix."""
        return cls.from_array(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, size: int) -> BitMatrix:
        """Return the identity matrix."""
        return cls.from_array(np.eye(size, dtype=np.uint8))

    @property
    def shape(self) -> tuple[int, int]:
        """Return `(rows, cols)`."""
        return (self.rows, self.cols)

    def to_array(self) -> np.ndarray:
        """Unpack to a `rows x cols` uint8 array of zeros and ones."""
        return np.unpackbits(
            self.packed,
            axis=1,
            count=self.cols,
            bitorder="little",
        ).reshape(self.rows, self.cols)

    def column_values(self) -> list[int]:
        """Return each column as an integer, bit `r` holding row `r`."""
        bits = self.to_array().astype(np.int64)
        weights = np.left_shift(1, np.arange(self.rows, dtype=np.int64))
        return [int(v) for v in weights @ bits]

    def transpose(self) -> BitMatrix:
        """Return the transpose."""
        return BitMatrix.from_array(self.to_array().T)

    def hstack(self, other: BitMatrix) -> BitMatrix:
        """Juxtapose `other` to the right of this matrix."""
        if self.rows != other.rows:
            raise DimensionMismatchError("juxtapose", self.shape, other.shape)
        return BitMatrix.from_array(np.hstack([self.to_array(), other.to_array()]))

    def __eq__(self, other: object) -> bool:
        """Compare shape and entries."""
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(
            np.array_equal(self.packed, other.packed),
        )

    def __hash__(self) -> int:
        """Hash shape and packed entries."""
        return hash((self.rows, self.cols, self.packed.tobytes()))

    def __repr__(self) -> str:
        """Render rows as bit strings."""
        body = ", ".join("".join(str(b) for b in row) for row in self.to_array())
        return f"BitMatrix({self.rows}x{self.cols}: [{body}])"


def multiply(left: BitMatrix, right: BitMatrix) -> BitMatrix:
    """Return the product `left * right` over GF(2)."""
    if left.cols != right.rows:
        raise DimensionMismatchError("multiply", left.shape, right.shape)
    product = left.to_array().astype(np.int64) @ right.to_array().astype(np.int64)
    return BitMatrix.from_array(product % 2)


def gram(matrix: BitMatrix) -> BitMatrix:
    """Return `G * G^T`."""
    return multiply(matrix, matrix.transpose())


def _eliminate(matrix: BitMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduce the packed rows to reduced row echelon form.

    Returns the reduced packed rows and the pivot columns, in order.
    """
    work = matrix.packed.copy()
    pivots: list[int] = []
    row = 0
    for col in range(matrix.cols):
        if row == matrix.rows:
            break
        byte, bit = divmod(col, 8)
        mask = np.uint8(1 << bit)
        candidates = np.nonzero(work[row:, byte] & mask)[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            work[[row, pivot]] = work[[pivot, row]]
        hits = (work[:, byte] & mask) != 0
        hits[row] = False
        work[hits] ^= work[row]
        pivots.append(col)
        row += 1
    return work, pivots


def rank(matrix: BitMatrix) -> int:
    """Return the rank over GF(2)."""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return len(_eliminate(matrix)[1])


def row_basis(matrix: BitMatrix) -> BitMatrix:
    """Return a matrix whose rows form a basis of the row space."""
    if matrix.rows == 0 or matrix.cols == 0:
        return BitMatrix.zeros(0, matrix.cols)
    work, pivots = _eliminate(matrix)
    return BitMatrix(len(pivots), matrix.cols, work[: len(pivots)].copy())


def is_invertible(matrix: BitMatrix) -> bool:
    """Return whether a square matrix is invertible."""
    if matrix.rows != matrix.cols:
        raise NotSquareError(matrix.shape)
    return rank(matrix) == matrix.rows


def inverse(matrix: BitMatrix) -> BitMatrix:
    """Return the inverse of a square matrix."""
    if matrix.rows != matrix.cols:
        raise NotSquareError(matrix.shape)
    size = matrix.rows
    augmented = matrix.hstack(BitMatrix.identity(size))
    work, pivots = _eliminate(augmented)
    if pivots[:size] != list(range(size)):
        raise SingularMatrixError(size)
    reduced = BitMatrix(size, 2 * size, work)
    return BitMatrix.from_array(reduced.to_array()[:, size:])
