"""Code-level quantities: hull dimension, weight enumerators and distance bounds."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from lcd_certify.defining_vector import (
    DefiningVector,
    DefiningVectorError,
    check_dimension,
    generator_from,
    weight_vector,
)
from lcd_certify.gf2 import BitMatrix, gram, rank, row_basis

# Number of points of PG(4, 2) and the simplex weight for k = 5.
FIVE_POINTS = 31
FIVE_WEIGHT = 16

# Optimal distances for 5 <= n <= 13, where the Griesmer bound is not attained
# everywhere. `test_analysis` re-derives these with the enumeration engine.
SMALL_D_A = {5: 1, 6: 2, 7: 2, 8: 2, 9: 3, 10: 4, 11: 4, 12: 4, 13: 5}
SMALL_LCD_GAP = frozenset({6, 10})

# Residues t of n = 31s + t for which d_l = d_a, and for which d_l = d_a - 2.
LCD_OPTIMAL_RESIDUES = frozenset({3, 4, 5, 7, 11, 19, 20, 22, 26})
LCD_DOUBLE_GAP_RESIDUES = frozenset({0, 16})

# Residues for which `certify_no_lcd` rules out LCD codes above d_l.
CERTIFIED_RESIDUES = frozenset({2, 8, 10, 12, 14, 16, 18})

# d_a - 16s and d_l - 16s for each residue t, as tabulated for n >= 14.
TABLE_ONE_OFFSETS: dict[int, tuple[int, int]] = {
    0: (0, -2), 1: (0, -1), 2: (0, -1), 3: (0, 0), 4: (0, 0), 5: (1, 1),
    6: (2, 1), 7: (2, 2), 8: (3, 2), 9: (4, 3), 10: (4, 3), 11: (4, 4),
    12: (5, 4), 13: (6, 5), 14: (6, 5), 15: (7, 6), 16: (8, 6), 17: (8, 7),
    18: (8, 7), 19: (8, 8), 20: (9, 9), 21: (10, 9), 22: (10, 10),
    23: (11, 10), 24: (12, 11), 25: (12, 11), 26: (12, 12), 27: (13, 12),
    28: (14, 13), 29: (14, 13), 30: (15, 14),
}  # fmt: skip


class BoundStatus(Enum):
    """Where the `d_l` value of a bounds row comes from."""

    ORACLE = "oracle"
    CITED = "cited"
    VERIFIED = "verified"


@dataclass(frozen=True)
class WeightEnumerator:
    """Counts of nonzero codewords by weight.

    `symbolic_base` is the part of every weight rendered as `16s`, so that
    `1+18y^{16s+4}` displays weight `base + 4`.
    """

    terms: tuple[tuple[int, int], ...]
    symbolic_base: int | None = None

    _TERM = re.compile(r"(\d*)y\^(?:\{16s(?:\+(\d+))?\}|\{(\d+)\}|(\d+))")

    @classmethod
    def from_counts(
        cls,
        counts: dict[int, int],
        symbolic_base: int | None = None,
    ) -> WeightEnumerator:
        """Build from a weight -> count mapping, dropping empty terms."""
        terms = tuple(sorted((w, c) for w, c in counts.items() if c))
        return cls(terms, symbolic_base)

    @classmethod
    def parse(cls, text: str, symbolic_base: int | None = None) -> WeightEnumerator:
        """Parse `1+18y^{16s+4}+8y^{16s+6}` or `1+23y^22+7y^24`.

        Repeated weights are summed. Symbolic exponents require a base.
        """
        body = text.replace(" ", "")
        if not body.startswith("1+") and body != "1":
            msg = f"Weight enumerator {text!r} must start with '1+'."
            raise DefiningVectorError(msg)
        counts: Counter[int] = Counter()
        rest = body[2:]
        for chunk in filter(None, _split_terms(rest)):
            match = cls._TERM.fullmatch(chunk)
            if match is None:
                msg = f"Malformed term {chunk!r} in weight enumerator {text!r}."
                raise DefiningVectorError(msg)
            coeff = int(match[1]) if match[1] else 1
            if match[3] is not None or match[4] is not None:
                weight = int(match[3] or match[4])
            else:
                if symbolic_base is None:
                    msg = f"Symbolic weight enumerator {text!r} needs a base."
                    raise DefiningVectorError(msg)
                weight = symbolic_base + int(match[2] or 0)
            counts[weight] += coeff
        return cls.from_counts(dict(counts), symbolic_base)

    def as_dict(self) -> dict[int, int]:
        """Return the weight -> count mapping."""
        return dict(self.terms)

    @property
    def total(self) -> int:
        """Return the number of nonzero codewords counted."""
        return sum(c for _, c in self.terms)

    def shifted(self, delta: int) -> WeightEnumerator:
        """Return the enumerator with every weight moved by `delta`."""
        return WeightEnumerator(
            tuple((w + delta, c) for w, c in self.terms),
            self.symbolic_base,
        )

    def with_base(self, symbolic_base: int | None) -> WeightEnumerator:
        """Return the same terms with another display base."""
        return WeightEnumerator(self.terms, symbolic_base)

    def _exponent(self, weight: int) -> str:
        if self.symbolic_base is None:
            return str(weight)
        offset = weight - self.symbolic_base
        if offset == 0:
            return "{16s}"
        sign = "+" if offset > 0 else "-"
        return f"{{16s{sign}{abs(offset)}}}"

    def __str__(self) -> str:
        """Render as `1+23y^22+...`."""
        parts = ["1"]
        for weight, count in self.terms:
            coeff = "" if count == 1 else str(count)
            parts.append(f"{coeff}y^{self._exponent(weight)}")
        return "+".join(parts)


def _split_terms(body: str) -> list[str]:
    """Split on `+` signs outside braces."""
    chunks: list[str] = []
    depth = 0
    current = ""
    for char in body:
        if char == "{":
            depth += 1
        elif char == "}":
            depth -= 1
        if char == "+" and depth == 0:
            chunks.append(current)
            current = ""
        else:
            current += char
    chunks.append(current)
    return chunks


@dataclass(frozen=True)
class CodeProfile:
    """Parameters and hull data of one code."""

    n: int
    k: int
    d: int
    h: int
    is_lcd: bool
    is_so: bool
    weight_enumerator: WeightEnumerator
    degenerate: bool


@dataclass(frozen=True)
class BoundsRow:
    """One row of the dimension-5 distance table."""

    n: int
    s: int
    t: int
    d_a: int
    d_l: int
    status: BoundStatus

    def to_csv_row(self) -> list[str]:
        """Render as `n,s,t,d_a,d_l,status` fields."""
        return [
            str(self.n),
            str(self.s),
            str(self.t),
            str(self.d_a),
            str(self.d_l),
            self.status.value,
        ]


def hull_dimension(matrix: BitMatrix) -> int:
    """Return `dim(C ∩ C^⊥)` for the row space `C` of `matrix`.

    Rank-deficient generators are reduced to a row basis first.
    """
    basis = matrix if rank(matrix) == matrix.rows else row_basis(matrix)
    if basis.rows == 0:
        return 0
    return basis.rows - rank(gram(basis))


def is_lcd(matrix: BitMatrix) -> bool:
    """Whether the code is linear complementary dual (trivial hull)."""
    return hull_dimension(matrix) == 0


def is_self_orthogonal(matrix: BitMatrix) -> bool:
    """Whether the code lies in its dual."""
    return not gram(matrix).to_array().any()


def weight_enumerator(
    vector: DefiningVector,
    symbolic_base: int | None = None,
) -> WeightEnumerator:
    """Return the histogram of the weight vector."""
    counts = Counter(weight_vector(vector).weights)
    return WeightEnumerator.from_counts(dict(counts), symbolic_base)


def profile(vector: DefiningVector) -> CodeProfile:
    """Return `[n, k, d]`, hull data and the weight enumerator of `vector`."""
    generator = generator_from(vector)
    weights = weight_vector(vector)
    h = hull_dimension(generator)
    degenerate = vector.is_degenerate
    dimension = vector.dimension() if degenerate else vector.k
    return CodeProfile(
        n=vector.n,
        k=dimension,
        d=weights.min_distance,
        h=h,
        is_lcd=h == 0,
        is_so=h == dimension,
        weight_enumerator=weight_enumerator(vector),
        degenerate=degenerate,
    )


def griesmer_length(k: int, d: int) -> int:
    """Return `sum_{i<k} ceil(d / 2^i)`, the least length of an `[n, k, d]` code."""
    if d <= 0:
        return 0
    return sum(-(-d >> i) for i in range(k))


def macdonald_hull(k: int, m: int) -> int:
    """Return the hull dimension of `s S_k + S_{k,m}` for `k >= 3`, `1 <= m < k`."""
    check_dimension(k)
    if not 1 <= m < k:
        msg = f"MacDonald parameter m={m} must satisfy 1 <= m < {k}."
        raise DefiningVectorError(msg)
    if m == 1:
        return k - 1
    if m == 2:  # noqa: PLR2004
        return k - 2
    return k


def d_a(n: int) -> int:
    """Return the largest minimum distance of a binary `[n, 5]` code."""
    if n < 5:  # noqa: PLR2004
        msg = f"No binary [n,5] code of length {n} exists."
        raise DefiningVectorError(msg)
    if n in SMALL_D_A:
        return SMALL_D_A[n]
    d = n // 2
    while griesmer_length(5, d + 1) <= n:
        d += 1
    while griesmer_length(5, d) > n:
        d -= 1
    return d


def lcd_gap(n: int) -> int:
    """Return `d_a(n) - d_l(n)` for binary `[n, 5]` codes."""
    if n in SMALL_D_A:
        return 1 if n in SMALL_LCD_GAP else 0
    t = n % FIVE_POINTS
    if t in LCD_OPTIMAL_RESIDUES:
        return 0
    if t in LCD_DOUBLE_GAP_RESIDUES:
        return 2
    return 1


def d_l(n: int) -> int:
    """Return the largest minimum distance of a binary `[n, 5]` LCD code."""
    return d_a(n) - lcd_gap(n)


def bounds_row(n: int) -> BoundsRow:
    """Assemble the `(d_a, d_l)` row for length `n`.

    Rows start out `cited`; only `reproduce_table(1, verify=True)` upgrades
    them to `verified`.
    """
    s, t = divmod(n, FIVE_POINTS)
    status = BoundStatus.ORACLE if n in SMALL_D_A else BoundStatus.CITED
    return BoundsRow(n, s, t, d_a(n), d_l(n), status)


def bounds_table(s: int) -> list[BoundsRow]:
    """Return the rows `n = 31s + t` for every residue, skipping `n < 5`."""
    lengths = (FIVE_POINTS * s + t for t in range(FIVE_POINTS))
    return [bounds_row(n) for n in lengths if n >= 5]
