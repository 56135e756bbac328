"""The GL(k, 2) action on defining vectors.

Two codes given by defining vectors are equivalent exactly when an invertible
matrix maps one column multiset onto the other. A matrix `A` is stored as the
images `A e_1, ..., A e_k` packed into integers, matching the point encoding.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cache, cached_property
from typing import TYPE_CHECKING

from lcd_certify.analysis import CodeProfile, profile
from lcd_certify.defining_vector import (
    DefiningVector,
    TypeSignature,
    check_dimension,
    num_points,
    type_signature,
    weight_vector,
)
from lcd_certify.gf2 import BitMatrix, inverse, is_invertible

if TYPE_CHECKING:
    from collections.abc import Iterator

    from lcd_certify.enumeration import SolutionSet

DEFAULT_TIE_LIMIT = 4096
DEFAULT_ORBIT_LIMIT = 200_000


class EquivalenceError(Exception):
    """Base class for equivalence errors."""


class NotInvertibleError(EquivalenceError):
    """Raised when basis images do not form an invertible matrix."""

    def __init__(self, images: tuple[int, ...]) -> None:
        """Initialize the error."""
        super().__init__(f"Images {images} do not span F_2^{len(images)}.")


class OrbitTooLargeError(EquivalenceError):
    """Raised when an orbit walk exceeds its size limit."""

    def __init__(self, vector: DefiningVector, limit: int) -> None:
        """Initialize the error."""
        super().__init__(f"The orbit of {vector} has more than {limit} members.")


class _TooManyTiesError(Exception):
    pass


@cache
def gl_order(k: int) -> int:
    """Return `|GL(k, 2)|`."""
    order = 1
    for i in range(k):
        order *= (1 << k) - (1 << i)
    return order


def _image(images: tuple[int, ...], point: int) -> int:
    """Return `A x` for `A` given by basis images."""
    result = 0
    b = 0
    while point:
        if point & 1:
            result ^= images[b]
        point >>= 1
        b += 1
    return result


def _compose(outer: tuple[int, ...], inner: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(_image(outer, x) for x in inner)


@dataclass(frozen=True)
class LinearAutomorphism:
    """An element of GL(k, 2) acting on the nonzero points."""

    k: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        """Check that the images form an invertible matrix."""
        check_dimension(self.k)
        if len(self.images) != self.k or not is_invertible(self.matrix):
            raise NotInvertibleError(self.images)

    @classmethod
    def identity(cls, k: int) -> LinearAutomorphism:
        """Return the identity."""
        return cls(k, tuple(1 << b for b in range(k)))

    @classmethod
    def from_matrix(cls, matrix: BitMatrix) -> LinearAutomorphism:
        """Build from a square matrix whose column `b` is `A e_{b+1}`."""
        return cls(matrix.rows, tuple(matrix.column_values()))

    @property
    def matrix(self) -> BitMatrix:
        """Return the `k x k` matrix."""
        return BitMatrix.from_columns(self.k, self.images)

    @cached_property
    def permutation(self) -> tuple[int, ...]:
        """Return the induced permutation; entry `i - 1` is the index of `A a_i`."""
        return tuple(_image(self.images, i) for i in range(1, num_points(self.k) + 1))

    def __call__(self, point: int) -> int:
        """Return the image of a point."""
        return _image(self.images, point)

    def compose(self, other: LinearAutomorphism) -> LinearAutomorphism:
        """Return `self ∘ other`."""
        return LinearAutomorphism(self.k, _compose(self.images, other.images))

    def inverse(self) -> LinearAutomorphism:
        """Return the inverse."""
        return LinearAutomorphism.from_matrix(inverse(self.matrix))


@dataclass(frozen=True)
class EquivalenceClass:
    """One GL(k, 2) orbit met by a solution set."""

    representative: DefiningVector
    orbit_size: int
    member_count: int
    profile: CodeProfile
    stabilizer_order: int

    @property
    def type_signature(self) -> TypeSignature:
        """Return the common type signature of the members."""
        return type_signature(self.representative)


def apply(automorphism: LinearAutomorphism, vector: DefiningVector) -> DefiningVector:
    """Move every column `a_i` to `A a_i`: `result[perm[i]] = l[i]`."""
    if automorphism.k != vector.k:
        msg = f"Cannot apply a dimension {automorphism.k} map to {vector}."
        raise EquivalenceError(msg)
    result = [0] * len(vector.entries)
    for value, target in zip(vector.entries, automorphism.permutation):
        result[target - 1] = value
    return DefiningVector(vector.k, tuple(result))


@cache
def generators(k: int) -> tuple[LinearAutomorphism, ...]:
    """Return a generating set of GL(k, 2).

    A cyclic shift and a swap of the basis generate the permutation matrices;
    together with the transvection `e_1 -> e_1 + e_2` they generate GL(k, 2).
    """
    units = [1 << b for b in range(k)]
    cycle = tuple(units[(b + 1) % k] for b in range(k))
    swap = (units[1], units[0], *units[2:])
    transvection = (units[0] | units[1], *units[1:])
    return tuple(LinearAutomorphism(k, g) for g in (cycle, swap, transvection))


def group_elements(k: int) -> Iterator[LinearAutomorphism]:
    """Yield every element of GL(k, 2); intended for small `k` oracles."""

    def extend(
        images: tuple[int, ...],
        span: frozenset[int],
    ) -> Iterator[tuple[int, ...]]:
        if len(images) == k:
            yield images
            return
        for b in range(1, 1 << k):
            if b not in span:
                yield from extend((*images, b), span | {b ^ s for s in span})

    for images in extend((), frozenset({0})):
        yield LinearAutomorphism(k, images)


def _branch_and_bound(
    entries: tuple[int, ...],
    k: int,
    tie_limit: int | None,
) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """Return `min_B B*L` and every basis `B` reaching it.

    `(B*L)[j] = L[B a_j]`. Bases are chosen one image at a time; only the
    prefixes that are lexicographically minimal so far survive.
    """
    vals = (0, *entries)
    size = num_points(k)
    states: list[tuple[tuple[int, ...], list[int]]] = [((), [0])]
    result: list[int] = []
    for _ in range(k):
        best: tuple[int, ...] | None = None
        survivors: list[tuple[tuple[int, ...], list[int]]] = []
        for images, span in states:
            used = set(span)
            for b in range(1, size + 1):
                if b in used:
                    continue
                block = tuple(vals[b ^ s] for s in span)
                if best is None or block < best:
                    best = block
                    survivors = [((*images, b), span + [b ^ s for s in span])]
                elif block == best:
                    survivors.append(((*images, b), span + [b ^ s for s in span]))
        if tie_limit is not None and len(survivors) > tie_limit:
            raise _TooManyTiesError
        if best is None:
            msg = f"No basis extends in dimension {k}."
            raise EquivalenceError(msg)
        result.extend(best)
        states = survivors
    return tuple(result), [images for images, _ in states]


def _orbit_walk(
    entries: tuple[int, ...],
    k: int,
    limit: int,
) -> dict[tuple[int, ...], tuple[int, ...]] | None:
    """Map each orbit member to images of some `A` with `apply(A, L) == member`.

    Returns `None` once the orbit exceeds `limit` members.
    """
    moves = [(g.permutation, g.images) for g in generators(k)]
    seen = {entries: LinearAutomorphism.identity(k).images}
    queue = deque([entries])
    size = len(entries)
    while queue:
        current = queue.popleft()
        reached = seen[current]
        for perm, images in moves:
            moved = [0] * size
            for value, target in zip(current, perm):
                moved[target - 1] = value
            key = tuple(moved)
            if key not in seen:
                seen[key] = _compose(images, reached)
                if len(seen) > limit:
                    return None
                queue.append(key)
    return seen


def _canonicalize(
    vector: DefiningVector,
    tie_limit: int = DEFAULT_TIE_LIMIT,
    orbit_limit: int = DEFAULT_ORBIT_LIMIT,
) -> tuple[DefiningVector, LinearAutomorphism, int]:
    """Return `(R, T, |Stab|)` with `apply(T, vector) == R` canonical."""
    k = vector.k
    try:
        best, bases = _branch_and_bound(vector.entries, k, tie_limit)
    except _TooManyTiesError:
        walk = _orbit_walk(vector.entries, k, orbit_limit)
        if walk is not None:
            best = min(walk)
            transform = LinearAutomorphism(k, walk[best])
            return DefiningVector(k, best), transform, gl_order(k) // len(walk)
        best, bases = _branch_and_bound(vector.entries, k, None)
    # R = B*L = apply(B^{-1}, L)
    transform = LinearAutomorphism(k, bases[0]).inverse()
    return DefiningVector(k, best), transform, len(bases)


def canonical_form(vector: DefiningVector) -> DefiningVector:
    """Return the lexicographically least vector in the orbit of `vector`."""
    return _canonicalize(vector)[0]


def canonical_form_and_stabilizer(vector: DefiningVector) -> tuple[DefiningVector, int]:
    """Return the canonical form and the stabilizer order in one pass."""
    canonical, _, stabilizer = _canonicalize(vector)
    return canonical, stabilizer


def stabilizer_order(vector: DefiningVector) -> int:
    """Return `|{A : apply(A, l) == l}|`."""
    return _canonicalize(vector)[2]


def orbit(
    vector: DefiningVector,
    limit: int = DEFAULT_ORBIT_LIMIT,
) -> set[DefiningVector]:
    """Return every member of the orbit of `vector`."""
    walk = _orbit_walk(vector.entries, vector.k, limit)
    if walk is None:
        raise OrbitTooLargeError(vector, limit)
    return {DefiningVector(vector.k, member) for member in walk}


def are_equivalent(
    first: DefiningVector,
    second: DefiningVector,
) -> LinearAutomorphism | None:
    """Return some `A` with `apply(A, first) == second`, or `None`."""
    if first.k != second.k or sorted(first.entries) != sorted(second.entries):
        return None
    if sorted(weight_vector(first).weights) != sorted(weight_vector(second).weights):
        return None
    canonical_first, to_first, _ = _canonicalize(first)
    canonical_second, to_second, _ = _canonicalize(second)
    if canonical_first != canonical_second:
        return None
    witness = to_second.inverse().compose(to_first)
    if apply(witness, first) != second:
        msg = f"Witness check failed for {first} and {second}."
        raise EquivalenceError(msg)
    return witness


def _components(
    members: list[tuple[int, ...]],
    k: int,
) -> list[list[tuple[int, ...]]]:
    """Split `members` into pieces connected by generator moves inside the set."""
    perms = [g.permutation for g in generators(k)]
    remaining = set(members)
    pieces: list[list[tuple[int, ...]]] = []
    for start in members:
        if start not in remaining:
            continue
        remaining.discard(start)
        piece = [start]
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for perm in perms:
                moved = [0] * len(current)
                for value, target in zip(current, perm):
                    moved[target - 1] = value
                key = tuple(moved)
                if key in remaining:
                    remaining.discard(key)
                    piece.append(key)
                    queue.append(key)
        pieces.append(piece)
    return pieces


def classify(solution_set: SolutionSet) -> list[EquivalenceClass]:
    """Partition a solution set into orbits, sorted by type then representative."""
    k = solution_set.spec.k
    order = gl_order(k)
    found: dict[DefiningVector, list[int]] = {}
    if solution_set.orbits is not None:
        for rep, stabilizer in solution_set.orbits.items():
            found[rep] = [stabilizer, order // stabilizer]
    else:
        members = [v.entries for v in solution_set.solutions]
        for piece in _components(members, k):
            rep, stabilizer = canonical_form_and_stabilizer(DefiningVector(k, piece[0]))
            found.setdefault(rep, [stabilizer, 0])[1] += len(piece)
    classes = [
        EquivalenceClass(
            representative=rep,
            orbit_size=order // stabilizer,
            member_count=count,
            profile=profile(rep),
            stabilizer_order=stabilizer,
        )
        for rep, (stabilizer, count) in found.items()
    ]
    classes.sort(key=lambda c: (c.type_signature, c.representative))
    return classes
