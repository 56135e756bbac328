"""Exhaustive search for the defining vectors of `[n, k, d]` codes.

The search assigns `l_1, ..., l_N` in point order. Partial sums are kept for
every subspace whose capacity can actually bind; a value is admissible only
while every subspace containing the point stays within capacity and every
hyperplane can still absorb what remains of the length.

In orbit mode the tree is further restricted to vectors whose standard flag
`<e_1> < <e_1, e_2> < ...` is sum-maximal level by level and whose points
`e_{r+1}` dominate the rest of `<e_1..e_{r+1}> - <e_1..e_r>`. Every GL(k, 2)
orbit meets that set, so canonicalising the hits yields one representative
per orbit; labeled totals follow from orbit-stabilizer accounting.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cache
from itertools import product
from typing import TYPE_CHECKING

import numpy as np

from lcd_certify.analysis import griesmer_length
from lcd_certify.defining_vector import (
    DefiningVector,
    TypeSignature,
    check_dimension,
    generator_from,
    num_points,
    type_signature,
)
from lcd_certify.equivalence import canonical_form_and_stabilizer, gl_order, orbit
from lcd_certify.util import LOGGER

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

DEFAULT_MAX_LABELED = 200_000
SPLIT_DEPTH = 4
_BUDGET_CHECK_INTERVAL = 1024


class SearchMode(Enum):
    """How solutions are produced."""

    LABELED = "labeled"
    ORBITS = "orbits"


class EnumerationError(Exception):
    """Base class for enumeration errors."""


class InfeasibleSpecError(EnumerationError):
    """Raised when a search spec violates its own invariants."""

    def __init__(self, spec: SearchSpec, reason: str) -> None:
        """Initialize the error."""
        super().__init__(f"Search {spec.describe()} is infeasible: {reason}")
        self.spec = spec
        self.reason = reason

    def __reduce__(self) -> tuple[type, tuple[SearchSpec, str]]:
        """Rebuild from the constructor arguments."""
        return type(self), (self.spec, self.reason)


class SearchBudgetExceededError(EnumerationError):
    """Raised when a search runs out of nodes or time.

    Carries the solutions found so far, in the engine's normalized order.
    """

    def __init__(
        self,
        spec: SearchSpec,
        nodes: int,
        partial: list[DefiningVector],
    ) -> None:
        """Initialize the error."""
        super().__init__(
            f"Search {spec.describe()} exceeded its budget after {nodes} nodes "
            f"with {len(partial)} solutions found.",
        )
        self.spec = spec
        self.nodes = nodes
        self.partial = partial

    def __reduce__(self) -> tuple[type, tuple[SearchSpec, int, list[DefiningVector]]]:
        """Rebuild from the constructor arguments, so workers can raise it."""
        return type(self), (self.spec, self.nodes, self.partial)


class _StopSearchError(Exception):
    """Raised by a leaf callback to end the search early."""


class _BudgetSpentError(Exception):
    """Raised by the engine when its node or time allowance runs out.

    `leaves` holds the complete solutions found so far, before any shift.
    """

    def __init__(self, nodes: int, leaves: list[tuple[int, ...]]) -> None:
        super().__init__(nodes, leaves)
        self.nodes = nodes
        self.leaves = leaves


@dataclass(frozen=True)
class SearchSpec:
    """One enumeration instance.

    Budgets do not take part in equality.
    """

    n: int
    k: int
    d: int
    max_entry: int
    require_zero_entry: bool = False
    exact_distance: bool = True
    node_budget: int | None = field(default=None, compare=False)
    time_budget: float | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        """Check the invariants."""
        check_dimension(self.k)
        if self.max_entry < 1:
            raise InfeasibleSpecError(self, "max_entry must be at least 1")
        if self.n < self.d:
            raise InfeasibleSpecError(self, "n must be at least d")
        if self.n < 0:
            raise InfeasibleSpecError(self, "n must be nonnegative")

    def describe(self) -> str:
        """Return a short human readable rendering."""
        relation = "" if self.exact_distance else ">="
        text = f"[{self.n},{self.k},{relation}{self.d}] max {self.max_entry}"
        if self.require_zero_entry:
            text += ", zero required"
        return text


@dataclass
class SolutionSet:
    """The defining vectors satisfying a `SearchSpec`.

    `solutions` holds every labeled solution in lexicographic order unless
    the total exceeded the listing limit of an orbit search, in which case it
    is empty and `orbits` is authoritative.
    """

    spec: SearchSpec
    solutions: list[DefiningVector]
    total: int
    by_type: dict[TypeSignature, int]
    orbits: dict[DefiningVector, int] | None = None
    nodes: int = 0

    @property
    def is_listed(self) -> bool:
        """Whether every labeled solution is present in `solutions`."""
        return len(self.solutions) == self.total

    def representatives(self) -> list[DefiningVector]:
        """Return the canonical orbit representatives, sorted."""
        return sorted(self.orbits) if self.orbits is not None else []


def entry_bounds(n: int, k: int, d: int) -> int:
    """Return the largest admissible entry `n - g(k-1, d)`, at least 1."""
    return max(1, n - griesmer_length(k - 1, d))


def entry_lower_bound(n: int, k: int, d: int) -> int:
    """Return the least admissible entry, `ceil((d - sigma) / 2^(k-1))` clamped at 0.

    For `k = 5` this is `2d - n`.
    """
    half = 1 << (k - 1)
    excess = half * n - d * num_points(k)
    return max(0, -(-(d - excess) // half))


def subspace_capacity(n: int, k: int, d: int, codim: int) -> int:
    """Return the most columns a subspace of codimension `codim` can hold.

    Follows from every hyperplane holding at most `n - d` columns.
    """
    if not 1 <= codim < k:
        msg = f"Codimension {codim} is outside 1..{k - 1}."
        raise EnumerationError(msg)
    half = 1 << (codim - 1)
    return ((2 * half - 1) * (n - d) - (half - 1) * n) // half


def count_by_type(solution_set: SolutionSet) -> dict[TypeSignature, int]:
    """Return the labeled solution count per type signature."""
    return dict(solution_set.by_type)


def oracle_min_distance(vector: DefiningVector) -> int:
    """Return the minimum weight over all nonzero messages by brute force.

    A degenerate vector yields 0.
    """
    generator = generator_from(vector).to_array().astype(np.int64)
    k = vector.k
    messages = np.array(list(product((0, 1), repeat=k))[1:], dtype=np.int64)
    weights = (messages @ generator % 2).sum(axis=1)
    return int(weights.min())


@cache
def subspaces(k: int) -> dict[int, tuple[frozenset[int], ...]]:
    """Return the proper nonzero subspaces of `F_2^k` by dimension.

    Each subspace is the set of its nonzero points, which double as indices.
    """
    check_dimension(k)
    levels: dict[int, tuple[frozenset[int], ...]] = {
        1: tuple(frozenset({p}) for p in range(1, 1 << k)),
    }
    for r in range(2, k):
        found: set[frozenset[int]] = set()
        for space in levels[r - 1]:
            for p in range(1, 1 << k):
                if p not in space:
                    found.add(space | {p} | {x ^ p for x in space})
        levels[r] = tuple(sorted(found, key=lambda s: sorted(s)))
    return levels


class _Engine:
    """Depth-first search over one normalized spec."""

    def __init__(
        self,
        spec: SearchSpec,
        mode: SearchMode,
        *,
        rng: random.Random | None = None,
        on_leaf: Callable[[tuple[int, ...]], bool] | None = None,
        node_budget: int | None = None,
        deadline: float | None = None,
    ) -> None:
        self.spec = spec
        self.mode = mode
        self.rng = rng
        self.on_leaf = on_leaf
        k = spec.k
        self.size = num_points(k)
        self.nodes = 0
        self.solutions: list[tuple[int, ...]] = []
        self.node_budget = spec.node_budget if node_budget is None else node_budget
        if deadline is None and spec.time_budget:
            deadline = time.monotonic() + spec.time_budget
        self.deadline = deadline
        self._build_tables()

    def _build_tables(self) -> None:
        spec = self.spec
        k, n, d, cap_entry = spec.k, spec.n, spec.d, spec.max_entry
        orbits = self.mode is SearchMode.ORBITS
        levels = subspaces(k)
        flags = {r: frozenset(range(1, 1 << r)) for r in range(1, k)}
        sibling_dims = {
            r: [s for s in levels[r] if s <= flags.get(r + 1, s) and s != flags[r]]
            for r in range(1, k)
        }
        tracked: list[frozenset[int]] = []
        caps: list[int] = []
        index: dict[frozenset[int], int] = {}

        def track(space: frozenset[int], cap: int) -> int:
            if space not in index:
                index[space] = len(tracked)
                tracked.append(space)
                caps.append(cap)
            return index[space]

        self.solid_ids: list[int] = []
        for r in range(k - 1, 0, -1):
            cap = subspace_capacity(n, k, d, k - r)
            for space in levels[r]:
                binding = cap < len(space) * cap_entry
                if r == k - 1:
                    self.solid_ids.append(track(space, cap))
                elif binding:
                    track(space, cap)
        self.flag_at: dict[int, tuple[int, list[int], bool]] = {}
        if orbits:
            for r in range(1, k):
                cap = subspace_capacity(n, k, d, k - r)
                flag_id = track(flags[r], cap)
                siblings = [track(s, cap) for s in sibling_dims[r]]
                self.flag_at[(1 << r) - 1] = (flag_id, siblings, r == k - 1)
        self.caps = caps
        self.point_subs: list[tuple[int, ...]] = [()] * (self.size + 1)
        for p in range(1, self.size + 1):
            self.point_subs[p] = tuple(i for i, s in enumerate(tracked) if p in s)
        # outside[p][j]: points after p that miss solid j
        self.outside = [
            [
                sum(1 for q in range(p + 1, self.size + 1) if q not in tracked[j])
                for j in self.solid_ids
            ]
            for p in range(self.size + 1)
        ]
        self.dominator = [0] * (self.size + 1)
        if orbits:
            for r in range(1, k):
                for p in range((1 << r) + 1, 1 << (r + 1)):
                    self.dominator[p] = 1 << r

    def run(self, prefix: tuple[int, ...] = (), stop_depth: int | None = None) -> None:
        """Search the subtree below `prefix`; collect leaves or depth cuts."""
        spec = self.spec
        size = self.size
        max_entry = spec.max_entry
        solid_limit = spec.n - spec.d
        exact_leaf = spec.exact_distance and self.mode is SearchMode.LABELED
        require_zero = spec.require_zero_entry
        caps = self.caps
        part = [0] * len(caps)
        vals = [0] * (size + 1)
        solid_ids = self.solid_ids
        outside = self.outside
        point_subs = self.point_subs
        dominator = self.dominator
        flag_at = self.flag_at
        rng = self.rng
        node_budget = self.node_budget
        deadline = self.deadline

        def over_budget() -> bool:
            if node_budget is not None and self.nodes > node_budget:
                return True
            return deadline is not None and time.monotonic() > deadline

        def leaf() -> None:
            entries = tuple(vals[1:])
            if require_zero and 0 not in entries:
                return
            if exact_leaf and max(part[j] for j in solid_ids) != solid_limit:
                return
            self.solutions.append(entries)
            if self.on_leaf is not None and self.on_leaf(entries):
                raise _StopSearchError

        def dfs(p: int, rem: int) -> None:
            self.nodes += 1
            if not self.nodes % _BUDGET_CHECK_INTERVAL and over_budget():
                leaves = [s for s in self.solutions if len(s) == size]
                raise _BudgetSpentError(self.nodes, leaves)
            if p > size:
                leaf()
                return
            if stop_depth is not None and p > stop_depth:
                self.solutions.append(tuple(vals[1:p]))
                return
            subs = point_subs[p]
            vmax = min(max_entry, rem)
            for s in subs:
                room = caps[s] - part[s]
                if room < vmax:
                    vmax = room
            if dominator[p] and vals[dominator[p]] < vmax:
                vmax = vals[dominator[p]]
            vmin = max(0, rem - max_entry * (size - p))
            if p <= len(prefix):
                if not vmin <= prefix[p - 1] <= vmax:
                    return
                values: Iterable[int] = (prefix[p - 1],)
            elif rng is not None:
                values = list(range(vmin, vmax + 1))
                rng.shuffle(values)
            else:
                values = range(vmin, vmax + 1)
            out = outside[p]
            flag = flag_at.get(p)
            for v in values:
                for s in subs:
                    part[s] += v
                after = rem - v
                feasible = all(
                    after <= caps[j] - part[j] + max_entry * out[i]
                    for i, j in enumerate(solid_ids)
                )
                if feasible:
                    vals[p] = v
                    if flag is None:
                        dfs(p + 1, after)
                    else:
                        descend_flag(p, after, flag)
                for s in subs:
                    part[s] -= v
            vals[p] = 0

        def descend_flag(p: int, after: int, flag: tuple[int, list[int], bool]) -> None:
            flag_id, siblings, top = flag
            total = part[flag_id]
            if top and spec.exact_distance and total != solid_limit:
                return
            if any(part[e] > total for e in siblings):
                return
            saved = [(e, caps[e]) for e in siblings if caps[e] > total]
            for e, _ in saved:
                caps[e] = total
            try:
                dfs(p + 1, after)
            finally:
                for e, cap in saved:
                    caps[e] = cap

        dfs(1, spec.n)


def _normalize_spec(spec: SearchSpec) -> tuple[int, SearchSpec | None]:
    """Strip the forced simplex copies; `None` means provably empty."""
    lo = entry_lower_bound(spec.n, spec.k, spec.d)
    if lo == 0:
        return 0, spec
    if spec.require_zero_entry or lo > spec.max_entry:
        return lo, None
    size = num_points(spec.k)
    n = spec.n - lo * size
    d = spec.d - lo * (1 << (spec.k - 1))
    reduced_max = spec.max_entry - lo
    if n < max(d, 0) or (reduced_max < 1 and n > 0):
        return lo, None
    # With n == 0 only the constant vector remains, whatever the entry cap.
    return lo, replace(spec, n=n, d=d, max_entry=max(1, reduced_max))


def _run_subtree(
    spec: SearchSpec,
    mode: SearchMode,
    prefix: tuple[int, ...],
    node_budget: int | None,
    wall_deadline: float | None,
) -> tuple[list[tuple[int, ...]], int, bool]:
    """Search one subtree within the allowance left by the parent.

    Returns the leaves, the nodes used and whether the allowance ran out.
    """
    deadline = None
    if wall_deadline is not None:
        deadline = time.monotonic() + (wall_deadline - time.time())
    engine = _Engine(spec, mode, node_budget=node_budget, deadline=deadline)
    try:
        engine.run(prefix=prefix)
    except _BudgetSpentError as err:
        return err.leaves, err.nodes, True
    return engine.solutions, engine.nodes, False


def _search(
    spec: SearchSpec,
    mode: SearchMode,
    workers: int,
) -> tuple[list[tuple[int, ...]], int]:
    """Run the engine, splitting at a fixed depth when workers are available.

    Budgets cover the whole search: subtrees share what the split left over.
    """
    if workers <= 1:
        engine = _Engine(spec, mode)
        engine.run()
        return engine.solutions, engine.nodes
    splitter = _Engine(spec, mode)
    splitter.run(stop_depth=SPLIT_DEPTH)
    prefixes = sorted(set(splitter.solutions))
    LOGGER.debug("Split %s into %d subtrees", spec.describe(), len(prefixes))
    nodes = splitter.nodes
    allowance = None if spec.node_budget is None else spec.node_budget - nodes
    wall_deadline = None
    if splitter.deadline is not None:
        wall_deadline = time.time() + (splitter.deadline - time.monotonic())
    hits: list[tuple[int, ...]] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_run_subtree, spec, mode, p, allowance, wall_deadline)
            for p in prefixes
        ]
        for future in futures:
            found, used, spent = future.result()
            hits.extend(found)
            nodes += used
            if spent or (spec.node_budget is not None and nodes > spec.node_budget):
                pool.shutdown(wait=False, cancel_futures=True)
                raise _BudgetSpentError(nodes, hits)
    return hits, nodes


def _lift(k: int, leaves: Iterable[tuple[int, ...]], lo: int) -> list[DefiningVector]:
    """Add back the `lo` stripped simplex copies."""
    return sorted({DefiningVector(k, tuple(v + lo for v in leaf)) for leaf in leaves})


def enumerate_defining_vectors(
    spec: SearchSpec,
    *,
    mode: SearchMode = SearchMode.ORBITS,
    workers: int = 1,
    max_labeled: int = DEFAULT_MAX_LABELED,
) -> SolutionSet:
    """Find every defining vector satisfying `spec`.

    :param spec: The instance to solve.
    :param mode: `LABELED` walks every labeled solution; `ORBITS` walks a
        flag-normalized slice and recovers labeled counts from stabilizers.
    :param workers: Worker processes for the subtree split.
    :param max_labeled: In orbit mode, expand orbits into the labeled list
        only when the total is at most this.
    """
    LOGGER.info("Enumerating %s (%s)", spec.describe(), mode.value)
    lo, reduced = _normalize_spec(spec)
    if reduced is None:
        LOGGER.info("No solutions: entries must be at least %d", lo)
        return SolutionSet(spec, [], 0, {}, {} if mode is SearchMode.ORBITS else None)
    try:
        hits, nodes = _search(reduced, mode, workers)
    except _BudgetSpentError as err:
        partial = _lift(spec.k, err.leaves, lo)
        raise SearchBudgetExceededError(spec, err.nodes, partial) from err
    vectors = _lift(spec.k, hits, lo)
    LOGGER.info("Search visited %d nodes, %d hits", nodes, len(vectors))
    if mode is SearchMode.LABELED:
        by_type = Counter(type_signature(v) for v in vectors)
        return SolutionSet(spec, vectors, len(vectors), dict(by_type), None, nodes)

    order = gl_order(spec.k)
    orbits: dict[DefiningVector, int] = {}
    for vector in vectors:
        canonical, stabilizer = canonical_form_and_stabilizer(vector)
        orbits.setdefault(canonical, stabilizer)
    by_type: Counter[TypeSignature] = Counter()
    for rep, stabilizer in orbits.items():
        by_type[type_signature(rep)] += order // stabilizer
    total = sum(by_type.values())
    solutions: list[DefiningVector] = []
    if total <= max_labeled:
        listed: set[DefiningVector] = set()
        for rep in orbits:
            listed |= orbit(rep)
        solutions = sorted(listed)
    LOGGER.info("%d orbits, %d labeled solutions", len(orbits), total)
    return SolutionSet(
        spec,
        solutions,
        total,
        dict(by_type),
        dict(sorted(orbits.items())),
        nodes,
    )


def random_search(
    spec: SearchSpec,
    *,
    seed: int,
    accept: Callable[[DefiningVector], bool],
) -> DefiningVector | None:
    """Walk the labeled tree in a seeded random order until `accept` holds.

    Returns `None` when the tree is exhausted. Budget errors propagate.
    """
    lo, reduced = _normalize_spec(spec)
    if reduced is None:
        return None
    found: list[DefiningVector] = []

    def on_leaf(entries: tuple[int, ...]) -> bool:
        vector = DefiningVector(spec.k, tuple(v + lo for v in entries))
        if accept(vector):
            found.append(vector)
            return True
        return False

    rng = random.Random(seed)
    engine = _Engine(reduced, SearchMode.LABELED, rng=rng, on_leaf=on_leaf)
    try:
        engine.run()
    except _StopSearchError:
        return found[0]
    except _BudgetSpentError as err:
        partial = _lift(spec.k, err.leaves, lo)
        raise SearchBudgetExceededError(spec, err.nodes, partial) from err
    return None
