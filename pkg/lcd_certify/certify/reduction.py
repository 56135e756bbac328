"""Bound the hull of a stratum through the code on a hyperplane of messages.

Restricting the messages of an `[n, k, d]` code to those orthogonal to a point
`a_p` with `l_p = v` kills the `v` columns at `a_p` and leaves an
`[n - v, k - 1, >= d]` code `C_1`. Since `h(C) >= h(C_1) - 1`, the least hull
dimension over every such `C_1` bounds the whole stratum.
"""

from __future__ import annotations

from dataclasses import replace
from functools import cache

from lcd_certify.analysis import hull_dimension
from lcd_certify.certify import (
    IncompleteStratumError,
    Stratum,
    StratumMethod,
    StratumResolver,
)
from lcd_certify.defining_vector import generator_from
from lcd_certify.enumeration import SearchSpec, entry_bounds, enumerate_defining_vectors
from lcd_certify.util import LOGGER


@cache
def family_min_hull(n: int, k: int, d: int) -> int | None:
    """Return the least hull dimension of a nondegenerate `[n, k, >= d]` code.

    `None` means no such code exists.
    """
    if n < d:
        return None
    spec = SearchSpec(n, k, d, max_entry=entry_bounds(n, k, d), exact_distance=False)
    solutions = enumerate_defining_vectors(spec)
    hulls = [
        hull_dimension(generator_from(rep))
        for rep in solutions.representatives()
        if not rep.is_degenerate
    ]
    LOGGER.debug("Family %s has %d classes", spec.describe(), len(hulls))
    return min(hulls, default=None)


def reduction_bound(n: int, k: int, d: int) -> int | None:
    """Return the hull bound `max(r - 1, 0)` carried over from `[n, k, >= d]`."""
    least = family_min_hull(n, k, d)
    return None if least is None else max(least - 1, 0)


class ReductionResolver(StratumResolver):
    """Settles strata fixed by a large entry `l_max = v`."""

    METHOD = StratumMethod.REDUCE

    def resolve(self, stratum: Stratum) -> Stratum:
        """Bound the stratum by the hull of the reduced family."""
        if stratum.reduced is None:
            raise IncompleteStratumError(stratum, "reduced instance")
        bound = reduction_bound(*stratum.reduced)
        if bound is None:
            return replace(stratum, vacuous=True, min_h=None)
        return replace(stratum, min_h=bound)
