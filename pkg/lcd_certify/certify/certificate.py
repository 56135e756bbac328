"""Certificates that no binary `[n, 5, d]` LCD code exists.

`certify_no_lcd` splits the defining vectors of the family into strata by
`l_min` and `l_max`, settles every stratum with one of the resolvers and
records the least hull dimension found. A certificate with `min_h >= 1`
proves that every code in the family has a nontrivial hull.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from lcd_certify.analysis import d_a, d_l, griesmer_length, is_lcd
from lcd_certify.certify import (
    InvalidInstanceError,
    Stratum,
    StratumMethod,
    StratumResolver,
)
from lcd_certify.certify.enumerate_resolver import EnumerationResolver
from lcd_certify.certify.extension import CitedResolver, ExtensionResolver
from lcd_certify.certify.reduction import ReductionResolver
from lcd_certify.certify.tables import TABLES
from lcd_certify.config import Config
from lcd_certify.defining_vector import (
    DefiningVector,
    check_dimension,
    generator_from,
    juxtapose,
    num_points,
)
from lcd_certify.enumeration import (
    SearchBudgetExceededError,
    SearchSpec,
    entry_bounds,
    entry_lower_bound,
    oracle_min_distance,
    random_search,
)
from lcd_certify.util import LOGGER

RESOLVERS: dict[StratumMethod, type[StratumResolver]] = {
    StratumMethod.ENUMERATE: EnumerationResolver,
    StratumMethod.REDUCE: ReductionResolver,
    StratumMethod.EXTENSION: ExtensionResolver,
    StratumMethod.CITED: CitedResolver,
}


@dataclass(frozen=True)
class Witness:
    """An LCD code one step below the certified distance."""

    d: int
    defining_vector: DefiningVector

    def to_json(self) -> dict[str, Any]:
        """Return the stable JSON form."""
        return {"d": self.d, "defining_vector": self.defining_vector.to_text()}


@dataclass(frozen=True)
class Certificate:
    """The resolved strata of one `[n, k, d]` family."""

    n: int
    k: int
    d: int
    required_h: int
    strata: tuple[Stratum, ...]
    witness: Witness | None = None
    paper_diffs: tuple[dict[str, Any], ...] = ()

    @property
    def s(self) -> int:
        """Return the number of whole simplex lengths in `n`."""
        return self.n // num_points(self.k)

    @property
    def t(self) -> int:
        """Return the residue of `n` modulo the simplex length."""
        return self.n % num_points(self.k)

    @property
    def complete(self) -> bool:
        """Whether every stratum was settled within budget."""
        return all(s.complete and s.resolved for s in self.strata)

    @property
    def min_h(self) -> int | None:
        """Return the least hull dimension over the family, `None` if it is empty."""
        return min((s.min_h for s in self.strata if s.min_h is not None), default=None)

    @property
    def lcd_nonexistent(self) -> bool:
        """Whether the certificate rules out LCD codes in the family."""
        return self.complete and (self.min_h is None or self.min_h >= 1)

    @property
    def meets_requirement(self) -> bool:
        """Whether every code in the family has hull dimension at least `required_h`."""
        return self.complete and (self.min_h is None or self.min_h >= self.required_h)

    def to_json(self) -> dict[str, Any]:
        """Return the stable JSON form."""
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "s": self.s,
            "t": self.t,
            "required_h": self.required_h,
            "strata": [s.to_json() for s in self.strata],
            "min_h": self.min_h,
            "complete": self.complete,
            "lcd_nonexistent": self.lcd_nonexistent,
            "witness": self.witness.to_json() if self.witness else None,
            "paper_diffs": list(self.paper_diffs),
        }


def _offset(value: int, s: int) -> str:
    if value == s:
        return "s"
    return f"s{value - s:+d}"


def case_split(n: int, d: int, *, k: int = 5) -> list[Stratum]:
    """Cut the `[n, k, d]` family into strata by `l_max` and `l_min`.

    Entries above the level forced by the average get a reduction stratum
    each. The forced level is split further by `l_min = m`, every slice
    becoming the normalized instance `[n - m(2^k - 1), k, d - m 2^(k-1)]` with
    a zero entry and entries at most `level - m`.
    """
    check_dimension(k)
    size = num_points(k)
    half = 1 << (k - 1)
    s, t = divmod(n, size)
    if griesmer_length(k, d) > n:
        return [
            Stratum(
                f"[{n},{k},{d}] violates the Griesmer bound",
                StratumMethod.CITED,
                s=s,
            ),
        ]
    top = s + 1 if t else s
    hi = entry_bounds(n, k, d)
    lo = entry_lower_bound(n, k, d)
    strata = [
        Stratum(
            f"l_max={_offset(v, s)}",
            StratumMethod.REDUCE,
            s=s,
            level=v,
            reduced=(n - v, k - 1, d),
        )
        for v in range(hi, top, -1)
    ]
    for m in range(min(s, top), lo - 1, -1):
        description = f"l_min={_offset(m, s)}, l_max={_offset(top, s)}"
        sub_n = n - size * m
        sub_d = d - half * m
        if sub_n < max(sub_d, 0):
            strata.append(
                Stratum(
                    description,
                    StratumMethod.ENUMERATE,
                    s=s,
                    base=m,
                    level=top,
                    vacuous=True,
                    note="normalized length is below the normalized distance",
                ),
            )
            continue
        spec = SearchSpec(
            sub_n,
            k,
            sub_d,
            max_entry=max(1, top - m),
            require_zero_entry=True,
            exact_distance=False,
        )
        strata.append(
            Stratum(
                description,
                StratumMethod.ENUMERATE,
                s=s,
                normalized_spec=spec,
                base=m,
                level=top,
            ),
        )
    return strata


def _resolve(stratum: Stratum, config: Config) -> Stratum:
    if stratum.vacuous:
        return stratum
    return RESOLVERS[stratum.method](config).run(stratum)


def _enumerate_level(
    n: int,
    k: int,
    d: int,
    stratum: Stratum,
    config: Config,
) -> Stratum:
    """Replace a reduction that fell short by a direct enumeration of its level."""
    LOGGER.info(
        "Reduction bound %s is too weak for %s, enumerating instead",
        stratum.min_h,
        stratum.description,
    )
    fallback = Stratum(
        f"{stratum.description} (enumerated)",
        StratumMethod.ENUMERATE,
        s=stratum.s,
        normalized_spec=SearchSpec(
            n,
            k,
            d,
            max_entry=stratum.level or 1,
            exact_distance=False,
        ),
        level=stratum.level,
        exact_level=True,
        note=f"reduction only gave h >= {stratum.min_h}",
    )
    return _resolve(fallback, config)


def _direct_strata(
    n: int,
    d: int,
    k: int,
    required_h: int,
    exact_hull: bool,  # noqa: FBT001
    config: Config,
) -> list[Stratum]:
    split = case_split(n, d, k=k)
    s, t = divmod(n, num_points(k))
    shortcut = None
    forced = [st for st in split if st.method is StratumMethod.ENUMERATE]
    if t and forced and not exact_hull:
        top = s + 1
        candidate = _resolve(
            Stratum(
                f"l_max={_offset(top, s)}",
                StratumMethod.REDUCE,
                s=s,
                level=top,
                reduced=(n - top, k - 1, d),
            ),
            config,
        )
        reaches = candidate.vacuous or (candidate.min_h or 0) >= required_h
        if candidate.complete and reaches:
            shortcut = candidate

    resolved: list[Stratum] = []
    for stratum in split:
        if shortcut is not None and stratum.method is StratumMethod.ENUMERATE:
            continue
        done = _resolve(stratum, config)
        if (
            done.method is StratumMethod.REDUCE
            and done.min_h is not None
            and done.min_h < required_h
        ):
            done = _enumerate_level(n, k, d, done, config)
        resolved.append(done)
    if shortcut is not None:
        resolved.append(shortcut)
    return resolved


def _class_count_diffs(strata: list[Stratum]) -> tuple[dict[str, Any], ...]:
    """Compare enumerated strata that match a class table with its caption."""
    diffs = []
    for stratum in strata:
        spec = stratum.normalized_spec
        if spec is None or stratum.exact_level or not stratum.complete:
            continue
        for table in TABLES.values():
            if (spec.n, spec.d, spec.max_entry) != (table.n, table.d, table.max_entry):
                continue
            if len(stratum.classes) != table.class_count:
                diffs.append(
                    {
                        "table": table.table_id,
                        "field": "class_count",
                        "expected": table.class_count,
                        "actual": len(stratum.classes),
                    },
                )
    return tuple(diffs)


def certify_no_lcd(
    n: int,
    d: int | None = None,
    *,
    k: int = 5,
    required_h: int = 1,
    exact_hull: bool = True,
    config: Config | None = None,
    with_witness: bool = True,
) -> Certificate:
    """Certify that every `[n, k, d]` code has hull dimension at least `required_h`.

    :param n: Code length.
    :param d: Minimum distance; defaults to the optimal `d_a(n)`.
    :param required_h: The hull dimension each stratum should reach. Strata
        settled by a reduction that falls short are enumerated instead.
    :param exact_hull: Enumerate the forced level so that `min_h` is the exact
        minimum there. When `False` a reduction is tried first and the
        level is only enumerated if the reduction bound falls short.
    :param config: Budgets, seed and workers.
    :param with_witness: Also search for an LCD code one step below.
    """
    config = config or Config()
    if d is None:
        d = d_a(n)
    if n < k or d < 1:
        msg = f"Cannot certify [{n},{k},{d}]: need n >= {k} and d >= 1."
        raise InvalidInstanceError(msg)
    LOGGER.info("Certifying [%d,%d,%d] with required hull %d", n, k, d, required_h)

    strata: list[Stratum] = []
    if d % 2 == 1:
        dependency = certify_no_lcd(
            n + 1,
            d + 1,
            k=k,
            required_h=required_h + 1,
            exact_hull=exact_hull,
            config=config,
            with_witness=False,
        )
        extended = _resolve(
            Stratum(
                f"parity extension to [{n + 1},{k},{d + 1}]",
                StratumMethod.EXTENSION,
                s=n // num_points(k),
                dependency=dependency,
            ),
            config,
        )
        if extended.vacuous or (extended.min_h or 0) >= required_h:
            strata = [extended]
        else:
            LOGGER.info(
                "Extension bound %s is too weak, splitting directly",
                extended.min_h,
            )
    if not strata:
        strata = _direct_strata(n, d, k, required_h, exact_hull, config)

    witness = None
    if with_witness and k == 5:  # noqa: PLR2004
        witness = search_lcd_witness(n, min(d - 1, d_l(n)), config=config)
    certificate = Certificate(
        n=n,
        k=k,
        d=d,
        required_h=required_h,
        strata=tuple(strata),
        witness=witness,
        paper_diffs=_class_count_diffs(strata),
    )
    LOGGER.info(
        "[%d,%d,%d]: min_h=%s, complete=%s",
        n,
        k,
        d,
        certificate.min_h,
        certificate.complete,
    )
    return certificate


def _is_lcd_vector(vector: DefiningVector) -> bool:
    return not vector.is_degenerate and is_lcd(generator_from(vector))


def search_lcd_witness(
    n: int,
    d: int,
    *,
    k: int = 5,
    config: Config | None = None,
) -> Witness | None:
    """Look for a binary `[n, k, >= d]` LCD code.

    Small instances `[c(2^k - 1) + t, k, d - (s - c) 2^(k-1)]` are searched in
    a seeded random order for `c = 0, 1, ...`, and a hit is padded with
    `s - c` simplex copies, which keep the code LCD for `k >= 3`.
    """
    config = config or Config()
    if d < 1:
        return None
    size = num_points(k)
    half = 1 << (k - 1)
    s, t = divmod(n, size)
    for c in range(s + 1):
        sub_n = size * c + t
        sub_d = max(d - half * (s - c), 1)
        if sub_n < k or griesmer_length(k, sub_d) > sub_n:
            continue
        spec = SearchSpec(
            sub_n,
            k,
            sub_d,
            max_entry=entry_bounds(sub_n, k, sub_d),
            exact_distance=False,
            node_budget=config.witness_node_budget,
        )
        LOGGER.info("Searching %s for an LCD code", spec.describe())
        for attempt in range(config.witness_restarts):
            try:
                found = random_search(
                    spec,
                    seed=config.seed + attempt,
                    accept=_is_lcd_vector,
                )
            except SearchBudgetExceededError:
                LOGGER.debug(
                    "Restart %d of %s ran out of budget",
                    attempt,
                    spec.describe(),
                )
                continue
            if found is None:
                break
            vector = juxtapose(found, s - c)
            distance = oracle_min_distance(vector)
            if distance >= d and _is_lcd_vector(vector):
                LOGGER.info("Found an LCD [%d,%d,%d] code", n, k, distance)
                return Witness(distance, vector)
    LOGGER.warning("No LCD [%d,%d,>=%d] code found", n, k, d)
    return None

