"""Reproduce the published dimension-5 tables and diff them against fixtures.

Table 1 is the `(d_a, d_l)` table; tables 2 to 7 list the classes of the
normalized instances met while certifying `t = 10, 14, 18`.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import TYPE_CHECKING, Any

from lcd_certify.analysis import (
    CERTIFIED_RESIDUES,
    FIVE_POINTS,
    FIVE_WEIGHT,
    LCD_OPTIMAL_RESIDUES,
    TABLE_ONE_OFFSETS,
    BoundsRow,
    BoundStatus,
    WeightEnumerator,
    bounds_table,
    hull_dimension,
    weight_enumerator,
)
from lcd_certify.certify import (
    FixtureMismatchError,
    FixtureNotFoundError,
    InvalidInstanceError,
    UnknownTableError,
)
from lcd_certify.config import Config, load_config
from lcd_certify.defining_vector import (
    DefiningVector,
    DefiningVectorError,
    TypeSignature,
    generator_from,
    juxtapose,
    type_signature,
)
from lcd_certify.enumeration import SearchSpec, enumerate_defining_vectors
from lcd_certify.equivalence import EquivalenceClass, canonical_form, classify
from lcd_certify.util import LOGGER

if TYPE_CHECKING:
    from collections.abc import Callable

FIXTURE_FILE = "paper_tables.csv"
# Table 1 rows below this length come from the small-length oracle.
TABLE_ONE_MIN_N = 14


@dataclass(frozen=True)
class TableSpec:
    """A class table: the normalized instance and its published class count.

    `copies` simplex codes are stripped from `[31s + t, 5, 16s + ...]` to get
    the instance, so weights display relative to `16 copies`.
    """

    table_id: int
    t: int
    copies: int
    n: int
    d: int
    max_entry: int
    class_count: int

    @property
    def caption(self) -> str:
        """Return the table caption."""
        offset = self.d - FIVE_WEIGHT * self.copies
        return (
            f"{self.class_count} inequivalent [31s+{self.t},5,16s+{offset}] codes "
            f"from [{self.n},5,{self.d}]"
        )

    @property
    def symbolic_base(self) -> int:
        """Return the weight rendered as `16s`."""
        return FIVE_WEIGHT * self.copies

    def search_spec(self, config: Config) -> SearchSpec:
        """Return the enumeration instance with the configured budgets."""
        return SearchSpec(
            self.n,
            5,
            self.d,
            max_entry=self.max_entry,
            require_zero_entry=True,
            node_budget=config.node_budget,
            time_budget=config.time_budget,
        )


TABLES: dict[int, TableSpec] = {
    2: TableSpec(2, t=10, copies=1, n=41, d=20, max_entry=2, class_count=19),
    3: TableSpec(3, t=10, copies=2, n=72, d=36, max_entry=3, class_count=13),
    4: TableSpec(4, t=14, copies=1, n=45, d=22, max_entry=2, class_count=21),
    5: TableSpec(5, t=14, copies=2, n=76, d=38, max_entry=3, class_count=10),
    6: TableSpec(6, t=18, copies=1, n=49, d=24, max_entry=2, class_count=15),
    7: TableSpec(7, t=18, copies=2, n=80, d=40, max_entry=3, class_count=7),
}
TABLE_ONE_CAPTION = "d_a(n,5) and d_l(n,5) for n = 31s + t"


@dataclass(frozen=True)
class FixtureRow:
    """One printed row of a class table."""

    table: int
    row: int
    defining_vector: str
    h: int
    weight_enumerator: str
    erratum: str = ""
    # The type of defining vector printed above the row, zero parts included.
    type_header: str = ""


@dataclass(frozen=True)
class TableDiff:
    """A disagreement between the recomputation and a fixture."""

    table: int
    row: int | None
    field: str
    expected: str
    actual: str
    known_erratum: bool = False
    fatal: bool = False

    def to_json(self) -> dict[str, Any]:
        """Return the stable JSON form."""
        return {
            "table": self.table,
            "row": self.row,
            "field": self.field,
            "expected": self.expected,
            "actual": self.actual,
            "known_erratum": self.known_erratum,
            "fatal": self.fatal,
        }


@dataclass(frozen=True)
class TableRow:
    """One recomputed class."""

    type_signature: TypeSignature
    representative: DefiningVector
    h: int
    weight_enumerator: WeightEnumerator
    concrete_enumerator: WeightEnumerator
    member_count: int
    orbit_size: int
    stabilizer_order: int

    def to_json(self) -> dict[str, Any]:
        """Return the stable JSON form."""
        return {
            "type": str(self.type_signature),
            "representative": self.representative.to_text(),
            "h": self.h,
            "weight_enumerator": str(self.weight_enumerator),
            "concrete_weight_enumerator": str(self.concrete_enumerator),
            "member_count": self.member_count,
            "orbit_size": self.orbit_size,
            "stabilizer_order": self.stabilizer_order,
        }


@dataclass
class TableReport:
    """A reproduced table with its diffs."""

    table_id: int
    s: int
    caption: str
    rows: list[TableRow] = field(default_factory=list)
    bounds: list[BoundsRow] = field(default_factory=list)
    diffs: list[TableDiff] = field(default_factory=list)

    @property
    def fatal(self) -> bool:
        """Whether any diff is fatal."""
        return any(d.fatal for d in self.diffs)

    def to_json(self) -> dict[str, Any]:
        """Return the stable JSON form."""
        return {
            "table": self.table_id,
            "s": self.s,
            "caption": self.caption,
            "rows": [r.to_json() for r in self.rows],
            "bounds": [
                {
                    "n": b.n,
                    "s": b.s,
                    "t": b.t,
                    "d_a": b.d_a,
                    "d_l": b.d_l,
                    "status": b.status.value,
                }
                for b in self.bounds
            ],
            "diffs": [d.to_json() for d in self.diffs],
        }


def load_fixtures(directory: Path | None = None) -> list[FixtureRow]:
    """Read the class table fixtures.

    :param directory: Directory holding the fixture CSV; defaults to the
        configured fixture directory.
    """
    path = (directory or load_config().fixtures()) / FIXTURE_FILE
    if not path.is_file():
        raise FixtureNotFoundError(path)
    with path.open(newline="") as handle:
        return [
            FixtureRow(
                table=int(record["table"]),
                row=int(record["row"]),
                defining_vector=record["defining_vector"].strip(),
                h=int(record["h"]),
                weight_enumerator=record["weight_enumerator"].strip(),
                erratum=(record.get("erratum") or "").strip(),
                type_header=(record.get("type") or "").strip(),
            )
            for record in csv.DictReader(handle)
        ]


def _verify_d_l(row: BoundsRow, config: Config) -> bool:
    """Rule out LCD codes above `d_l` and find one at `d_l`."""
    # certificate.py imports this module
    from lcd_certify.certify.certificate import certify_no_lcd, search_lcd_witness

    for d in range(row.d_l + 1, row.d_a + 1):
        certificate = certify_no_lcd(row.n, d, config=config, with_witness=False)
        if not certificate.lcd_nonexistent:
            return False
    return search_lcd_witness(row.n, row.d_l, config=config) is not None


def _verified(row: BoundsRow, config: Config) -> BoundsRow:
    """Return `row` marked `verified` if its `d_l` can be settled here."""
    if row.status is not BoundStatus.CITED:
        return row
    if row.t not in CERTIFIED_RESIDUES | LCD_OPTIMAL_RESIDUES:
        return row
    if not _verify_d_l(row, config):
        LOGGER.warning("Could not verify d_l(%d) = %d", row.n, row.d_l)
        return row
    LOGGER.info("Verified d_l(%d) = %d", row.n, row.d_l)
    return replace(row, status=BoundStatus.VERIFIED)


def _table_one(s: int, config: Config, *, verify: bool) -> TableReport:
    bounds = bounds_table(s)
    if verify:
        bounds = [_verified(row, config) for row in bounds]
    report = TableReport(1, s, TABLE_ONE_CAPTION, bounds=bounds)
    for row in report.bounds:
        if row.n < TABLE_ONE_MIN_N:
            continue
        off_a, off_l = TABLE_ONE_OFFSETS[row.t]
        expected = (FIVE_WEIGHT * row.s + off_a, FIVE_WEIGHT * row.s + off_l)
        if (row.d_a, row.d_l) != expected:
            report.diffs.append(
                TableDiff(
                    1,
                    row.n,
                    "d_a,d_l",
                    f"{expected[0]},{expected[1]}",
                    f"{row.d_a},{row.d_l}",
                    fatal=True,
                ),
            )
    return report


def _check_type_header(
    row: FixtureRow,
    vector: DefiningVector,
    note: Callable[[FixtureRow, str, object, object], None],
) -> None:
    try:
        printed = TypeSignature.parse(row.type_header)
    except DefiningVectorError as err:
        note(row, "type", row.type_header, err)
        return
    nonzero = TypeSignature(tuple(p for p in printed.parts if p[1]))
    computed = type_signature(vector)
    if nonzero != computed:
        note(row, "type", row.type_header, computed)


def _row_diffs(
    table: TableSpec,
    fixtures: list[FixtureRow],
    classes: list[EquivalenceClass],
) -> list[TableDiff]:
    by_rep = {c.representative: c for c in classes}
    seen: dict[DefiningVector, int] = {}
    fixture_types: Counter[TypeSignature] = Counter()
    diffs: list[TableDiff] = []

    def note(
        row: FixtureRow | None,
        name: str,
        expected: object,
        actual: object,
    ) -> None:
        diffs.append(
            TableDiff(
                table.table_id,
                row.row if row else None,
                name,
                str(expected),
                str(actual),
                known_erratum=bool(row and row.erratum),
            ),
        )

    for row in fixtures:
        try:
            vector = DefiningVector.parse(row.defining_vector, k=5)
        except DefiningVectorError as err:
            note(row, "defining_vector", row.defining_vector, err)
            continue
        if row.type_header:
            _check_type_header(row, vector, note)
        canonical = canonical_form(vector)
        if canonical not in by_rep:
            note(row, "class", "a class of the instance", "no matching class")
            continue
        if canonical in seen:
            earlier = f"same class as row {seen[canonical]}"
            note(row, "class", "a class of its own", earlier)
            continue
        seen[canonical] = row.row
        fixture_types[type_signature(vector)] += 1
        h = hull_dimension(generator_from(vector))
        if h != row.h:
            note(row, "h", row.h, h)
        computed = weight_enumerator(vector, table.symbolic_base)
        try:
            printed = WeightEnumerator.parse(row.weight_enumerator, table.symbolic_base)
        except DefiningVectorError as err:
            note(row, "weight_enumerator", row.weight_enumerator, err)
            continue
        if printed != computed:
            note(row, "weight_enumerator", printed, computed)

    for rep in by_rep:
        if rep not in seen:
            note(None, "class", "listed", f"class of {rep} is not listed")
    computed_types = Counter(c.type_signature for c in classes)
    for signature in sorted(set(computed_types) | set(fixture_types)):
        if computed_types[signature] != fixture_types[signature]:
            note(
                None,
                f"type {signature}",
                fixture_types[signature],
                computed_types[signature],
            )
    return diffs


def reproduce_table(
    table_id: int,
    s: int | None = None,
    *,
    config: Config | None = None,
    fixtures: list[FixtureRow] | None = None,
    verify: bool = False,
) -> TableReport:
    """Recompute one table and diff it against the fixtures.

    :param table_id: 1 for the bounds table, 2 to 7 for a class table.
    :param s: Number of simplex lengths in the displayed `n`; defaults to the
        least value the table applies to.
    :param config: Budgets and the fixture location.
    :param fixtures: Rows to compare against; read from the fixture file
        when omitted.
    :param verify: For table 1, certify and witness-search each `d_l` that
        the toolkit can settle, marking those rows `verified`.
    :raises FixtureMismatchError: If the class count differs from the caption.
    """
    config = config or load_config()
    if table_id == 1:
        return _table_one(1 if s is None else s, config, verify=verify)
    if table_id not in TABLES:
        raise UnknownTableError(table_id)
    table = TABLES[table_id]
    s = table.copies if s is None else s
    if s < table.copies:
        msg = f"Table {table_id} applies to s >= {table.copies}, got s={s}."
        raise InvalidInstanceError(msg)

    LOGGER.info("Reproducing table %d: %s", table_id, table.caption)
    solutions = enumerate_defining_vectors(
        table.search_spec(config),
        workers=config.workers,
        max_labeled=config.max_labeled,
    )
    classes = classify(solutions)
    if len(classes) != table.class_count:
        LOGGER.error("Table %d class count mismatch", table_id)
        raise FixtureMismatchError(table_id, table.class_count, len(classes))

    extra = s - table.copies
    report = TableReport(table_id, s, table.caption)
    for found in classes:
        full = juxtapose(found.representative, extra)
        report.rows.append(
            TableRow(
                type_signature=found.type_signature,
                representative=found.representative,
                h=hull_dimension(generator_from(full)),
                weight_enumerator=weight_enumerator(
                    found.representative,
                    table.symbolic_base,
                ),
                concrete_enumerator=weight_enumerator(full),
                member_count=found.member_count,
                orbit_size=found.orbit_size,
                stabilizer_order=found.stabilizer_order,
            ),
        )

    rows = fixtures if fixtures is not None else load_fixtures(config.fixtures())
    report.diffs = _row_diffs(table, [r for r in rows if r.table == table_id], classes)
    for diff in report.diffs:
        log = LOGGER.info if diff.known_erratum else LOGGER.warning
        log(
            "Table %d row %s: %s printed %s, recomputed %s",
            diff.table,
            diff.row,
            diff.field,
            diff.expected,
            diff.actual,
        )
    return report


def lengths(table_id: int, s: int) -> tuple[int, int]:
    """Return `(n, d)` of the codes a class table describes at `s`."""
    if table_id not in TABLES:
        raise UnknownTableError(table_id)
    table = TABLES[table_id]
    extra = s - table.copies
    return table.n + FIVE_POINTS * extra, table.d + FIVE_WEIGHT * extra

