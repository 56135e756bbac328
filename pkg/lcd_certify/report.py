"""Reading vector inputs and rendering results as JSON, CSV or markdown."""

from __future__ import annotations

import csv
import io
import json
import sys
from enum import Enum
from typing import TYPE_CHECKING, Any

from lcd_certify.defining_vector import DefiningVector

if TYPE_CHECKING:
    from pathlib import Path

    from lcd_certify.analysis import BoundsRow, CodeProfile
    from lcd_certify.certify.certificate import Certificate, Witness
    from lcd_certify.certify.tables import TableReport
    from lcd_certify.enumeration import SolutionSet
    from lcd_certify.equivalence import EquivalenceClass


class OutputFormat(Enum):
    """The rendering of a command's result."""

    JSON = "json"
    CSV = "csv"
    MARKDOWN = "markdown"

    @staticmethod
    def from_file(file: Path) -> OutputFormat | None:
        """Try to derive the format from a file extension."""
        return {
            ".json": OutputFormat.JSON,
            ".csv": OutputFormat.CSV,
            ".md": OutputFormat.MARKDOWN,
        }.get(file.suffix)


class VectorInput:
    """Defining vectors given as a file, a string or on stdin.

    One vector per line; blank lines and lines starting with `#` are skipped.
    """

    _data: str | None
    data_path: Path | None

    def __init__(self, data: str) -> None:
        """Initialize the data."""
        self._data = data
        self.data_path = None

    @classmethod
    def from_path(cls, file_path: Path) -> VectorInput:
        """Initialize the data from a file path, read on first use."""
        c = cls("")
        c.data_path = file_path
        c._data = None  # noqa: SLF001
        return c

    @classmethod
    def from_stdin(cls) -> VectorInput:
        """Initialize the data, reading from stdin."""
        return cls(sys.stdin.read())

    @property
    def data(self) -> str:
        """The text, loaded from `data_path` when needed."""
        if self._data is None:
            if self.data_path is None:
                msg = "No data path to load."
                raise ValueError(msg)
            self._data = self.data_path.read_text()
        return self._data

    def vectors(self, k: int | None = None) -> list[DefiningVector]:
        """Parse every vector line."""
        return parse_vector_lines(self.data, k)


def parse_vector_lines(text: str, k: int | None = None) -> list[DefiningVector]:
    """Parse one defining vector per nonblank, non-comment line."""
    return [
        DefiningVector.parse(line, k)
        for line in (raw.strip() for raw in text.splitlines())
        if line and not line.startswith("#")
    ]


def _dump_json(data: Any) -> str:  # noqa: ANN401
    return json.dumps(data, indent=2) + "\n"


def _dump_csv(header: list[str], rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _dump_markdown(header: list[str], rows: list[list[Any]]) -> str:
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    lines.extend("| " + " | ".join(str(v) for v in row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def _tabular(header: list[str], rows: list[list[Any]], fmt: OutputFormat) -> str:
    if fmt is OutputFormat.CSV:
        return _dump_csv(header, rows)
    if fmt is OutputFormat.MARKDOWN:
        return _dump_markdown(header, rows)
    return _dump_json([dict(zip(header, row)) for row in rows])


def render_profiles(
    profiles: list[tuple[DefiningVector, CodeProfile]],
    fmt: OutputFormat,
) -> str:
    """Render the parameters and hull data of each code, one row per code."""
    header = ["defining_vector", "n", "k", "d", "h", "lcd", "so", "weight_enumerator"]
    rows = [
        [
            vector.to_text(),
            p.n,
            p.k,
            p.d,
            p.h,
            p.is_lcd,
            p.is_so,
            str(p.weight_enumerator),
        ]
        for vector, p in profiles
    ]
    if fmt is OutputFormat.JSON:
        return _dump_json(
            [
                {**dict(zip(header, row)), "degenerate": p.degenerate}
                for row, (_, p) in zip(rows, profiles)
            ],
        )
    return _tabular(header, rows, fmt)


def render_solutions(solution_set: SolutionSet, fmt: OutputFormat) -> str:
    """Render the labeled solutions, falling back to orbit representatives."""
    listed = solution_set.is_listed
    vectors = solution_set.solutions if listed else solution_set.representatives()
    if fmt is OutputFormat.JSON:
        return _dump_json(
            {
                "spec": solution_set.spec.describe(),
                "total": solution_set.total,
                "listed": listed,
                "by_type": {str(t): c for t, c in sorted(solution_set.by_type.items())},
                "vectors": [v.to_text() for v in vectors],
            },
        )
    if fmt is OutputFormat.CSV:
        return _dump_csv(["defining_vector"], [[v.to_text()] for v in vectors])
    header = f"# {solution_set.spec.describe()}: {solution_set.total} solutions\n"
    return header + "".join(f"{v.to_text()}\n" for v in vectors)


def render_classes(classes: list[EquivalenceClass], fmt: OutputFormat) -> str:
    """Render one row per equivalence class, numbered from 1."""
    header = [
        "class_id",
        "type",
        "representative",
        "h",
        "weight_enumerator",
        "member_count",
        "orbit_size",
        "stabilizer_order",
    ]
    rows = [
        [
            class_id,
            str(c.type_signature),
            c.representative.to_text(),
            c.profile.h,
            str(c.profile.weight_enumerator),
            c.member_count,
            c.orbit_size,
            c.stabilizer_order,
        ]
        for class_id, c in enumerate(classes, start=1)
    ]
    return _tabular(header, rows, fmt)


def render_certificate(certificate: Certificate, fmt: OutputFormat) -> str:
    """Render a certificate; CSV lists the strata."""
    if fmt is OutputFormat.JSON:
        return _dump_json(certificate.to_json())
    header = ["description", "method", "min_h", "classes", "vacuous", "complete"]
    rows = [
        [
            s.description,
            s.method.value,
            "" if s.min_h is None else s.min_h,
            len(s.classes),
            s.vacuous,
            s.complete,
        ]
        for s in certificate.strata
    ]
    if fmt is OutputFormat.CSV:
        return _dump_csv(header, rows)
    title = (
        f"## [{certificate.n},{certificate.k},{certificate.d}]: "
        f"min_h={certificate.min_h}, lcd_nonexistent={certificate.lcd_nonexistent}\n\n"
    )
    return title + _dump_markdown(header, rows)


def render_witness(witness: Witness | None, fmt: OutputFormat) -> str:
    """Render a witness, or `null` when none was found."""
    data = witness.to_json() if witness else None
    if fmt is OutputFormat.JSON or data is None:
        return _dump_json(data)
    row = [data["d"], data["defining_vector"]]
    return _tabular(["d", "defining_vector"], [row], fmt)


def render_bounds(rows: list[BoundsRow], fmt: OutputFormat) -> str:
    """Render `(d_a, d_l)` rows."""
    header = ["n", "s", "t", "d_a", "d_l", "status"]
    return _tabular(header, [r.to_csv_row() for r in rows], fmt)


def render_table(report: TableReport, fmt: OutputFormat) -> str:
    """Render a reproduced table followed by its fixture diffs.

    Markdown puts the diffs under their own heading; CSV appends them as a
    second block after a blank line. Nothing is appended when there are none.
    """
    if fmt is OutputFormat.JSON:
        return _dump_json(report.to_json())
    if report.table_id == 1:
        body = render_bounds(report.bounds, fmt)
    else:
        header = ["type", "defining_vector", "h", "weight_enumerator"]
        rows = [
            [
                str(r.type_signature),
                r.representative.to_text(),
                r.h,
                str(r.weight_enumerator),
            ]
            for r in report.rows
        ]
        body = _tabular(header, rows, fmt)
    diffs = ""
    if report.diffs:
        diff_header = [
            "table",
            "row",
            "field",
            "printed",
            "recomputed",
            "known_erratum",
        ]
        diff_rows = [
            [
                d.table,
                "" if d.row is None else d.row,
                d.field,
                d.expected,
                d.actual,
                d.known_erratum,
            ]
            for d in report.diffs
        ]
        diffs = "\n" + _tabular(diff_header, diff_rows, fmt)
    if fmt is OutputFormat.MARKDOWN:
        title = f"## Table {report.table_id}: {report.caption}\n\n"
        if diffs:
            diffs = "\n### Diffs\n" + diffs
        return title + body + diffs
    return body + diffs
