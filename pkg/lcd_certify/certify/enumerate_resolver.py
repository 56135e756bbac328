"""Settle a stratum by enumerating and classifying its normalized instance."""

from __future__ import annotations

from dataclasses import replace

from lcd_certify.analysis import hull_dimension, weight_enumerator
from lcd_certify.certify import (
    ClassRecord,
    IncompleteStratumError,
    Stratum,
    StratumMethod,
    StratumResolver,
)
from lcd_certify.defining_vector import generator_from, juxtapose
from lcd_certify.enumeration import SearchMode, enumerate_defining_vectors
from lcd_certify.equivalence import classify
from lcd_certify.util import LOGGER


class EnumerationResolver(StratumResolver):
    """Enumerates `[n - 31m, 5, d - 16m]` and reads off the hull of every class."""

    METHOD = StratumMethod.ENUMERATE

    def resolve(self, stratum: Stratum) -> Stratum:
        """Classify the normalized instance and take the least hull dimension."""
        if stratum.normalized_spec is None:
            raise IncompleteStratumError(stratum, "normalized instance")
        spec = replace(
            stratum.normalized_spec,
            node_budget=self.config.node_budget,
            time_budget=self.config.time_budget,
        )
        solutions = enumerate_defining_vectors(
            spec,
            workers=self.config.workers,
            max_labeled=self.config.max_labeled,
        )
        note = stratum.note
        if self.config.cross_check and solutions.total <= self.config.max_labeled:
            labeled = enumerate_defining_vectors(spec, mode=SearchMode.LABELED)
            if labeled.total != solutions.total or labeled.by_type != solutions.by_type:
                LOGGER.error(
                    "Labeled and orbit searches disagree on %s: %d vs %d",
                    spec.describe(),
                    labeled.total,
                    solutions.total,
                )
                note = "labeled and orbit searches disagree"
                return replace(stratum, complete=False, note=note)

        symbolic_base = (1 << (spec.k - 1)) * stratum.s
        records = []
        for found in classify(solutions):
            full = juxtapose(found.representative, stratum.base)
            if stratum.exact_level and full.max_entry != stratum.level:
                continue
            records.append(
                ClassRecord(
                    representative=found.representative,
                    h=hull_dimension(generator_from(full)),
                    weight_enumerator=weight_enumerator(full, symbolic_base),
                    member_count=found.member_count,
                    orbit_size=found.orbit_size,
                ),
            )
        return replace(
            stratum,
            classes=tuple(records),
            min_h=min((r.h for r in records), default=None),
            vacuous=not records,
            note=note,
        )
