"""Strata of a nonexistence proof and the resolvers that settle them.

A stratum is a slice of the defining vectors of an `[n, 5, d]` code, cut out
by the values of `l_min` and `l_max`. Each stratum is settled by one method:
enumerating and classifying a normalized instance, bounding the hull through
a reduced code, bounding it through the parity-extended code, or citing a
bound that rules the parameters out.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING, Any

from lcd_certify.config import Config
from lcd_certify.enumeration import SearchBudgetExceededError
from lcd_certify.util import LOGGER

if TYPE_CHECKING:
    from lcd_certify.analysis import WeightEnumerator
    from lcd_certify.certify.certificate import Certificate
    from lcd_certify.defining_vector import DefiningVector
    from lcd_certify.enumeration import SearchSpec


class StratumMethod(Enum):
    """How a stratum is settled."""

    ENUMERATE = "enumerate"
    REDUCE = "reduce-argument"
    EXTENSION = "extension-argument"
    CITED = "cited"


@dataclass(frozen=True)
class ClassRecord:
    """One equivalence class found while resolving a stratum.

    The representative is the normalized vector; `h` and the weight enumerator
    belong to the full code obtained by adding back the simplex copies.
    """

    representative: DefiningVector
    h: int
    weight_enumerator: WeightEnumerator
    member_count: int
    orbit_size: int

    def to_json(self) -> dict[str, Any]:
        """Return the stable JSON form."""
        return {
            "representative": self.representative.to_text(),
            "h": self.h,
            "weight_enumerator": str(self.weight_enumerator),
            "member_count": self.member_count,
            "orbit_size": self.orbit_size,
        }


@dataclass(frozen=True)
class Stratum:
    """A slice of the defining vectors of one `[n, k, d]` instance.

    `base` is the number of simplex copies stripped off to get the normalized
    instance; `level` is the `l_max` the stratum is about, when fixed.
    """

    description: str
    method: StratumMethod
    s: int = 0
    normalized_spec: SearchSpec | None = None
    base: int = 0
    level: int | None = None
    exact_level: bool = False
    reduced: tuple[int, int, int] | None = None
    dependency: Certificate | None = None
    min_h: int | None = None
    classes: tuple[ClassRecord, ...] = ()
    vacuous: bool = False
    complete: bool = True
    note: str = ""

    @property
    def resolved(self) -> bool:
        """Whether the stratum carries a result."""
        return self.vacuous or self.min_h is not None

    def to_json(self) -> dict[str, Any]:
        """Return the stable JSON form."""
        data: dict[str, Any] = {
            "description": self.description,
            "method": self.method.value,
            "min_h": self.min_h,
            "classes": [c.to_json() for c in self.classes],
            "vacuous": self.vacuous,
            "complete": self.complete,
        }
        if self.normalized_spec is not None:
            spec = self.normalized_spec
            data["normalized_instance"] = [spec.n, spec.k, spec.d]
            data["max_entry"] = spec.max_entry
        if self.reduced is not None:
            data["reduced_instance"] = list(self.reduced)
        if self.note:
            data["note"] = self.note
        return data


class StratumResolver(ABC):
    """Settles strata of a single method."""

    METHOD: StratumMethod

    def __init__(self, config: Config | None = None) -> None:
        """Initialize the resolver."""
        self.config = config or Config()

    @abstractmethod
    def resolve(self, stratum: Stratum) -> Stratum:
        """Return the stratum with `min_h`, classes and flags filled in.

        :param stratum: A stratum whose method matches `METHOD`.
        :returns: The resolved stratum.
        """

    def _check_method(self, stratum: Stratum) -> None:
        if stratum.method != self.METHOD:
            raise InvalidStratumError(stratum.method, self.METHOD)

    def run(self, stratum: Stratum) -> Stratum:
        """Resolve a stratum, marking it incomplete when a budget runs out."""
        self._check_method(stratum)
        LOGGER.info("Resolving stratum %s (%s)", stratum.description, self.METHOD.value)
        try:
            resolved = self.resolve(stratum)
        except SearchBudgetExceededError as err:
            LOGGER.warning("Stratum %s is incomplete: %s", stratum.description, err)
            return replace(stratum, complete=False, note=str(err))
        if resolved.vacuous:
            LOGGER.info("Stratum %s is vacuous", stratum.description)
        else:
            LOGGER.info(
                "Stratum %s resolved: min_h=%s",
                stratum.description,
                resolved.min_h,
            )
        return resolved


class CertifyError(Exception):
    """Base class for certification errors."""


class InvalidStratumError(CertifyError):
    """A stratum was handed to the wrong resolver."""

    def __init__(self, method: StratumMethod, expected: StratumMethod) -> None:
        """Initialize the error."""
        super().__init__(f"Expected a {expected.value} stratum, got {method.value}.")


class IncompleteStratumError(CertifyError):
    """A stratum lacks the data its method needs."""

    def __init__(self, stratum: Stratum, missing: str) -> None:
        """Initialize the error."""
        super().__init__(f"Stratum {stratum.description} has no {missing}.")


class DependencyNotCertifiedError(CertifyError):
    """An extension argument ran before its extended family was certified."""

    def __init__(self, n: int, d: int) -> None:
        """Initialize the error."""
        super().__init__(f"The extended family [{n},5,{d}] is not certified.")


class FixtureMismatchError(CertifyError):
    """A recomputed class count contradicts a table caption."""

    def __init__(self, table_id: int, expected: int, actual: int) -> None:
        """Initialize the error."""
        super().__init__(
            f"Table {table_id} lists {expected} classes, recomputation found {actual}.",
        )
        self.table_id = table_id
        self.expected = expected
        self.actual = actual


class UnknownTableError(CertifyError):
    """No table with the requested id exists."""

    def __init__(self, table_id: int) -> None:
        """Initialize the error."""
        super().__init__(f"Unknown table {table_id}; expected one of 1..7.")


class FixtureNotFoundError(CertifyError):
    """The fixture file is missing."""

    def __init__(self, path: object) -> None:
        """Initialize the error."""
        super().__init__(f"Fixture file {path} does not exist.")


class InvalidInstanceError(CertifyError):
    """Parameters outside the range a routine supports."""

    def __init__(self, reason: str) -> None:
        """Initialize the error."""
        super().__init__(reason)
