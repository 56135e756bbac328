"""Bound the hull of an odd-distance family through its parity extension.

Every `[n, k, d]` code with odd `d` extends to an `[n + 1, k, d + 1]` code and
the hull drops by at most one under puncturing, so a certificate for the
extended family carries over with `min_h` lowered by one.
"""

from __future__ import annotations

from dataclasses import replace

from lcd_certify.certify import (
    DependencyNotCertifiedError,
    IncompleteStratumError,
    Stratum,
    StratumMethod,
    StratumResolver,
)


class ExtensionResolver(StratumResolver):
    """Settles a stratum from the certificate of the extended family."""

    METHOD = StratumMethod.EXTENSION

    def resolve(self, stratum: Stratum) -> Stratum:
        """Lower the extended family's `min_h` by one."""
        dependency = stratum.dependency
        if dependency is None:
            raise IncompleteStratumError(stratum, "dependency")
        if not dependency.complete:
            raise DependencyNotCertifiedError(dependency.n, dependency.d)
        if dependency.min_h is None:
            return replace(stratum, vacuous=True, min_h=None)
        return replace(stratum, min_h=max(dependency.min_h - 1, 0))


class CitedResolver(StratumResolver):
    """Settles strata excluded outright by the Griesmer bound."""

    METHOD = StratumMethod.CITED

    def resolve(self, stratum: Stratum) -> Stratum:
        """Mark the stratum vacuous."""
        return replace(stratum, vacuous=True, min_h=None)
