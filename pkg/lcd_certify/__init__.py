"""Defining-vector calculus for binary [n, 5] codes and their hulls.

A code is described by its defining vector, the multiplicity of every
nonzero point of `F_2^k` among its columns. On top of that representation the
package enumerates and classifies codes, computes hull dimensions and
certifies that no `[n, 5, d]` LCD code exists for the lengths where the best
LCD distance falls below the best linear one.
"""

from lcd_certify.analysis import (
    CodeProfile,
    WeightEnumerator,
    bounds_table,
    d_a,
    d_l,
    hull_dimension,
    is_lcd,
    is_self_orthogonal,
    profile,
)
from lcd_certify.certify import CertifyError, Stratum, StratumMethod
from lcd_certify.certify.certificate import (
    Certificate,
    Witness,
    case_split,
    certify_no_lcd,
    search_lcd_witness,
)
from lcd_certify.certify.tables import TableReport, reproduce_table
from lcd_certify.config import Config, load_config
from lcd_certify.defining_vector import (
    DefiningVector,
    generator_from,
    juxtapose,
    weight_vector,
)
from lcd_certify.enumeration import (
    SearchMode,
    SearchSpec,
    SolutionSet,
    enumerate_defining_vectors,
)
from lcd_certify.equivalence import (
    EquivalenceClass,
    are_equivalent,
    canonical_form,
    classify,
)

__all__ = [
    "Certificate",
    "CertifyError",
    "CodeProfile",
    "Config",
    "DefiningVector",
    "EquivalenceClass",
    "SearchMode",
    "SearchSpec",
    "SolutionSet",
    "Stratum",
    "StratumMethod",
    "TableReport",
    "WeightEnumerator",
    "Witness",
    "are_equivalent",
    "bounds_table",
    "canonical_form",
    "case_split",
    "certify_no_lcd",
    "classify",
    "d_a",
    "d_l",
    "enumerate_defining_vectors",
    "generator_from",
    "hull_dimension",
    "is_lcd",
    "is_self_orthogonal",
    "juxtapose",
    "load_config",
    "profile",
    "reproduce_table",
    "search_lcd_witness",
    "weight_vector",
]
