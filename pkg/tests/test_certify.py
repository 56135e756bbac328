"""Tests for strata, resolvers and certificates."""

import pytest

from lcd_certify.analysis import d_a, d_l, is_lcd
from lcd_certify.certify import (
    DependencyNotCertifiedError,
    IncompleteStratumError,
    InvalidInstanceError,
    InvalidStratumError,
    Stratum,
    StratumMethod,
)
from lcd_certify.certify.certificate import (
    Certificate,
    case_split,
    certify_no_lcd,
    search_lcd_witness,
)
from lcd_certify.certify.enumerate_resolver import EnumerationResolver
from lcd_certify.certify.extension import CitedResolver, ExtensionResolver
from lcd_certify.certify.reduction import (
    ReductionResolver,
    family_min_hull,
    reduction_bound,
)
from lcd_certify.config import Config
from lcd_certify.defining_vector import generator_from
from lcd_certify.enumeration import (
    SearchBudgetExceededError,
    SearchSpec,
    oracle_min_distance,
)


def certificate_of(*strata: Stratum, n: int = 46, d: int = 22) -> Certificate:
    return Certificate(n=n, k=5, d=d, required_h=1, strata=strata)


def test_case_split_t14():
    strata = case_split(45, 22)
    assert [s.method for s in strata] == [
        StratumMethod.REDUCE,
        StratumMethod.ENUMERATE,
        StratumMethod.ENUMERATE,
    ]
    assert [s.description for s in strata] == [
        "l_max=s+2",
        "l_min=s, l_max=s+1",
        "l_min=s-1, l_max=s+1",
    ]
    assert strata[0].reduced == (42, 4, 22)
    assert strata[1].normalized_spec == SearchSpec(
        14,
        5,
        6,
        max_entry=1,
        require_zero_entry=True,
        exact_distance=False,
    )
    assert strata[2].normalized_spec == SearchSpec(
        45,
        5,
        22,
        max_entry=2,
        require_zero_entry=True,
        exact_distance=False,
    )
    assert [s.base for s in strata[1:]] == [1, 0]


def test_case_split_t13():
    strata = case_split(44, 22)
    assert [s.method for s in strata] == [StratumMethod.ENUMERATE] * 2
    spec = strata[0].normalized_spec
    assert spec is not None
    assert (spec.n, spec.d, spec.max_entry) == (13, 6, 1)


def test_case_split_griesmer():
    strata = case_split(44, 23)
    assert len(strata) == 1
    assert strata[0].method is StratumMethod.CITED


def test_resolver_method_check():
    with pytest.raises(InvalidStratumError):
        EnumerationResolver().run(Stratum("x", StratumMethod.REDUCE))


def test_resolver_missing_data():
    with pytest.raises(IncompleteStratumError):
        ReductionResolver().run(Stratum("x", StratumMethod.REDUCE))
    with pytest.raises(IncompleteStratumError):
        EnumerationResolver().run(Stratum("x", StratumMethod.ENUMERATE))
    with pytest.raises(IncompleteStratumError):
        ExtensionResolver().run(Stratum("x", StratumMethod.EXTENSION))


def test_empty_enumeration_is_vacuous():
    spec = SearchSpec(
        13,
        5,
        6,
        max_entry=1,
        require_zero_entry=True,
        exact_distance=False,
    )
    stratum = Stratum(
        "l_min=s",
        StratumMethod.ENUMERATE,
        s=1,
        normalized_spec=spec,
        base=1,
    )
    resolved = EnumerationResolver().run(stratum)
    assert resolved.vacuous
    assert resolved.min_h is None
    assert resolved.complete


def test_budget_marks_incomplete(monkeypatch: pytest.MonkeyPatch):
    spec = SearchSpec(45, 5, 22, max_entry=2, require_zero_entry=True)

    def exhausted(spec: SearchSpec, **_: object) -> None:
        raise SearchBudgetExceededError(spec, 1024, [])

    monkeypatch.setattr(
        "lcd_certify.certify.enumerate_resolver.enumerate_defining_vectors",
        exhausted,
    )
    stratum = Stratum("x", StratumMethod.ENUMERATE, normalized_spec=spec)
    resolved = EnumerationResolver(Config(node_budget=1)).run(stratum)
    assert not resolved.complete
    assert not resolved.resolved
    assert not certificate_of(resolved).complete
    assert not certificate_of(resolved).lcd_nonexistent


def test_reduction_bound():
    assert family_min_hull(15, 4, 8) == 4
    assert reduction_bound(15, 4, 8) == 3
    assert reduction_bound(10, 4, 8) is None
    stratum = Stratum("l_max=s+2", StratumMethod.REDUCE, reduced=(10, 4, 8))
    assert ReductionResolver().run(stratum).vacuous


def test_extension_resolver():
    done = certificate_of(Stratum("x", StratumMethod.ENUMERATE, min_h=3))
    resolved = ExtensionResolver().run(
        Stratum("ext", StratumMethod.EXTENSION, dependency=done),
    )
    assert resolved.min_h == 2

    empty = certificate_of(Stratum("x", StratumMethod.CITED, vacuous=True))
    assert ExtensionResolver().run(
        Stratum("ext", StratumMethod.EXTENSION, dependency=empty),
    ).vacuous

    unfinished = certificate_of(Stratum("x", StratumMethod.ENUMERATE, complete=False))
    with pytest.raises(DependencyNotCertifiedError):
        ExtensionResolver().run(
            Stratum("ext", StratumMethod.EXTENSION, dependency=unfinished),
        )


def test_cited_resolver():
    assert CitedResolver().run(Stratum("x", StratumMethod.CITED)).vacuous


def test_certificate_summary():
    certificate = certificate_of(
        Stratum("a", StratumMethod.ENUMERATE, min_h=3),
        Stratum("b", StratumMethod.REDUCE, min_h=1, reduced=(42, 4, 22)),
        Stratum("c", StratumMethod.ENUMERATE, vacuous=True),
        n=45,
    )
    assert (certificate.s, certificate.t) == (1, 14)
    assert certificate.min_h == 1
    assert certificate.complete
    assert certificate.lcd_nonexistent
    data = certificate.to_json()
    assert set(data) == {
        "n",
        "k",
        "d",
        "s",
        "t",
        "required_h",
        "strata",
        "min_h",
        "complete",
        "lcd_nonexistent",
        "witness",
        "paper_diffs",
    }
    assert data["strata"][1]["reduced_instance"] == [42, 4, 22]
    assert data["strata"][1]["method"] == "reduce-argument"


def test_lcd_family_is_not_certified():
    certificate = certificate_of(Stratum("a", StratumMethod.ENUMERATE, min_h=0))
    assert certificate.complete
    assert not certificate.lcd_nonexistent


def test_invalid_instance():
    with pytest.raises(InvalidInstanceError):
        certify_no_lcd(4, 2)
    with pytest.raises(InvalidInstanceError):
        certify_no_lcd(20, 0)


def test_certify_forty_four():
    certificate = certify_no_lcd(44, with_witness=False)
    assert certificate.d == d_a(44) == 22
    assert certificate.min_h == 3
    assert certificate.lcd_nonexistent
    assert certificate.strata[0].vacuous
    enumerated = certificate.strata[1]
    assert len(enumerated.classes) == 2
    assert {str(c.weight_enumerator) for c in enumerated.classes} == {
        "1+23y^{16s+6}+7y^{16s+8}+y^{16s+14}",
        "1+24y^{16s+6}+6y^{16s+8}+y^{16s+16}",
    }
    assert certificate.paper_diffs == ()


def test_certify_odd_distance_by_extension():
    certificate = certify_no_lcd(43, with_witness=False)
    assert certificate.d == 21
    assert len(certificate.strata) == 1
    stratum = certificate.strata[0]
    assert stratum.method is StratumMethod.EXTENSION
    assert stratum.dependency is not None
    assert stratum.dependency.required_h == 2
    assert stratum.min_h == 2
    assert certificate.lcd_nonexistent


@pytest.mark.slow
def test_certify_forty_eight():
    certificate = certify_no_lcd(48, 24, with_witness=False)
    assert certificate.min_h == 3
    reduce_first = certify_no_lcd(48, 24, exact_hull=False, with_witness=False)
    assert reduce_first.lcd_nonexistent
    assert reduce_first.min_h is not None
    assert reduce_first.min_h <= 3


@pytest.mark.slow
@pytest.mark.parametrize("s", [1, 2])
@pytest.mark.parametrize("t", [2, 8, 10, 12, 14, 16, 18])
def test_nonexistence(s: int, t: int):
    n = 31 * s + t
    certificate = certify_no_lcd(n, with_witness=False)
    assert certificate.lcd_nonexistent
    if t == 16:
        assert certify_no_lcd(n, d_a(n) - 1, with_witness=False).lcd_nonexistent


@pytest.mark.slow
@pytest.mark.parametrize("t", [2, 8, 10, 12, 14, 16, 18])
def test_witness_below(t: int):
    n = 31 + t
    witness = search_lcd_witness(n, d_l(n))
    assert witness is not None
    assert witness.defining_vector.n == n
    assert oracle_min_distance(witness.defining_vector) >= d_l(n)
    assert is_lcd(generator_from(witness.defining_vector))


def test_small_witness():
    witness = search_lcd_witness(7, 2)
    assert witness is not None
    assert witness.d >= 2
    assert witness.to_json()["defining_vector"] == witness.defining_vector.to_text()
    assert witness == search_lcd_witness(7, 2)
    assert search_lcd_witness(6, 2) is None
    assert search_lcd_witness(6, 0) is None
