import pytest

from supercartan.classify import Kind, type_of
from supercartan.enumeration import (
    EnumerationOptions,
    SymFilter,
    UnsupportedRank,
    direct_super_search,
    enumerate_hyperbolic,
    enumerate_super_almost_affine,
    max_entry_is_lossless,
    pairing_report,
    product_bound_holds,
)
from supercartan.equivalence import canonical_form
from supercartan.matrix_core import is_symmetrizable, validate
from supercartan.supermap import find_superizations

from conftest import H3_93, H3_113


def keys(ms):
    return [M.key() for M in ms]


def test_rank_bounds():
    for bad in (2, 11):
        with pytest.raises(UnsupportedRank):
            EnumerationOptions(bad)


def test_rank3_contains_catalog_examples():
    sym = keys(enumerate_hyperbolic(EnumerationOptions(3, sym="sym")))
    nonsym = keys(enumerate_hyperbolic(EnumerationOptions(3, sym="nonsym")))
    assert canonical_form(validate(H3_93))[0].key() in sym
    nh3_1 = validate([[2, -1, -1], [-2, 2, -1], [-2, -2, 2]])
    assert canonical_form(nh3_1)[0].key() in nonsym


def test_rank3_output_is_canonical_hyperbolic_and_filtered():
    for sym in SymFilter:
        for M in enumerate_hyperbolic(EnumerationOptions(3, sym=sym)):
            assert canonical_form(M)[0] == M
            assert type_of(M).kind is Kind.ALMOST_AFFINE
            assert product_bound_holds(M)
            if sym is not SymFilter.ALL:
                assert is_symmetrizable(M) == (sym is SymFilter.SYM)


@pytest.mark.parametrize("sym", ["sym", "nonsym"])
def test_super_enumeration_matches_direct_search_rank3(sym):
    via_h = keys(enumerate_super_almost_affine(EnumerationOptions(3, super=True, sym=sym)))
    direct = keys(direct_super_search(3, sym=sym))
    assert via_h == direct


def test_larger_entry_bound_finds_nothing_new():
    assert max_entry_is_lossless(4) and not max_entry_is_lossless(3)
    base = keys(enumerate_hyperbolic(EnumerationOptions(3)))
    wider = keys(enumerate_hyperbolic(EnumerationOptions(3, max_abs_offdiag=6)))
    assert base == wider
    narrower = keys(enumerate_hyperbolic(EnumerationOptions(3, max_abs_offdiag=3)))
    assert set(narrower) < set(base)


def test_output_independent_of_jobs():
    one = enumerate_hyperbolic(EnumerationOptions(5, jobs=1))
    two = enumerate_hyperbolic(EnumerationOptions(5, jobs=2))
    assert keys(one) == keys(two)
    assert [M.to_json() for M in one] == [M.to_json() for M in two]


def test_pairing_report_small():
    rep = pairing_report([3], SymFilter.SYM)
    h113 = canonical_form(validate(H3_113))[0].key()
    mult = {p.h.key(): p.multiplicity for p in rep.pairs}
    assert mult[h113] == 5
    for p in rep.pairs:
        assert p.multiplicity == find_superizations(p.h).multiplicity
    assert rep.super_total == sum(c.super_classes for c in rep.per_rank.values())
    out = rep.to_json()
    assert set(out) == {"sym", "max_abs_offdiag", "per_rank", "totals", "pairs"}
