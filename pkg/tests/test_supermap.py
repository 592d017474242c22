import pytest

from supercartan.classify import IsotropicUnsupported, NotEven
from supercartan.equivalence import Permutation, are_equivalent, canonical_form
from supercartan.matrix_core import main_submatrix, validate
from supercartan.supermap import (
    NoOddIndex,
    NotAlmostAffine,
    SizeMismatch,
    desuperize,
    find_superizations,
    halvable_rows,
    verify_pair,
)

from conftest import H3_4, H3_93, H3_113, S3_4, S3_46


def test_desuperize_examples():
    assert desuperize(validate(S3_4)).entries == ((2, -1, -2), (-2, 2, -2), (-2, -1, 2))
    D = desuperize(validate(S3_46))
    assert D.entries == tuple(map(tuple, H3_93))
    assert D.is_even


def test_desuperize_osp_line():
    # the last line 0 ... 0 -1 1 of osp(1|2n) doubles to the sp(2n) line 0 ... 0 -2 2
    S = validate([[2, -1, 0], [-1, 2, -1], [0, -1, 1]])
    assert desuperize(S).entries[-1] == (0, -2, 2)


def test_desuperize_errors():
    with pytest.raises(NoOddIndex):
        desuperize(validate(H3_93))
    with pytest.raises(IsotropicUnsupported):
        desuperize(validate([[0, -1], [-1, 1]]))


def test_verify_pair_examples():
    s34, h34 = validate(S3_4), validate(H3_4)
    assert verify_pair(s34, h34, Permutation.from_one_based([2, 3, 1]))
    assert verify_pair(validate(S3_46), validate(H3_93))
    assert not verify_pair(s34, h34, Permutation.identity(3))
    with pytest.raises(SizeMismatch):
        verify_pair(s34, validate([[2, -1], [-1, 2]]))


def test_find_superizations_examples():
    assert find_superizations(validate(H3_113)).multiplicity == 5
    assert find_superizations(validate(H3_93)).multiplicity == 3
    rep = find_superizations(validate(H3_4))
    assert halvable_rows(validate(H3_4)) == [2]
    assert rep.multiplicity == 1
    assert are_equivalent(rep.superizations[0], validate(S3_4)) is not None


def test_find_superizations_errors():
    with pytest.raises(NotEven):
        find_superizations(validate(S3_4))
    finite = validate([[2, -1, 0], [-1, 2, -1], [0, -2, 2]])  # C3, finite
    with pytest.raises(NotAlmostAffine):
        find_superizations(finite)
    assert find_superizations(finite, relax=True).multiplicity >= 1


def test_report_json():
    out = find_superizations(validate(H3_93)).to_json()
    assert out["multiplicity"] == 3
    assert len(out["superizations"]) == 3
    assert {s["parity"] for s in out["superizations"]} == {"eeo", "eoo", "ooo"}


def test_desuperize_commutes_with_main_submatrices(sym_catalog, nonsym_catalog):
    for e in sym_catalog + nonsym_catalog:
        S = e.s
        D = desuperize(S)
        for i in range(S.n):
            sub = main_submatrix(S, i)
            lhs = desuperize(sub) if sub.odd_indices else sub
            assert lhs.key() == main_submatrix(D, i).key(), (e.s_name, i)


def test_superization_round_trip(sym_catalog, nonsym_catalog):
    for e in sym_catalog + nonsym_catalog:
        rep = find_superizations(e.h)
        keys = {S.key() for S in rep.superizations}
        assert canonical_form(e.s)[0].key() in keys, e.s_name
        for S in rep.superizations:
            assert S.odd_indices
            assert are_equivalent(desuperize(S), e.h) is not None
        assert not desuperize(e.s).odd_indices
