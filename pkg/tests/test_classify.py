import random
from itertools import combinations, product

import pytest
import sympy

from supercartan.classify import (
    Decomposable,
    IsotropicUnsupported,
    Kind,
    NotEven,
    classify_super,
    determinant,
    indefinite_witness,
    trichotomy,
    trichotomy_oracle,
    type_of,
)
from supercartan.enumeration import connected_finite_affine
from supercartan.matrix_core import block_diagonal, components, main_submatrix, validate

from conftest import H3_4, H3_93, S3_4, random_gcm

OFFDIAG = [(0, 0)] + [(-a, -b) for a in range(1, 5) for b in range(1, 5)]


def all_small_indecomposable():
    yield validate([[2]])
    for a, b in OFFDIAG[1:]:
        yield validate([[2, a], [b, 2]])
    for (a, b), (c, d), (e, f) in product(OFFDIAG, repeat=3):
        M = validate([[2, a, c], [b, 2, e], [d, f, 2]])
        if len(components(M)) == 1:
            yield M


@pytest.mark.parametrize(
    "rows, kind",
    [
        ([[2, -1], [-1, 2]], Kind.FINITE),
        ([[2, -1], [-4, 2]], Kind.AFFINE),
        ([[2, -3], [-3, 2]], Kind.INDEFINITE),
        ([[2]], Kind.FINITE),
        ([[2, -2], [-2, 2]], Kind.AFFINE),
    ],
)
def test_trichotomy_examples(rows, kind):
    assert trichotomy(validate(rows)) is kind


def test_trichotomy_errors():
    with pytest.raises(NotEven):
        trichotomy(validate(S3_4))
    with pytest.raises(Decomposable):
        trichotomy(validate([[2, 0], [0, 2]]))


def test_determinant_against_sympy():
    rng = random.Random(3)
    for _ in range(200):
        M = random_gcm(rng, rng.randint(1, 7), edge_p=0.8)
        assert determinant(M.entries) == sympy.Matrix(M.rows()).det()


def test_trichotomy_is_the_literal_minor_criterion():
    # every principal minor computed by sympy, no shortcuts
    rng = random.Random(11)
    for _ in range(300):
        M = random_gcm(rng, rng.randint(2, 5))
        if len(components(M)) != 1:
            continue
        n = M.n
        minors = {
            S: sympy.Matrix([[M.entries[i][j] for j in S] for i in S]).det()
            for k in range(1, n + 1)
            for S in combinations(range(n), k)
        }
        full = tuple(range(n))
        proper_pos = all(v > 0 for S, v in minors.items() if S != full)
        if proper_pos and minors[full] > 0:
            want = Kind.FINITE
        elif proper_pos and minors[full] == 0:
            want = Kind.AFFINE
        else:
            want = Kind.INDEFINITE
        assert trichotomy(M) is want


def test_type_of_examples():
    assert type_of(validate(H3_93)).kind is Kind.ALMOST_AFFINE
    M = block_diagonal(validate([[2, -1], [-1, 2]]), validate([[2, -2], [-2, 2]]))
    v = type_of(M)
    assert v.component_kinds == [Kind.FINITE, Kind.AFFINE]
    assert v.kind is Kind.AFFINE
    padded = validate([[2, -5, 0], [-5, 2, -1], [0, -1, 2]])
    assert type_of(padded).kind is Kind.OTHER_INDEFINITE
    assert trichotomy(main_submatrix(padded, 2)) is Kind.INDEFINITE
    assert determinant(main_submatrix(padded, 2).entries) == -21


def test_type_of_decomposable_with_indefinite_block():
    M = block_diagonal(validate([[2, -3], [-3, 2]]), validate([[2]]))
    v = type_of(M)
    assert v.kind is Kind.OTHER_INDEFINITE
    assert v.component_kinds == [Kind.INDEFINITE, Kind.FINITE]


def test_type_of_json():
    out = type_of(validate(H3_93)).to_json()
    assert out == {"kind": "almost_affine", "components": [{"indices": [1, 2, 3], "kind": "indefinite"}]}


def test_classify_super_examples():
    assert classify_super(validate(S3_4)).kind is Kind.ALMOST_AFFINE
    assert classify_super(validate([[1]])).kind is Kind.FINITE
    assert classify_super(validate([[1, -1], [-1, 1]])).kind is Kind.AFFINE
    with pytest.raises(IsotropicUnsupported):
        classify_super(validate([[0, -1], [-1, 2]]))


def test_oracle_examples():
    kind, u = trichotomy_oracle(validate([[2, -2], [-2, 2]]))
    assert kind is Kind.AFFINE
    assert u[0] == u[1]
    kind, u = trichotomy_oracle(validate([[2, -1], [-1, 2]]))
    assert kind is Kind.FINITE
    assert trichotomy_oracle(validate(H3_4))[0] is Kind.INDEFINITE


def _check_witness(M, kind, u):
    A = M.entries
    Au = [sum(A[i][j] * u[j] for j in range(M.n)) for i in range(M.n)]
    assert all(x > 0 for x in u)
    if kind is Kind.FINITE:
        assert all(x > 0 for x in Au)
    elif kind is Kind.AFFINE:
        assert all(x == 0 for x in Au)


def test_oracle_agrees_exhaustively_rank_le_3():
    count = 0
    for M in all_small_indecomposable():
        kind, u = trichotomy_oracle(M)
        assert kind is trichotomy(M), M
        if u is not None:
            _check_witness(M, kind, u)
        else:
            # Vinberg: indefinite means some u > 0 has Au < 0
            w = indefinite_witness(M)
            assert w is not None
            assert all(sum(M.entries[i][j] * w[j] for j in range(M.n)) < 0 for i in range(M.n))
        count += 1
    # 1 + 16 rank-2 + 16^3 + 3 * 16^2 connected rank-3 patterns
    assert count == 1 + 16 + 16**3 + 3 * 16**2


def test_main_submatrices_of_finite_and_affine_are_finite():
    for rank in range(2, 7):
        for M in connected_finite_affine(rank):
            for i in range(rank):
                v = type_of(main_submatrix(M, i))
                assert all(k is Kind.FINITE for k in v.component_kinds), M


def test_connected_finite_affine_counts_small():
    # rank 2 with |entries| <= 4: A2, B2, G2 finite; A1^(1), A2^(2) affine
    kinds = sorted(trichotomy(M).value for M in connected_finite_affine(2))
    assert kinds == ["affine", "affine", "finite", "finite", "finite"]
