import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supercartan.equivalence import (
    Permutation,
    are_equivalent,
    brute_force_equivalent,
    canonical_form,
    maps_onto,
)
from supercartan.matrix_core import CartanError, permute, validate

from conftest import S3_4, random_super


def test_canonical_form_is_idempotent():
    C, _ = canonical_form(validate(S3_4))
    C2, sigma = canonical_form(C)
    assert C2 == C
    assert sigma.is_identity()


def test_swap_gives_same_canonical_form():
    a = canonical_form(validate([[2, -1], [-2, 2]]))[0]
    b = canonical_form(validate([[2, -2], [-1, 2]]))[0]
    assert a == b


def test_halved_h3_4_matches_s3_4():
    M = validate([[2, -2, -1], [-2, 2, -1], [-1, -1, 1]])
    assert canonical_form(M)[0] == canonical_form(validate(S3_4))[0]
    sigma = are_equivalent(validate(S3_4), M)
    assert sigma.one_based() == [1, 3, 2]


def test_canonical_witness_substitutes():
    M = validate(S3_4)
    C, sigma = canonical_form(M)
    assert maps_onto(M, C, sigma)


def test_are_equivalent_examples():
    M = validate(S3_4)
    assert are_equivalent(M, M).is_identity()
    assert are_equivalent(validate([[2, -1], [-1, 2]]), validate([[2, -2], [-2, 2]])) is None
    assert are_equivalent(validate([[2]]), validate([[2, -1], [-1, 2]])) is None


def test_parity_is_respected():
    # same entries up to the diagonal would need an even index to go to an odd one
    a = validate([[2, -1], [-1, 1]])
    b = validate([[1, -1], [-1, 2]])
    sigma = are_equivalent(a, b)
    assert sigma.one_based() == [2, 1]
    assert are_equivalent(a, validate([[2, -1], [-1, 2]])) is None


def test_permutation_helpers():
    p = Permutation.from_one_based([2, 3, 1])
    assert p.image == (1, 2, 0)
    assert p.inverse().one_based() == [3, 1, 2]
    assert p.then(p.inverse()).is_identity()
    with pytest.raises(CartanError):
        Permutation((0, 0))


def _random_perm(rng, n):
    image = list(range(n))
    rng.shuffle(image)
    return Permutation(tuple(image))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 7))
def test_canonical_form_constant_on_orbits(seed, n):
    rng = random.Random(seed)
    M = random_super(rng, n, edge_p=0.6)
    pi = _random_perm(rng, n)
    N = permute(M, pi.image)
    assert canonical_form(M)[0] == canonical_form(N)[0]
    sigma = are_equivalent(M, N)
    assert sigma is not None and maps_onto(M, N, sigma)


def test_brute_force_agrees_small_rank():
    rng = random.Random(5)
    for _ in range(1500):
        n = rng.randint(1, 4)
        M1 = random_super(rng, n, edge_p=0.6, max_entry=2)
        if rng.random() < 0.5:
            M2 = permute(random_super(rng, n, edge_p=0.6, max_entry=2), _random_perm(rng, n).image)
        else:
            M2 = permute(M1, _random_perm(rng, n).image)
        got = are_equivalent(M1, M2)
        want = brute_force_equivalent(M1, M2)
        assert (got is None) == (want is None)
        if got is not None:
            assert maps_onto(M1, M2, got)


def test_highly_symmetric_rank_ten():
    # all off-diagonal entries equal: every permutation is an automorphism
    rows = [[2 if i == j else -1 for j in range(10)] for i in range(10)]
    M = validate(rows)
    C, sigma = canonical_form(M)
    assert C.entries == M.entries
