"""Desuperization (double the diagonal-1 rows) and the inverse superization search."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .classify import IsotropicUnsupported, Kind, NotEven, classify_super, double_odd_rows, type_of
from .equivalence import Permutation, canonical_form, maps_onto, sort_key
from .matrix_core import CartanError, CartanMatrix, Parity, validate


class NoOddIndex(CartanError):
    pass


class SizeMismatch(CartanError):
    pass


class NotAlmostAffine(CartanError):
    pass


def desuperize(S: CartanMatrix) -> CartanMatrix:
    if any(p is Parity.ISOTROPIC for p in S.parity):
        raise IsotropicUnsupported("isotropic odd indices (diagonal 0) are not supported")
    if not S.odd_indices:
        raise NoOddIndex("matrix has no odd index to desuperize")
    return double_odd_rows(S)


def verify_pair(S: CartanMatrix, H: CartanMatrix, sigma: Optional[Permutation] = None) -> bool:
    """True iff H[σ(i)][σ(j)] equals desuperize(S)[i][j]; σ defaults to the identity."""
    if S.n != H.n:
        raise SizeMismatch(f"ranks differ: {S.n} vs {H.n}")
    if sigma is None:
        sigma = Permutation.identity(S.n)
    if sigma.n != S.n:
        raise SizeMismatch(f"permutation of size {sigma.n} for rank {S.n}")
    return maps_onto(desuperize(S), H, sigma)


def halve_rows(H: CartanMatrix, rows) -> CartanMatrix:
    rows = set(rows)
    out = []
    for i, row in enumerate(H.entries):
        if i in rows:
            if any(x % 2 for x in row):
                raise CartanError(f"row {i + 1} has odd entries and cannot be halved")
            out.append([x // 2 for x in row])
        else:
            out.append(list(row))
    return validate(out)


def halvable_rows(H: CartanMatrix) -> list[int]:
    return [i for i, row in enumerate(H.entries) if all(x % 2 == 0 for x in row)]


@dataclass(frozen=True)
class SuperizationReport:
    h: CartanMatrix
    superizations: tuple[CartanMatrix, ...] = field(default_factory=tuple)

    @property
    def multiplicity(self) -> int:
        return len(self.superizations)

    def to_json(self) -> dict:
        return {
            "h": self.h.to_json(),
            "multiplicity": self.multiplicity,
            "superizations": [s.to_json() for s in self.superizations],
        }


def find_superizations(H: CartanMatrix, relax: bool = False) -> SuperizationReport:
    """All superizations of H with non-isotropic odd roots, up to equivalence.

    Any such S is recovered from H (or a relabeling of it) by halving some
    nonempty set of all-even rows, and relabeling H only relabels the subset,
    so subsets of H's own rows cover every class.
    """
    if not H.is_even:
        raise NotEven(f"parity {H.parity_string} has non-even indices")
    if not relax and type_of(H).kind is not Kind.ALMOST_AFFINE:
        raise NotAlmostAffine("H is not almost affine (pass relax=True to explore anyway)")
    cands = halvable_rows(H)
    found: dict[tuple, CartanMatrix] = {}
    for r in range(1, len(cands) + 1):
        for subset in combinations(cands, r):
            S = halve_rows(H, subset)
            if classify_super(S).kind is not Kind.ALMOST_AFFINE and not relax:
                continue
            C, _ = canonical_form(S)
            found.setdefault(C.key(), C)
    sups = tuple(sorted(found.values(), key=sort_key))
    return SuperizationReport(H, sups)
