"""Billiard-wall geometry of symmetrizable matrices.

The walls of the billiard table are the hyperplanes orthogonal to the simple
roots in the Lorentzian root space.  Their mutual angles are encoded by the
signed squared cosines, which do not depend on the choice of symmetrizer and
do not change when a root is replaced by twice itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .equivalence import Permutation
from .matrix_core import CartanError, CartanMatrix, Parity, symmetrize, symmetrizer
from .supermap import verify_pair

DEFAULT_TOLERANCE = 1e-12

RationalMatrix = tuple[tuple[Fraction, ...], ...]


class NotSymmetrizable(CartanError):
    pass


class NotLorentzian(CartanError):
    pass


class PairMismatch(CartanError):
    pass


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def cos2_matrix(M: CartanMatrix) -> RationalMatrix:
    """sign(A_ij)·A_ij·A_ji / (A_ii·A_jj) off the diagonal, 1 on it.

    Defined only for nonzero diagonals, i.e. no isotropic indices.
    """
    A = M.entries
    if any(p is Parity.ISOTROPIC for p in M.parity):
        raise CartanError("squared cosines need a nonzero diagonal")
    return tuple(
        tuple(
            Fraction(1) if i == j else Fraction(_sign(A[i][j]) * A[i][j] * A[j][i], A[i][i] * A[j][j])
            for j in range(M.n)
        )
        for i in range(M.n)
    )


def cos2_from_gram(B: RationalMatrix) -> RationalMatrix:
    n = len(B)
    return tuple(
        tuple(Fraction(_sign(B[i][j]) * B[i][j] ** 2) / (B[i][i] * B[j][j]) for j in range(n))
        for i in range(n)
    )


def congruence_diagonalize(B: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact P, D with P·B·Pᵀ = diag(D) for symmetric rational B.

    Symmetric Gaussian elimination; a zero pivot is repaired by swapping in a
    later nonzero diagonal, or failing that by adding a row/column that has a
    nonzero entry against the pivot.
    """
    n = len(B)
    a = [[Fraction(x) for x in row] for row in B]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def add(src, dst, f):  # row/col dst += f * row/col src, on both a and P
        for c in range(n):
            a[dst][c] += f * a[src][c]
        for r in range(n):
            a[r][dst] += f * a[r][src]
        for c in range(n):
            P[dst][c] += f * P[src][c]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        P[i], P[j] = P[j], P[i]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                add(j, k, Fraction(1))  # new pivot 2·a[k][j] ≠ 0
        piv = a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                add(k, i, -a[i][k] / piv)
    return P, [a[i][i] for i in range(n)]


def inertia(B: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by exact congruence."""
    _, D = congruence_diagonalize(B)
    return (sum(d > 0 for d in D), sum(d < 0 for d in D), sum(d == 0 for d in D))


@dataclass(frozen=True)
class GramData:
    d: tuple[Fraction, ...]
    B: RationalMatrix
    cos2: RationalMatrix
    signature: tuple[int, int, int]

    @property
    def is_lorentzian(self) -> bool:
        n = len(self.d)
        return self.signature == (n - 1, 1, 0)

    def to_json(self) -> dict:
        return {
            "d": [str(x) for x in self.d],
            "B": [[str(x) for x in row] for row in self.B],
            "cos2": [[str(x) for x in row] for row in self.cos2],
            "signature": list(self.signature),
        }


def gram_data(M: CartanMatrix) -> GramData:
    d = symmetrizer(M)
    if d is None:
        raise NotSymmetrizable(f"{M.name or 'matrix'} is not symmetrizable")
    B = symmetrize(M)
    return GramData(d, B, cos2_matrix(M), inertia(B))


def signature(M: CartanMatrix) -> tuple[int, int, int]:
    return gram_data(M).signature


def billiard_compare(S: CartanMatrix, H: CartanMatrix, sigma: Optional[Permutation] = None) -> bool:
    """Whether the walls of S and H coincide under σ (same cosines and signature)."""
    if sigma is None:
        sigma = Permutation.identity(S.n)
    if not verify_pair(S, H, sigma):
        raise PairMismatch("H is not the desuperization of S under the given permutation")
    gs, gh = gram_data(S), gram_data(H)
    s = sigma.image
    same_angles = all(gh.cos2[s[i]][s[j]] == gs.cos2[i][j] for i in range(S.n) for j in range(S.n))
    return same_angles and gs.signature == gh.signature


def doubled_walls(S: CartanMatrix) -> list[int]:
    """Indices whose wall also carries the root 2α (the odd non-isotropic ones)."""
    return [i for i, p in enumerate(S.parity) if p is Parity.ODD]


@dataclass(frozen=True)
class WallEmbedding:
    vectors: tuple[tuple[float, ...], ...]
    tolerance: float

    def gram(self) -> list[list[float]]:
        return [[minkowski(u, v) for v in self.vectors] for u in self.vectors]

    def max_error(self, B: Sequence[Sequence]) -> float:
        G = self.gram()
        return max(abs(G[i][j] - float(B[i][j])) for i in range(len(B)) for j in range(len(B)))

    def to_json(self) -> dict:
        return {"vectors": [list(v) for v in self.vectors], "tolerance": self.tolerance}


def minkowski(u: Sequence[float], v: Sequence[float]) -> float:
    """Metric diag(+, ..., +, -)."""
    return math.fsum(u[k] * v[k] for k in range(len(u) - 1)) - u[-1] * v[-1]


def _invert(P: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(P)
    aug = [list(P[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        r = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[r] = aug[r], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def lorentz_embedding(B: Sequence[Sequence], tolerance: float = DEFAULT_TOLERANCE) -> WallEmbedding:
    """Vectors in R^{n-1,1} whose Minkowski Gram matrix is B.

    From P·B·Pᵀ = D: B = Q·D·Qᵀ with Q = P⁻¹, so the i-th vector has
    components Q[i][k]·sqrt|D_k|, with the negative direction moved last.
    Everything is exact until the square roots.
    """
    n = len(B)
    P, D = congruence_diagonalize(B)
    pos = [k for k in range(n) if D[k] > 0]
    neg = [k for k in range(n) if D[k] < 0]
    if len(pos) != n - 1 or len(neg) != 1:
        raise NotLorentzian(
            f"signature ({len(pos)}, {len(neg)}, {n - len(pos) - len(neg)}) is not ({n - 1}, 1, 0)"
        )
    Q = _invert(P)
    order = pos + neg
    scale = [math.sqrt(abs(D[k])) for k in order]
    vectors = tuple(
        tuple(float(Q[i][k]) * s for k, s in zip(order, scale)) for i in range(n)
    )
    emb = WallEmbedding(vectors, tolerance)
    err = emb.max_error(B)
    if err >= tolerance:
        raise ArithmeticError(f"embedding Gram error {err:.3g} exceeds tolerance {tolerance:g}")
    return emb
