"""Canonical forms of parity-labeled Cartan matrices under simultaneous
row/column permutation, and equivalence witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

from .matrix_core import CartanError, CartanMatrix, Parity, permute

_PARITY_ORDER = {Parity.EVEN: 0, Parity.ODD: 1, Parity.ISOTROPIC: 2}


@dataclass(frozen=True)
class Permutation:
    """Bijection on 0..n-1; ``image[i]`` is where index i goes."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise CartanError(f"not a permutation: {[i + 1 for i in self.image]}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, seq: Sequence[int]) -> "Permutation":
        return cls(tuple(int(x) - 1 for x in seq))

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.image]

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.image):
            inv[x] = i
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other."""
        return Permutation(tuple(other.image[x] for x in self.image))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))


def maps_onto(M1: CartanMatrix, M2: CartanMatrix, sigma: Permutation) -> bool:
    """Direct substitution check: M2[σ(i)][σ(j)] = M1[i][j] with parities carried along."""
    if M1.n != M2.n or sigma.n != M1.n:
        return False
    s = sigma.image
    return all(M2.parity[s[i]] is M1.parity[i] for i in range(M1.n)) and all(
        M2.entries[s[i]][s[j]] == M1.entries[i][j] for i in range(M1.n) for j in range(M1.n)
    )


def _refined_colors(M: CartanMatrix) -> list[int]:
    # Colour refinement; colours are ranks of sorted signatures, so they do not
    # depend on how the input happens to be labeled.
    A = M.entries
    n = M.n
    colors = [(_PARITY_ORDER[M.parity[i]], A[i][i]) for i in range(n)]
    ranked = _rank(colors)
    while True:
        sigs = [
            (
                ranked[i],
                tuple(sorted((ranked[j], A[i][j], A[j][i]) for j in range(n) if j != i and A[i][j])),
            )
            for i in range(n)
        ]
        new = _rank(sigs)
        if len(set(new)) == len(set(ranked)):
            return new
        ranked = new


def _rank(values: list) -> list[int]:
    order = {v: k for k, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def _twins(M: CartanMatrix) -> list[int]:
    """For each vertex, the smallest vertex it can be swapped with as an automorphism."""
    A = M.entries
    n = M.n
    rep = list(range(n))
    for v in range(n):
        for u in range(v):
            if rep[u] != u:
                continue
            if (
                M.parity[u] is M.parity[v]
                and A[u][u] == A[v][v]
                and A[u][v] == A[v][u]
                and all(A[u][w] == A[v][w] and A[w][u] == A[w][v] for w in range(n) if w != u and w != v)
            ):
                rep[v] = u
                break
    return rep


def canonical_form(M: CartanMatrix) -> tuple[CartanMatrix, Permutation]:
    """Return ``(C, σ)`` with ``C[σ(i)][σ(j)] = M[i][j]``.

    Vertices are first split into refined colour classes (parity first), which
    fix the blocks of positions each class may occupy.  Within that, C is the
    least matrix in the order that reads entries block by block:
    C[0][0], then C[0][1], C[1][0], C[1][1], then C[0][2], C[2][0], ... so a
    partial placement already determines a prefix of the key.  Of several
    unplaced twins (indices whose swap is an automorphism) only the first is
    tried, since the others lead to the same matrix.
    """
    n = M.n
    A = M.entries
    colors = _refined_colors(M)
    slot_color = sorted(colors)
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)

    twin = _twins(M)

    partial: list[tuple[int, ...]] = [()]
    for p in range(n):
        want = slot_color[p]
        best_key = None
        survivors: list[tuple[int, ...]] = []
        for placed in partial:
            used = set(placed)
            tried_twins = set()
            for v in by_color[want]:
                if v in used or twin[v] in tried_twins:
                    continue
                tried_twins.add(twin[v])
                key = []
                for u in placed:
                    key.append(A[u][v])
                    key.append(A[v][u])
                key.append(A[v][v])
                key = tuple(key)
                if best_key is None or key < best_key:
                    best_key, survivors = key, [placed + (v,)]
                elif key == best_key:
                    survivors.append(placed + (v,))
        partial = survivors

    order = partial[0]  # order[position] = original vertex
    image = [0] * n
    for pos, v in enumerate(order):
        image[v] = pos
    sigma = Permutation(tuple(image))
    C = permute(M, sigma.image)
    return C.with_name(None), sigma


def canonical_key(M: CartanMatrix) -> tuple:
    return canonical_form(M)[0].key()


def are_equivalent(M1: CartanMatrix, M2: CartanMatrix) -> Optional[Permutation]:
    """σ with M2[σ(i)][σ(j)] = M1[i][j], or None."""
    if M1.n != M2.n:
        return None
    C1, s1 = canonical_form(M1)
    C2, s2 = canonical_form(M2)
    if C1.key() != C2.key():
        return None
    sigma = s1.then(s2.inverse())
    if not maps_onto(M1, M2, sigma):  # pragma: no cover - would be a canonical form bug
        raise AssertionError("canonical forms agree but the witness does not substitute")
    return sigma


def brute_force_equivalent(M1: CartanMatrix, M2: CartanMatrix) -> Optional[Permutation]:
    """Try all n! permutations; for small-rank cross-checks."""
    if M1.n != M2.n:
        return None
    for perm in permutations(range(M1.n)):
        sigma = Permutation(perm)
        if maps_onto(M1, M2, sigma):
            return sigma
    return None


def sort_key(M: CartanMatrix) -> tuple:
    """Deterministic ordering for lists of canonical matrices."""
    return (M.n, M.parity_string, M.entries)
