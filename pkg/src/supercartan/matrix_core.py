"""Exact (super) Cartan matrices: validation, structure, symmetrizers.

Matrices are immutable and carry one parity label per index.  Indices are
0-based inside the library; the JSON format and permutations exposed to
users are 1-based.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class CartanError(ValueError):
    """Base class for invalid-input errors raised by the library."""


class NonSquare(CartanError):
    pass


class DiagonalOutOfRange(CartanError):
    pass


class PositiveOffDiagonal(CartanError):
    pass


class ZeroPatternAsymmetric(CartanError):
    pass


class ParityMismatch(CartanError):
    pass


class RankTooSmall(CartanError):
    pass


class EmptySet(CartanError):
    pass


class Parity(enum.Enum):
    EVEN = "e"
    ODD = "o"  # odd, non-isotropic (diagonal 1)
    ISOTROPIC = "i"  # odd, isotropic (diagonal 0)

    @property
    def diagonal(self) -> int:
        return _PARITY_DIAGONAL[self]

    @classmethod
    def from_diagonal(cls, value: int) -> "Parity":
        try:
            return _DIAGONAL_PARITY[value]
        except KeyError:
            raise DiagonalOutOfRange(f"diagonal entry {value} not in {{0, 1, 2}}") from None


_PARITY_DIAGONAL = {Parity.EVEN: 2, Parity.ODD: 1, Parity.ISOTROPIC: 0}
_DIAGONAL_PARITY = {v: k for k, v in _PARITY_DIAGONAL.items()}


@dataclass(frozen=True)
class CartanMatrix:
    """A normalized Cartan matrix with a parity label per index.

    Construct through :func:`validate`; the constructor itself does not check
    the invariants.
    """

    entries: tuple[tuple[int, ...], ...]
    parity: tuple[Parity, ...]
    name: Optional[str] = None

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    @property
    def parity_string(self) -> str:
        return "".join(p.value for p in self.parity)

    @property
    def is_even(self) -> bool:
        return all(p is Parity.EVEN for p in self.parity)

    @property
    def odd_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parity) if p is not Parity.EVEN)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def key(self) -> tuple:
        """Hashable identity ignoring the name."""
        return (self.parity_string, self.entries)

    def same_matrix(self, other: "CartanMatrix") -> bool:
        return self.key() == other.key()

    def with_name(self, name: Optional[str]) -> "CartanMatrix":
        return CartanMatrix(self.entries, self.parity, name)

    def to_json(self) -> dict:
        obj: dict = {}
        if self.name is not None:
            obj["name"] = self.name
        obj["parity"] = self.parity_string
        obj["rows"] = self.rows()
        return obj

    def __str__(self) -> str:
        width = max(len(str(x)) for row in self.entries for x in row)
        lines = [" ".join(str(x).rjust(width) for x in row) for row in self.entries]
        head = f"{self.name or 'matrix'} (parity {self.parity_string})"
        return "\n".join([head] + lines)


def validate(raw: Sequence[Sequence[int]], parity=None, name: Optional[str] = None) -> CartanMatrix:
    """Check a raw integer matrix and return it as a :class:`CartanMatrix`.

    ``parity`` may be omitted (inferred from the diagonal), a string over
    ``e/o/i`` or a sequence of :class:`Parity`.
    """
    rows = [list(r) for r in raw]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NonSquare(f"matrix is not square: row lengths {[len(r) for r in rows]}")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or int(x) != x:
                raise CartanError(f"entry {x!r} is not an integer")
    rows = [[int(x) for x in r] for r in rows]

    diag_parity = tuple(Parity.from_diagonal(rows[i][i]) for i in range(n))
    if parity is None:
        par = diag_parity
    else:
        par = _coerce_parity(parity)
        if len(par) != n:
            raise ParityMismatch(f"parity has length {len(par)}, matrix has rank {n}")
        for i, (p, q) in enumerate(zip(par, diag_parity)):
            if p is not q:
                raise ParityMismatch(
                    f"index {i + 1}: parity {p.value!r} needs diagonal {p.diagonal}, got {rows[i][i]}"
                )

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise PositiveOffDiagonal(f"entry ({i + 1},{j + 1}) = {rows[i][j]} is positive")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise ZeroPatternAsymmetric(
                    f"entries ({i + 1},{j + 1}) = {rows[i][j]} and ({j + 1},{i + 1}) = {rows[j][i]}"
                )
    return CartanMatrix(tuple(tuple(r) for r in rows), par, name)


def _coerce_parity(parity) -> tuple[Parity, ...]:
    if isinstance(parity, str):
        try:
            return tuple(Parity(c) for c in parity)
        except ValueError:
            raise ParityMismatch(f"parity string {parity!r} must use only e, o, i") from None
    return tuple(p if isinstance(p, Parity) else Parity(p) for p in parity)


def from_json(obj: dict) -> CartanMatrix:
    if not isinstance(obj, dict) or "rows" not in obj:
        raise CartanError("matrix object needs a 'rows' field")
    return validate(obj["rows"], obj.get("parity"), obj.get("name"))


def _adjacency(M: CartanMatrix) -> list[list[int]]:
    return [[j for j in range(M.n) if j != i and M.entries[i][j] != 0] for i in range(M.n)]


def components(M: CartanMatrix) -> list[list[int]]:
    """Connected components of the nonzero pattern, 0-based, sorted by smallest member."""
    adj = _adjacency(M)
    seen = [False] * M.n
    out = []
    for start in range(M.n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_indecomposable(M: CartanMatrix) -> bool:
    return len(components(M)) == 1


def principal_submatrix(M: CartanMatrix, indices: Iterable[int]) -> CartanMatrix:
    """Restriction to ``indices`` (0-based), kept in increasing order."""
    idx = sorted(set(indices))
    if not idx:
        raise EmptySet("principal submatrix of an empty index set")
    if idx[0] < 0 or idx[-1] >= M.n:
        raise IndexError(f"indices {idx} out of range for rank {M.n}")
    entries = tuple(tuple(M.entries[i][j] for j in idx) for i in idx)
    return CartanMatrix(entries, tuple(M.parity[i] for i in idx))


def main_submatrix(M: CartanMatrix, i: int) -> CartanMatrix:
    """Strike row ``i`` and column ``i`` (0-based)."""
    if M.n < 2:
        raise RankTooSmall("cannot strike an index from a rank-1 matrix")
    if not 0 <= i < M.n:
        raise IndexError(f"index {i} out of range for rank {M.n}")
    return principal_submatrix(M, [k for k in range(M.n) if k != i])


def symmetrizer(M: CartanMatrix) -> Optional[tuple[Fraction, ...]]:
    """Positive d with d_i A_ij = d_j A_ji, or None if A is not symmetrizable.

    The smallest index of each component gets d = 1.  Values are spread along
    a BFS tree and every remaining edge is then checked.
    """
    A = M.entries
    d: list[Optional[Fraction]] = [None] * M.n
    adj = _adjacency(M)
    for comp in components(M):
        root = comp[0]
        d[root] = Fraction(1)
        queue = [root]
        for v in queue:
            for w in adj[v]:
                if d[w] is None:
                    d[w] = d[v] * Fraction(A[v][w], A[w][v])
                    queue.append(w)
    for i in range(M.n):
        for j in adj[i]:
            if d[i] * A[i][j] != d[j] * A[j][i]:
                return None
    return tuple(d)  # type: ignore[arg-type]


def is_symmetrizable(M: CartanMatrix) -> bool:
    return symmetrizer(M) is not None


def symmetrize(M: CartanMatrix) -> Optional[tuple[tuple[Fraction, ...], ...]]:
    """``diag(d) A`` as exact rationals, or None when no symmetrizer exists."""
    d = symmetrizer(M)
    if d is None:
        return None
    return tuple(tuple(d[i] * x for x in row) for i, row in enumerate(M.entries))


def block_diagonal(*blocks: CartanMatrix) -> CartanMatrix:
    n = sum(b.n for b in blocks)
    rows = [[0] * n for _ in range(n)]
    parity: list[Parity] = []
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b.entries[i][j]
        parity.extend(b.parity)
        off += b.n
    return CartanMatrix(tuple(tuple(r) for r in rows), tuple(parity))


def permute(M: CartanMatrix, image: Sequence[int]) -> CartanMatrix:
    """Matrix C with C[image[i]][image[j]] = M[i][j] (0-based image)."""
    n = M.n
    rows = [[0] * n for _ in range(n)]
    parity: list[Optional[Parity]] = [None] * n
    for i in range(n):
        parity[image[i]] = M.parity[i]
        for j in range(n):
            rows[image[i]][image[j]] = M.entries[i][j]
    return CartanMatrix(tuple(tuple(r) for r in rows), tuple(parity), M.name)  # type: ignore[arg-type]
