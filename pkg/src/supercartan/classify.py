"""Finite / affine / indefinite type and the almost-affine (hyperbolic) test."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .matrix_core import (
    CartanError,
    CartanMatrix,
    Parity,
    components,
    main_submatrix,
)


class NotEven(CartanError):
    pass


class Decomposable(CartanError):
    pass


class IsotropicUnsupported(CartanError):
    pass


class Kind(enum.Enum):
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"
    ALMOST_AFFINE = "almost_affine"
    OTHER_INDEFINITE = "other_indefinite"


_SEVERITY = {Kind.FINITE: 0, Kind.AFFINE: 1, Kind.INDEFINITE: 2}


@dataclass(frozen=True)
class TypeVerdict:
    kind: Kind
    components: tuple[tuple[tuple[int, ...], Kind], ...]

    @property
    def component_kinds(self) -> list[Kind]:
        return [k for _, k in self.components]

    def all_finite_or_affine(self) -> bool:
        return all(k in (Kind.FINITE, Kind.AFFINE) for k in self.component_kinds)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "components": [
                {"indices": [i + 1 for i in idx], "kind": k.value} for idx, k in self.components
            ],
        }


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _components_of(entries: tuple[tuple[int, ...], ...]) -> list[list[int]]:
    n = len(entries)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if not seen[w] and entries[v][w] != 0:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _restrict(entries, idx):
    return tuple(tuple(entries[i][j] for j in idx) for i in idx)


@lru_cache(maxsize=None)
def _minors_positive(entries: tuple[tuple[int, ...], ...]) -> bool:
    # Every principal minor > 0.  For a block-diagonal matrix the principal
    # minors are products of the blocks' minors, so blocks are tested
    # separately; a connected block needs det > 0 plus the same property for
    # every main submatrix.
    comps = _components_of(entries)
    if len(comps) > 1:
        return all(_minors_positive(_restrict(entries, c)) for c in comps)
    n = len(entries)
    if n == 1:
        return entries[0][0] > 0
    if determinant(entries) <= 0:
        return False
    return all(_proper_minors_positive_drop(entries, i) for i in range(n))


def _proper_minors_positive_drop(entries, i):
    idx = [k for k in range(len(entries)) if k != i]
    return _minors_positive(_restrict(entries, idx))


@lru_cache(maxsize=None)
def _trichotomy(entries: tuple[tuple[int, ...], ...]) -> Kind:
    n = len(entries)
    proper = n == 1 or all(_proper_minors_positive_drop(entries, i) for i in range(n))
    if proper:
        det = determinant(entries)
        if det > 0:
            return Kind.FINITE
        if det == 0:
            return Kind.AFFINE
    return Kind.INDEFINITE


def _require_even(M: CartanMatrix) -> None:
    if not M.is_even:
        raise NotEven(f"parity {M.parity_string} has non-even indices")


def trichotomy(M: CartanMatrix) -> Kind:
    """Finite, Affine or Indefinite for an indecomposable even matrix (principal minors)."""
    _require_even(M)
    if len(components(M)) != 1:
        raise Decomposable("trichotomy needs an indecomposable matrix")
    return _trichotomy(M.entries)


def _component_verdicts(entries) -> tuple[tuple[tuple[int, ...], Kind], ...]:
    return tuple(
        (tuple(c), _trichotomy(_restrict(entries, c))) for c in _components_of(entries)
    )


@lru_cache(maxsize=None)
def _type_of_entries(entries: tuple[tuple[int, ...], ...]) -> TypeVerdict:
    comps = _component_verdicts(entries)
    if len(comps) > 1:
        worst = max((k for _, k in comps), key=_SEVERITY.__getitem__)
        kind = Kind.OTHER_INDEFINITE if worst is Kind.INDEFINITE else worst
        return TypeVerdict(kind, comps)
    kind = comps[0][1]
    if kind is Kind.INDEFINITE:
        n = len(entries)
        ok = n > 1 and all(
            k in (Kind.FINITE, Kind.AFFINE)
            for i in range(n)
            for _, k in _component_verdicts(_restrict(entries, [x for x in range(n) if x != i]))
        )
        kind = Kind.ALMOST_AFFINE if ok else Kind.OTHER_INDEFINITE
    return TypeVerdict(kind, comps)


def type_of(M: CartanMatrix) -> TypeVerdict:
    """Classify an even matrix; indefinite indecomposable ones are split into
    almost affine (every main submatrix is a sum of finite/affine pieces) and
    the rest."""
    _require_even(M)
    return _type_of_entries(M.entries)


def is_almost_affine(M: CartanMatrix) -> bool:
    return type_of(M).kind is Kind.ALMOST_AFFINE


def double_odd_rows(M: CartanMatrix) -> CartanMatrix:
    """Double every diagonal-1 row and relabel everything even (no checks)."""
    if any(p is Parity.ISOTROPIC for p in M.parity):
        raise IsotropicUnsupported("isotropic odd indices (diagonal 0) are not supported")
    rows = tuple(
        tuple(2 * x for x in row) if M.parity[i] is Parity.ODD else row
        for i, row in enumerate(M.entries)
    )
    return CartanMatrix(rows, (Parity.EVEN,) * M.n)


def classify_super(S: CartanMatrix) -> TypeVerdict:
    """Type of a super matrix, read off from its desuperization."""
    return type_of(double_odd_rows(S))


def is_finite_or_affine_sum(M: CartanMatrix) -> bool:
    """True if every component of the (possibly super) matrix is finite or affine."""
    return classify_super(M).all_finite_or_affine()


def main_submatrix_kinds(M: CartanMatrix) -> list[TypeVerdict]:
    return [classify_super(main_submatrix(M, i)) for i in range(M.n)]


# -- independent oracle ------------------------------------------------------


def _feasible(rows: list[list[Fraction]], ops: list[str], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Exact phase-one simplex: a point x >= 0 with rows[k]·x (op) rhs[k], or None.

    ``ops`` entries are "<=", ">=" or "=".  Bland's rule, so it terminates.
    """
    m = len(rows)
    nv = len(rows[0]) if rows else 0
    rows = [list(r) for r in rows]
    rhs = list(rhs)
    ops = list(ops)
    for k in range(m):
        if rhs[k] < 0:
            rows[k] = [-x for x in rows[k]]
            rhs[k] = -rhs[k]
            ops[k] = {"<=": ">=", ">=": "<=", "=": "="}[ops[k]]
    n_slack = sum(1 for o in ops if o != "=")
    n_art = sum(1 for o in ops if o != "<=")
    width = nv + n_slack + n_art
    tab = []
    basis = []
    s_col, a_col = nv, nv + n_slack
    art_cols = []
    for k in range(m):
        row = [Fraction(0)] * (width + 1)
        row[:nv] = rows[k]
        row[-1] = Fraction(rhs[k])
        if ops[k] == "<=":
            row[s_col] = Fraction(1)
            basis.append(s_col)
            s_col += 1
        else:
            if ops[k] == ">=":
                row[s_col] = Fraction(-1)
                s_col += 1
            row[a_col] = Fraction(1)
            basis.append(a_col)
            art_cols.append(a_col)
            a_col += 1
        tab.append(row)
    # objective: minimize sum of artificials -> reduced costs row
    obj = [Fraction(0)] * (width + 1)
    for k in range(m):
        if basis[k] in art_cols:
            obj = [o - t for o, t in zip(obj, tab[k])]
    for c in art_cols:
        obj[c] += 1
    while True:
        enter = next((c for c in range(width) if obj[c] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for k in range(m):
            if tab[k][enter] > 0:
                ratio = tab[k][-1] / tab[k][enter]
                if best is None or ratio < best or (ratio == best and basis[k] < basis[leave]):
                    best, leave = ratio, k
        if leave is None:  # unbounded cannot happen for phase one
            break
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for k in range(m):
            if k != leave and tab[k][enter] != 0:
                f = tab[k][enter]
                tab[k] = [a - f * b for a, b in zip(tab[k], tab[leave])]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, tab[leave])]
        basis[leave] = enter
    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * width
    for k, b in enumerate(basis):
        x[b] = tab[k][-1]
    return x[:nv]


def trichotomy_oracle(M: CartanMatrix) -> tuple[Kind, Optional[tuple[Fraction, ...]]]:
    """Classify via positive vectors: u > 0 with Au > 0 (finite) or Au = 0 (affine).

    Works with u = 1 + x, x >= 0 (positivity is scale invariant, so
    ``u >= 1`` and ``Au >= 1`` lose nothing).  Returns the kind and a witness u
    for the finite and affine cases.
    """
    _require_even(M)
    if len(components(M)) != 1:
        raise Decomposable("trichotomy needs an indecomposable matrix")
    A = [[Fraction(x) for x in row] for row in M.entries]
    n = M.n
    a1 = [sum(row) for row in A]
    x = _feasible(A, [">="] * n, [1 - a1[i] for i in range(n)])
    if x is not None:
        return Kind.FINITE, tuple(1 + xi for xi in x)
    x = _feasible(A, ["="] * n, [-a1[i] for i in range(n)])
    if x is not None:
        return Kind.AFFINE, tuple(1 + xi for xi in x)
    return Kind.INDEFINITE, None


def indefinite_witness(M: CartanMatrix) -> Optional[tuple[Fraction, ...]]:
    """u > 0 with Au < 0 componentwise, if one exists."""
    A = [[Fraction(x) for x in row] for row in M.entries]
    a1 = [sum(row) for row in A]
    x = _feasible(A, ["<="] * M.n, [-1 - a for a in a1])
    return None if x is None else tuple(1 + xi for xi in x)


def clear_caches() -> None:
    for f in (_minors_positive, _trichotomy, _type_of_entries):
        f.cache_clear()

