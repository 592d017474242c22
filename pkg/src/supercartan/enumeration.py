"""Isomorph-rejecting enumeration of hyperbolic and almost affine super matrices.

Every connected almost affine matrix of rank n has a vertex whose removal
leaves it connected (a leaf of a spanning tree), and that main submatrix is
then a connected finite or affine matrix.  So rank-n classes are grown from
the connected finite/affine classes of rank n - 1, which are themselves
grown the same way.  A new vertex is attached one old vertex at a time, and
each partial attachment is pruned as soon as the principal submatrix it
spans stops being a sum of finite/affine pieces.
"""

from __future__ import annotations

import enum
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from multiprocessing import Pool
from typing import Iterable, Iterator, Optional

from .classify import Kind, _component_verdicts, _trichotomy, _type_of_entries, classify_super
from .equivalence import canonical_form, sort_key
from .matrix_core import CartanError, CartanMatrix, Parity, is_symmetrizable, validate
from .supermap import SuperizationReport, desuperize, find_superizations

log = logging.getLogger(__name__)

MIN_RANK, MAX_RANK = 3, 10


class UnsupportedRank(CartanError):
    pass


class SymFilter(str, enum.Enum):
    ALL = "all"
    SYM = "sym"
    NONSYM = "nonsym"

    def accepts(self, M: CartanMatrix) -> bool:
        if self is SymFilter.ALL:
            return True
        return is_symmetrizable(M) == (self is SymFilter.SYM)


@dataclass(frozen=True)
class EnumerationOptions:
    rank: int
    super: bool = False
    sym: SymFilter = SymFilter.ALL
    max_abs_offdiag: int = 4
    jobs: int = 1

    def __post_init__(self):
        if not MIN_RANK <= self.rank <= MAX_RANK:
            raise UnsupportedRank(
                f"rank {self.rank} outside {MIN_RANK}..{MAX_RANK}; rank-2 indefinite matrices "
                "form infinite families and are excluded"
            )
        if self.max_abs_offdiag < 1:
            raise CartanError("max_abs_offdiag must be at least 1")
        object.__setattr__(self, "sym", SymFilter(self.sym))


Entries = tuple[tuple[int, ...], ...]


def _edge_choices(max_entry: int) -> list[tuple[int, int]]:
    # (new row entry, old row entry) for one edge; (0, 0) = no edge
    out = [(0, 0)]
    out += [(-a, -b) for a in range(1, max_entry + 1) for b in range(1, max_entry + 1)]
    return out


@lru_cache(maxsize=None)
def _finite_affine_sum(entries: Entries) -> bool:
    return all(k is not Kind.INDEFINITE for _, k in _component_verdicts(entries))


def _spanned(base: Entries, col: list[tuple[int, int]], upto: int) -> Entries:
    # principal submatrix on old vertices 0..upto plus the new vertex
    idx = range(upto + 1)
    rows = [tuple(base[i][j] for j in idx) + (col[i][1],) for i in idx]
    rows.append(tuple(col[j][0] for j in idx) + (2,))
    return tuple(rows)


def _extend(base: Entries, max_entry: int, final: bool) -> Iterator[Entries]:
    """Connected one-vertex extensions of ``base`` passing the pruning tests.

    With ``final`` the completed matrix is not itself required to be a
    finite/affine sum (it is the candidate almost affine matrix).
    """
    k = len(base)
    choices = _edge_choices(max_entry)
    col: list[tuple[int, int]] = []

    def rec(j: int) -> Iterator[Entries]:
        if j == k:
            if all(c == (0, 0) for c in col):
                return
            rows = [tuple(base[i]) + (col[i][1],) for i in range(k)]
            rows.append(tuple(c[0] for c in col) + (2,))
            yield tuple(rows)
            return
        for c in choices:
            col.append(c)
            last = j == k - 1
            if c == (0, 0) or (final and last) or _finite_affine_sum(_spanned(base, col, j)):
                yield from rec(j + 1)
            col.pop()

    yield from rec(0)


def _canon_even(entries: Entries) -> CartanMatrix:
    M = CartanMatrix(entries, (Parity.EVEN,) * len(entries))
    return canonical_form(M)[0]


def _grow_level(base: Entries, max_entry: int, final: bool) -> list[CartanMatrix]:
    out = {}
    for ext in _extend(base, max_entry, final):
        if final:
            if _type_of_entries(ext).kind is not Kind.ALMOST_AFFINE:
                continue
        elif _trichotomy(ext) is Kind.INDEFINITE:
            continue
        C = _canon_even(ext)
        out.setdefault(C.key(), C)
    return list(out.values())


def _grow_job(args) -> list[CartanMatrix]:
    return _grow_level(*args)


def _map(func, items: list, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with Pool(jobs) as pool:
            return pool.map(func, items)
    return [func(x) for x in items]


@lru_cache(maxsize=None)
def connected_finite_affine(rank: int, max_entry: int = 4, jobs: int = 1) -> tuple[CartanMatrix, ...]:
    """Connected even matrices of finite or affine type, up to equivalence."""
    if rank == 1:
        return (CartanMatrix(((2,),), (Parity.EVEN,)),)
    prev = connected_finite_affine(rank - 1, max_entry, jobs)
    merged: dict = {}
    for found in _map(_grow_job, [(M.entries, max_entry, False) for M in prev], jobs):
        for C in found:
            merged.setdefault(C.key(), C)
    return tuple(sorted(merged.values(), key=sort_key))


@lru_cache(maxsize=None)
def _hyperbolic_all(rank: int, max_entry: int, jobs: int) -> tuple[CartanMatrix, ...]:
    bases = connected_finite_affine(rank - 1, max_entry, jobs)
    merged: dict = {}
    for found in _map(_grow_job, [(M.entries, max_entry, True) for M in bases], jobs):
        for C in found:
            merged.setdefault(C.key(), C)
    log.info("rank %d: %d hyperbolic classes", rank, len(merged))
    return tuple(sorted(merged.values(), key=sort_key))


def enumerate_hyperbolic(opts: EnumerationOptions) -> list[CartanMatrix]:
    """Indecomposable even almost affine matrices of ``opts.rank``, canonical and sorted."""
    found = _hyperbolic_all(opts.rank, opts.max_abs_offdiag, 1 if opts.jobs < 1 else opts.jobs)
    return [M for M in found if opts.sym.accepts(M)]


def _superize_job(M: CartanMatrix) -> SuperizationReport:
    return find_superizations(M)


def superization_reports(opts: EnumerationOptions) -> list[SuperizationReport]:
    hyper = enumerate_hyperbolic(opts)
    return _map(_superize_job, hyper, opts.jobs)


def enumerate_super_almost_affine(opts: EnumerationOptions) -> list[CartanMatrix]:
    """Almost affine super matrices (non-isotropic odd roots), canonical and sorted."""
    merged: dict = {}
    for rep in superization_reports(opts):
        for S in rep.superizations:
            merged.setdefault(S.key(), S)
    return sorted(merged.values(), key=sort_key)


def direct_super_search(rank: int, max_entry: int = 4, sym: SymFilter = SymFilter.ALL) -> list[CartanMatrix]:
    """Brute-force every parity-labeled matrix of the rank; test oracle for small ranks."""
    from itertools import product

    pairs = [(i, j) for i in range(rank) for j in range(i + 1, rank)]
    choices = _edge_choices(max_entry)
    sym = SymFilter(sym)
    found: dict = {}
    for diag in product((2, 1), repeat=rank):
        if 1 not in diag:
            continue
        for edges in product(choices, repeat=len(pairs)):
            rows = [[0] * rank for _ in range(rank)]
            for i in range(rank):
                rows[i][i] = diag[i]
            for (i, j), (a, b) in zip(pairs, edges):
                rows[i][j], rows[j][i] = a, b
            S = validate(rows)
            if classify_super(S).kind is not Kind.ALMOST_AFFINE or not sym.accepts(S):
                continue
            C = canonical_form(S)[0]
            found.setdefault(C.key(), C)
    return sorted(found.values(), key=sort_key)


def max_entry_is_lossless(max_entry: int) -> bool:
    """Whether the entry bound can cut off any almost affine class of rank >= 3.

    Each off-diagonal pair sits inside some main submatrix, whose components
    are finite or affine, so A_ij * A_ji <= 4 and |A_ij| <= 4.
    """
    return max_entry >= 4


def product_bound_holds(M: CartanMatrix) -> bool:
    A = M.entries
    return all(A[i][j] * A[j][i] <= 4 for i in range(M.n) for j in range(M.n) if i != j)


@dataclass
class RankCount:
    hyperbolic: int = 0
    superizable: int = 0
    super_classes: int = 0


@dataclass
class CensusReport:
    ranks: list[int]
    sym: SymFilter
    per_rank: dict[int, RankCount] = field(default_factory=dict)
    pairs: list[SuperizationReport] = field(default_factory=list)
    max_abs_offdiag: int = 4

    @property
    def hyperbolic_total(self) -> int:
        return sum(c.hyperbolic for c in self.per_rank.values())

    @property
    def superizable_total(self) -> int:
        return len(self.pairs)

    @property
    def super_total(self) -> int:
        return sum(p.multiplicity for p in self.pairs)

    @property
    def multi_total(self) -> int:
        return sum(1 for p in self.pairs if p.multiplicity >= 2)

    def multiplicity_multiset(self) -> dict[int, int]:
        return dict(sorted(Counter(p.multiplicity for p in self.pairs).items()))

    def totals(self) -> dict:
        return {
            "hyperbolic": self.hyperbolic_total,
            "superizable_hyperbolic": self.superizable_total,
            "super_almost_affine": self.super_total,
            "multi_superization": self.multi_total,
            "multiplicities": {str(k): v for k, v in self.multiplicity_multiset().items()},
        }

    def to_json(self) -> dict:
        return {
            "sym": self.sym.value,
            "max_abs_offdiag": self.max_abs_offdiag,
            "per_rank": {
                str(r): {
                    "hyperbolic": c.hyperbolic,
                    "superizable": c.superizable,
                    "super": c.super_classes,
                }
                for r, c in sorted(self.per_rank.items())
            },
            "totals": self.totals(),
            "pairs": [{"h": p.h.to_json(), "s": [s.to_json() for s in p.superizations]} for p in self.pairs],
        }


def pairing_report(
    ranks: Iterable[int] = range(MIN_RANK, MAX_RANK + 1),
    sym: SymFilter = SymFilter.ALL,
    max_abs_offdiag: int = 4,
    jobs: int = 1,
) -> CensusReport:
    """Hyperbolic classes per rank joined with their superizations via desuperize."""
    ranks = list(ranks)
    sym = SymFilter(sym)
    report = CensusReport(ranks, sym, max_abs_offdiag=max_abs_offdiag)
    for r in ranks:
        opts = EnumerationOptions(r, sym=sym, max_abs_offdiag=max_abs_offdiag, jobs=jobs)
        hyper = enumerate_hyperbolic(opts)
        reps = _map(_superize_job, hyper, jobs)
        count = RankCount(hyperbolic=len(hyper))
        for rep in reps:
            for S in rep.superizations:
                # each superization desuperizes back onto its H class
                assert canonical_form(desuperize(S))[0].key() == rep.h.key()
            if rep.multiplicity:
                count.superizable += 1
                count.super_classes += rep.multiplicity
                report.pairs.append(rep)
        report.per_rank[r] = count
    return report
