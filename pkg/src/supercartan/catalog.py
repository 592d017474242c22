"""The bundled tables of (super, hyperbolic) pairs, their verifier and statistics."""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .classify import Kind, classify_super, type_of
from .equivalence import Permutation, canonical_form
from .geometry import billiard_compare
from .matrix_core import CartanError, CartanMatrix, from_json, is_symmetrizable
from .supermap import verify_pair

CATALOG_ENV = "CARTAN_CATALOG_DIR"
SECTIONS = ("sym", "nonsym")


class ParseError(CartanError):
    pass


class ValidationError(CartanError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    s_name: str
    s: CartanMatrix
    h_name: str
    h: CartanMatrix
    perm: Optional[Permutation]
    section: str
    multi: bool = False

    @property
    def sigma(self) -> Permutation:
        return self.perm if self.perm is not None else Permutation.identity(self.s.n)

    def to_json(self) -> dict:
        return {
            "s_name": self.s_name,
            "s": self.s.to_json(),
            "h_name": self.h_name,
            "h": self.h.to_json(),
            "perm": None if self.perm is None else self.perm.one_based(),
            "multi": self.multi,
        }


def catalog_dir() -> Path:
    override = os.environ.get(CATALOG_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def bundled_path(section: str) -> Path:
    if section not in SECTIONS:
        raise ValueError(f"unknown section {section!r}")
    return catalog_dir() / f"catalog_{section}.json"


def load_bundled(section: str) -> list[CatalogEntry]:
    return parse_catalog(bundled_path(section))


def parse_catalog(path) -> list[CatalogEntry]:
    """Read and validate a catalog file.

    Accepts the ``{"section": ..., "entries": [...]}`` document or a bare
    list of entries (section then defaults to "sym").
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_catalog_doc(doc, source=str(path))


def parse_catalog_doc(doc, source: str = "<catalog>") -> list[CatalogEntry]:
    if isinstance(doc, list):
        section, raw_entries = "sym", doc
    elif isinstance(doc, dict) and isinstance(doc.get("entries"), list):
        section, raw_entries = doc.get("section", "sym"), doc["entries"]
    else:
        raise ParseError(f"{source}: expected an object with an 'entries' list")
    if section not in SECTIONS:
        raise ParseError(f"{source}: unknown section {section!r}")

    out = []
    for k, raw in enumerate(raw_entries):
        where = f"{source}: entry {k + 1}"
        if isinstance(raw, dict) and "s_name" in raw:
            where += f" ({raw['s_name']})"
        try:
            s_name, h_name = str(raw["s_name"]), str(raw["h_name"])
            s = from_json(raw["s"]).with_name(s_name)
            h = from_json(raw["h"]).with_name(h_name)
            perm_raw = raw.get("perm")
            perm = None if perm_raw is None else Permutation.from_one_based(perm_raw)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{where}: malformed entry ({exc})") from exc
        except CartanError as exc:
            raise ValidationError(f"{where}: {exc}") from exc
        if s.n != h.n:
            raise ValidationError(f"{where}: S has rank {s.n}, H has rank {h.n}")
        if perm is not None and perm.n != s.n:
            raise ValidationError(f"{where}: permutation of size {perm.n} for rank {s.n}")
        if not s.odd_indices:
            raise ValidationError(f"{where}: S has no odd index")
        if not h.is_even:
            raise ValidationError(f"{where}: H has odd indices")
        out.append(CatalogEntry(s_name, s, h_name, h, perm, section, bool(raw.get("multi", False))))
    return out


CHECKS = ("pair", "s_almost_affine", "h_almost_affine", "symmetrizability", "billiard")


@dataclass
class EntryReport:
    entry: CatalogEntry
    results: dict[str, Optional[bool]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.results.values())

    def to_json(self) -> dict:
        return {
            "s_name": self.entry.s_name,
            "h_name": self.entry.h_name,
            "passed": self.passed,
            "checks": dict(self.results),
            "notes": list(self.notes),
        }


def verify_entry(e: CatalogEntry) -> EntryReport:
    """Run every check on one entry, recording failures rather than raising.

    A check that does not apply (billiards for non-symmetrizable pairs) is
    recorded as None.
    """
    rep = EntryReport(e)

    def run(name, fn):
        try:
            rep.results[name] = bool(fn())
        except CartanError as exc:
            rep.results[name] = False
            rep.notes.append(f"{name}: {type(exc).__name__}: {exc}")

    run("pair", lambda: verify_pair(e.s, e.h, e.perm))
    if rep.results["pair"] is False and e.perm is not None:
        # report when only the opposite direction convention would work
        try:
            if verify_pair(e.s, e.h, e.perm.inverse()):
                rep.notes.append("pair: holds only with the inverse permutation")
        except CartanError:
            pass
    run("s_almost_affine", lambda: classify_super(e.s).kind is Kind.ALMOST_AFFINE)
    run("h_almost_affine", lambda: type_of(e.h).kind is Kind.ALMOST_AFFINE)
    want_sym = e.section == "sym"
    run(
        "symmetrizability",
        lambda: is_symmetrizable(e.s) == want_sym and is_symmetrizable(e.h) == want_sym,
    )
    if want_sym and rep.results["pair"]:
        run("billiard", lambda: billiard_compare(e.s, e.h, e.perm))
    else:
        rep.results["billiard"] = None if not want_sym else False
    return rep


@dataclass
class CatalogStats:
    entry_count: int = 0
    distinct_h_count: int = 0
    multi_h_count: int = 0
    multiplicity_map: dict[str, int] = field(default_factory=dict)
    flag_mismatches: list[str] = field(default_factory=list)
    name_conflicts: list[str] = field(default_factory=list)
    s_class_count: int = 0

    def multiplicity_multiset(self) -> dict[int, int]:
        return dict(sorted(Counter(self.multiplicity_map.values()).items()))

    def to_json(self) -> dict:
        return {
            "entry_count": self.entry_count,
            "distinct_h_count": self.distinct_h_count,
            "multi_h_count": self.multi_h_count,
            "s_class_count": self.s_class_count,
            "multiplicity_map": dict(self.multiplicity_map),
            "multiplicity_multiset": {str(k): v for k, v in self.multiplicity_multiset().items()},
            "flag_mismatches": list(self.flag_mismatches),
            "name_conflicts": list(self.name_conflicts),
        }


def group_by_h(entries: list[CatalogEntry]) -> dict[tuple, list[CatalogEntry]]:
    groups: dict[tuple, list[CatalogEntry]] = {}
    for e in entries:
        groups.setdefault(canonical_form(e.h)[0].key(), []).append(e)
    return groups


def stats(entries: list[CatalogEntry]) -> CatalogStats:
    """Group entries by the class of H; the class is named after its first entry."""
    groups = group_by_h(entries)
    st = CatalogStats(entry_count=len(entries), distinct_h_count=len(groups))
    for members in groups.values():
        name = members[0].h_name
        names = sorted({m.h_name for m in members})
        if len(names) > 1:
            st.name_conflicts.append(f"equivalent H under different names: {', '.join(names)}")
        st.multiplicity_map[name] = len(members)
        multi = len(members) >= 2
        for m in members:
            if m.multi != multi:
                st.flag_mismatches.append(f"{m.s_name}: flag {m.multi}, multiplicity {len(members)}")
    by_name: dict[str, set] = {}
    for key, members in groups.items():
        for m in members:
            by_name.setdefault(m.h_name, set()).add(key)
    for name, keys in sorted(by_name.items()):
        if len(keys) > 1:
            st.name_conflicts.append(f"{name} names {len(keys)} inequivalent matrices")
    st.multi_h_count = sum(1 for v in st.multiplicity_map.values() if v >= 2)
    st.s_class_count = len({canonical_form(e.s)[0].key() for e in entries})
    return st


# -- report rendering ---------------------------------------------------------


def render_text(reports: list[EntryReport], st: CatalogStats) -> str:
    lines = [f"{'S':<8} {'H':<8} " + " ".join(f"{c:<16}" for c in CHECKS)]
    mark = {True: "ok", False: "FAIL", None: "-"}
    for r in reports:
        cells = " ".join(f"{mark[r.results.get(c)]:<16}" for c in CHECKS)
        lines.append(f"{r.entry.s_name:<8} {r.entry.h_name:<8} {cells}")
        for note in r.notes:
            lines.append(f"    note: {note}")
    passed = sum(r.passed for r in reports)
    lines.append("")
    lines.append(f"passed {passed}/{len(reports)}")
    lines.append(
        f"entries {st.entry_count}, distinct H {st.distinct_h_count}, "
        f"H with several superizations {st.multi_h_count}"
    )
    multi = {k: v for k, v in st.multiplicity_map.items() if v >= 2}
    if multi:
        lines.append("multiplicities: " + ", ".join(f"{k} ({v})" for k, v in multi.items()))
    for msg in st.flag_mismatches + st.name_conflicts:
        lines.append(f"warning: {msg}")
    return "\n".join(lines)


def _latex_matrix(M: CartanMatrix) -> str:
    body = r" \\ ".join(" & ".join(str(x) for x in row) for row in M.entries)
    return r"\begin{smallmatrix} " + body + r" \end{smallmatrix}"


def _latex_name(name: str) -> str:
    head, _, tail = name.partition("_")
    return f"{head}_{{{tail}}}" if tail else name


def render_latex(reports: list[EntryReport]) -> str:
    rows = []
    for r in reports:
        e = r.entry
        perm = "" if e.perm is None else r"\{" + ",".join(map(str, e.perm.one_based())) + r"\}"
        flag = r"\fbox{!!!}~~ " if e.multi else ""
        status = "" if r.passed else r" & \textbf{FAIL}"
        rows.append(
            f"{flag}{_latex_name(e.s_name)} & {_latex_matrix(e.s)} & {_latex_name(e.h_name)} & "
            f"{_latex_matrix(e.h)} & {perm}{status} \\\\"
        )
    return "\\begin{array}{lllll}\n" + "\n".join(rows) + "\n\\end{array}"


def report_json(reports: list[EntryReport], st: CatalogStats) -> dict:
    return {
        "passed": sum(r.passed for r in reports),
        "total": len(reports),
        "entries": [r.to_json() for r in reports],
        "stats": st.to_json(),
    }
