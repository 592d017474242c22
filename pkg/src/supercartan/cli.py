"""Command-line front end.

Reports go to stdout, diagnostics to stderr.  Exit status: 0 success,
1 verification or census mismatch, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Optional

from . import targets
from .catalog import (
    SECTIONS,
    ParseError,
    group_by_h,
    load_bundled,
    parse_catalog,
    render_latex,
    render_text,
    report_json,
    stats,
    verify_entry,
)
from .classify import classify_super, type_of
from .enumeration import (
    EnumerationOptions,
    SymFilter,
    enumerate_hyperbolic,
    enumerate_super_almost_affine,
    pairing_report,
)
from .equivalence import are_equivalent, canonical_form
from .geometry import doubled_walls, gram_data, lorentz_embedding
from .matrix_core import CartanError, CartanMatrix, from_json, is_symmetrizable, validate
from .supermap import desuperize, find_superizations

log = logging.getLogger("supercartan")

MATRIX_SCHEMA = """\
matrix JSON: {"name": optional str, "parity": optional str over e/o/i,
              "rows": [[int, ...], ...]}   (a bare list of rows also works;
              "-" reads standard input)"""


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def read_matrix(path: str) -> CartanMatrix:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if isinstance(obj, list):
        return validate(obj)
    return from_json(obj)


def _matrix_text(M: CartanMatrix) -> str:
    return str(M)


def _latex(M: CartanMatrix) -> str:
    body = r" \\ ".join(" & ".join(str(x) for x in row) for row in M.entries)
    return r"\begin{pmatrix} " + body + r" \end{pmatrix}"


# -- subcommands ---------------------------------------------------------------


def cmd_classify(args) -> int:
    M = read_matrix(args.input)
    verdict = type_of(M) if M.is_even else classify_super(M)
    if args.format == "json":
        out = verdict.to_json()
        out["symmetrizable"] = is_symmetrizable(M)
        print(_dump(out))
    else:
        print(_matrix_text(M))
        print(f"kind: {verdict.kind.value}")
        for idx, k in verdict.components:
            print(f"  component {[i + 1 for i in idx]}: {k.value}")
        print(f"symmetrizable: {is_symmetrizable(M)}")
    return 0


def cmd_desuperize(args) -> int:
    S = read_matrix(args.input)
    H = desuperize(S)
    if args.format == "json":
        print(_dump(H.to_json()))
    elif args.format == "latex":
        print(_latex(H))
    else:
        print(_matrix_text(H))
    return 0


def cmd_superize(args) -> int:
    H = read_matrix(args.input)
    rep = find_superizations(H, relax=args.relax)
    if args.format == "json":
        print(_dump(rep.to_json()))
    else:
        print(f"multiplicity: {rep.multiplicity}")
        for S in rep.superizations:
            print(_latex(S) if args.format == "latex" else _matrix_text(S))
    return 0


def cmd_equivalent(args) -> int:
    M1, M2 = read_matrix(args.first), read_matrix(args.second)
    sigma = are_equivalent(M1, M2)
    if args.format == "json":
        print(_dump({"equivalent": sigma is not None, "perm": None if sigma is None else sigma.one_based()}))
    else:
        print("not equivalent" if sigma is None else f"equivalent via {sigma.one_based()}")
    return 0 if sigma is not None else 1


def _parse_ranks(args) -> list[int]:
    if args.rank is not None:
        return [args.rank]
    lo, sep, hi = args.ranks.partition("..")
    try:
        return list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise UsageError(f"--ranks expects A..B, got {args.ranks!r}") from None


def cmd_enumerate(args) -> int:
    ranks = _parse_ranks(args)
    found: dict[int, list[CartanMatrix]] = {}
    for r in ranks:
        opts = EnumerationOptions(r, super=args.super, sym=args.sym, max_abs_offdiag=args.max_entry, jobs=args.jobs)
        found[r] = enumerate_super_almost_affine(opts) if args.super else enumerate_hyperbolic(opts)
    everything = [M for r in ranks for M in found[r]]
    if args.format == "json":
        print(_dump({
            "super": args.super,
            "sym": args.sym,
            "per_rank": {str(r): len(found[r]) for r in ranks},
            "totals": {"classes": len(everything)},
            "matrices": [M.to_json() for M in everything],
        }))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rank", "parity", "symmetrizable", "rows"])
        for M in everything:
            rows = ";".join(" ".join(map(str, row)) for row in M.entries)
            w.writerow([M.n, M.parity_string, int(is_symmetrizable(M)), rows])
        sys.stdout.write(buf.getvalue())
    elif args.format == "latex":
        for M in everything:
            print(_latex(M) + r" \\")
    else:
        for r in ranks:
            print(f"rank {r}: {len(found[r])}")
        print(f"total: {len(everything)}")
    return 0


def cmd_verify_catalog(args) -> int:
    if args.path:
        entries = parse_catalog(args.path)
    else:
        entries = load_bundled(args.section)
    reports = [verify_entry(e) for e in entries]
    st = stats(entries)
    if args.format == "json":
        print(_dump(report_json(reports, st)))
    elif args.format == "latex":
        print(render_latex(reports))
    else:
        print(render_text(reports, st))
    ok = all(r.passed for r in reports) and not st.flag_mismatches and not st.name_conflicts
    return 0 if ok else 1


def cmd_geometry(args) -> int:
    M = read_matrix(args.input)
    g = gram_data(M)
    emb = lorentz_embedding(g.B, args.tolerance) if args.embed else None
    if args.format == "json":
        out = g.to_json()
        out["lorentzian"] = g.is_lorentzian
        out["doubled_walls"] = [i + 1 for i in doubled_walls(M)]
        if emb is not None:
            out["embedding"] = emb.to_json()
        print(_dump(out))
    else:
        print(_matrix_text(M))
        print("d: " + " ".join(str(x) for x in g.d))
        print("cos2:")
        for row in g.cos2:
            print("  " + " ".join(f"{str(x):>6}" for x in row))
        print(f"signature: {g.signature}  lorentzian: {g.is_lorentzian}")
        dw = doubled_walls(M)
        if dw:
            print(f"walls also carrying 2*alpha: {[i + 1 for i in dw]}")
        if emb is not None:
            print("embedding (metric +...+-):")
            for v in emb.vectors:
                print("  " + " ".join(f"{x: .12f}" for x in v))
    return 0


def _catalog_membership(section: str, report) -> dict:
    """Catalog classes missing from the enumeration, and superizable classes missing from the catalog."""
    try:
        entries = load_bundled(section)
    except (ParseError, CartanError) as exc:
        log.warning("catalog %s unavailable: %s", section, exc)
        return {}
    cat_h = {k: v[0].h_name for k, v in group_by_h(entries).items()}
    cat_s = {canonical_form(e.s)[0].key(): e.s_name for e in entries}
    enum_h = {p.h.key(): p.h for p in report.pairs}
    enum_s = {S.key(): S for p in report.pairs for S in p.superizations}
    return {
        "missing_h": sorted(name for k, name in cat_h.items() if k not in enum_h),
        "missing_s": sorted(name for k, name in cat_s.items() if k not in enum_s),
        "extra_h": [enum_h[k].to_json() for k in enum_h if k not in cat_h],
        "extra_s": [enum_s[k].to_json() for k in enum_s if k not in cat_s],
    }


def cmd_census(args) -> int:
    ranks = list(targets.RANKS)
    result = {}
    ok = True
    for sym in ("sym", "nonsym"):
        rep = pairing_report(ranks, SymFilter(sym), args.max_entry, args.jobs)
        got = rep.totals()
        want = targets.CENSUS[sym]
        diff = {k: {"expected": v, "found": got[k]} for k, v in want.items() if got[k] != v}
        membership = _catalog_membership(sym, rep)
        mismatch = bool(diff) or any(membership.get(k) for k in ("missing_h", "missing_s", "extra_h", "extra_s"))
        ok &= not mismatch
        result[sym] = {
            "ok": not mismatch,
            "per_rank": rep.to_json()["per_rank"],
            "totals": got,
            "expected": want,
            "diff": diff,
            "catalog": membership,
        }
    total = sum(result[s]["totals"]["hyperbolic"] for s in ("sym", "nonsym"))
    result["total_hyperbolic"] = {"expected": targets.TOTAL_HYPERBOLIC, "found": total}
    ok &= total == targets.TOTAL_HYPERBOLIC
    result["ok"] = ok
    if args.format == "json":
        print(_dump(result))
    else:
        for sym in ("sym", "nonsym"):
            r = result[sym]
            print(f"[{sym}] {'ok' if r['ok'] else 'MISMATCH'}")
            print(f"  {'rank':>4} {'hyperbolic':>10} {'superizable':>11} {'super':>6}")
            for rank, c in r["per_rank"].items():
                print(f"  {rank:>4} {c['hyperbolic']:>10} {c['superizable']:>11} {c['super']:>6}")
            for k, v in r["expected"].items():
                print(f"  {k}: found {r['totals'][k]}, expected {v}")
            for k, v in r["catalog"].items():
                if v:
                    print(f"  {k}: {v}")
        t = result["total_hyperbolic"]
        print(f"total hyperbolic: found {t['found']}, expected {t['expected']}")
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="supercartan",
        description="Classify Cartan matrices of Lie (super)algebras, pair almost affine "
        "superalgebras with hyperbolic Lie algebras, enumerate and verify.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=MATRIX_SCHEMA,
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, help, epilog=MATRIX_SCHEMA):
        return sub.add_parser(name, help=help, description=help, epilog=epilog,
                              formatter_class=argparse.RawDescriptionHelpFormatter)

    c = add("classify", "Finite / affine / almost affine / other verdict for a matrix.",
            MATRIX_SCHEMA + '\n\noutput: {"kind": "finite"|"affine"|"almost_affine"|"other_indefinite",\n'
            '         "components": [{"indices": [...], "kind": ...}], "symmetrizable": bool}')
    c.add_argument("--input", "-i", required=True, help="matrix JSON file")
    c.add_argument("--format", choices=["json", "text"], default="json")
    c.set_defaults(func=cmd_classify)

    c = add("desuperize", "Double every diagonal-1 row of a super matrix.")
    c.add_argument("--input", "-i", required=True)
    c.add_argument("--format", choices=["json", "text", "latex"], default="json")
    c.set_defaults(func=cmd_desuperize)

    c = add("superize", "All superizations of a hyperbolic matrix, up to equivalence.",
            MATRIX_SCHEMA + '\n\noutput: {"h": matrix, "multiplicity": k, "superizations": [matrix, ...]}')
    c.add_argument("--input", "-i", required=True)
    c.add_argument("--relax", action="store_true", help="skip the almost-affine requirement (exploratory)")
    c.add_argument("--format", choices=["json", "text", "latex"], default="json")
    c.set_defaults(func=cmd_superize)

    c = add("equivalent", "Permutation σ with SECOND[σ(i)][σ(j)] = FIRST[i][j]; exit 1 if none.",
            MATRIX_SCHEMA + '\n\noutput: {"equivalent": bool, "perm": [1-based images] | null}')
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--format", choices=["json", "text"], default="json")
    c.set_defaults(func=cmd_equivalent)

    c = add("enumerate", "Hyperbolic (or, with --super, almost affine super) classes by rank.",
            'json output: {"super": bool, "sym": str, "per_rank": {"3": k, ...},\n'
            '              "totals": {"classes": N}, "matrices": [matrix, ...]}\n'
            "csv columns: rank, parity, symmetrizable, rows (';'-separated)")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--rank", type=int)
    g.add_argument("--ranks", help="range such as 3..10")
    c.add_argument("--super", action="store_true")
    c.add_argument("--sym", choices=[f.value for f in SymFilter], default="all")
    c.add_argument("--max-entry", type=int, default=4, help="bound on |off-diagonal| (default 4)")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--format", choices=["json", "csv", "latex", "text"], default="json")
    c.set_defaults(func=cmd_enumerate)

    c = add("verify-catalog", "Replay every row of a pairing table.",
            'catalog JSON: {"section": "sym"|"nonsym", "entries": [{"s_name": str, "s": matrix,\n'
            '  "h_name": str, "h": matrix, "perm": [int, ...] | null, "multi": bool}]}\n'
            "without PATH the bundled table for --section is used "
            "(directory overridable with CARTAN_CATALOG_DIR)")
    c.add_argument("path", nargs="?")
    c.add_argument("--section", choices=SECTIONS, default="sym")
    c.add_argument("--format", choices=["json", "text", "latex"], default="text")
    c.set_defaults(func=cmd_verify_catalog)

    c = add("geometry", "Symmetrizer, Gram matrix, squared cosines, signature, wall embedding.",
            MATRIX_SCHEMA + '\n\njson output: {"d": [...], "B": [[...]], "cos2": [[...]], "signature": [p, q, z],\n'
            '  "lorentzian": bool, "doubled_walls": [...], "embedding": {"vectors": [[float]]}}\n'
            'rationals are strings such as "-1/4"')
    c.add_argument("--input", "-i", required=True)
    c.add_argument("--embed", action="store_true", help="include Minkowski wall vectors")
    c.add_argument("--tolerance", type=float, default=1e-12)
    c.add_argument("--format", choices=["json", "text"], default="json")
    c.set_defaults(func=cmd_geometry)

    c = add("census", "Enumerate ranks 3..10 and compare with the published counts.",
            "exit 1 on any mismatch; the report lists per-rank counts and catalog classes\n"
            "missing from (or extra to) the enumeration")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--max-entry", type=int, default=4)
    c.add_argument("--format", choices=["json", "text"], default="text")
    c.set_defaults(func=cmd_census)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, CartanError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
