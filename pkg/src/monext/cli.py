"""Command-line interface: verify, h2, direction, baer and census."""
from __future__ import annotations

import argparse
import os
import sys

from . import io
from .action import to_semimodule
from .checks import REGISTRY, run_all
from .cofib import (BRUTE_FORCE_BOUND, baer_sum, classify_by_iso, cohomology_monoid,
                    fiber_classify, fibre_iso, modes_agree)
from .corpus import build_corpus, empty_corpus
from .direction import df_by_semidirect, df_isomorphism, direction_bundle, is_cc
from .errors import AxiomViolation, BoundExceeded, CheckFailure, MonoidError, ParseError
from .extension import cokernel_check

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


# --- verify ------------------------------------------------------------------------

def load_corpus_file(C, path):
    """Append extension and semimodule documents from ``path`` to the corpus."""
    doc = io.load_file(path)
    io._fields(doc, "$", (), ("extensions", "semimodules"))
    for i, d in enumerate(doc.get("extensions", [])):
        C.extensions.append(io.parse_extension(d, f"$.extensions[{i}]"))
    for i, d in enumerate(doc.get("semimodules", [])):
        C.semimodules.append(io.parse_semimodule(d, f"$.semimodules[{i}]"))
    C.cache.clear()
    return C


def corpus_summary(C):
    return {"monoids": len(C.all_monoids), "extensions": len(C.extensions),
            "raw_extensions": len(C.raw_extensions), "semimodules": len(C.semimodules),
            "relations": len(C.relations), "morphisms": len(C.morphisms),
            "raw_morphisms": len(C.raw_morphisms)}


def verify_report(C, results, timing=True):
    failed = [r.id for r in results if r.status == "fail"]
    warnings = [f"{r.id}: no instances in this corpus" for r in results if r.status == "empty"]
    cfg = C.config
    return {
        "bounds": {"max_monoid_order": cfg.max_monoid_order,
                   "max_carrier_order": cfg.max_carrier_order},
        "corpus": corpus_summary(C),
        "statements": [r.as_dict(timing) for r in results],
        "summary": {"statements": len(results), "failed": failed,
                    "instances": sum(r.instances for r in results)},
        "warnings": warnings,
        "ok": not failed,
    }


def render_table(report):
    lines = [f"{'statement':28s} {'status':6s} {'instances':>9s} {'seconds':>8s}"]
    for s in report["statements"]:
        secs = f"{s['seconds']:8.2f}" if "seconds" in s else ""
        lines.append(f"{s['id']:28s} {s['status']:6s} {s['instances']:9d} {secs}")
        if s["counterexample"]:
            ce = s["counterexample"]
            lines.append(f"    counterexample: {ce['instance']}: {ce['problem']}")
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    lines.append("ALL PASS" if report["ok"] else "FAILED: " + ", ".join(report["summary"]["failed"]))
    return "\n".join(lines)


def cmd_verify(args):
    if args.max_order == 0:
        C = empty_corpus()
    else:
        C = build_corpus(args.max_order, args.max_carrier)
    if args.corpus_file:
        load_corpus_file(C, args.corpus_file)
    ids = args.only.split(",") if args.only else None
    if ids:
        unknown = sorted(set(ids) - {c.id for c in REGISTRY})
        if unknown:
            raise ParseError(f"unknown statement id {unknown[0]!r}")
    results = run_all(C, ids, workers=args.workers)
    report = verify_report(C, results, timing=not args.no_timing)
    if args.out:
        write_json(args.out, report)
    if args.out or args.format == "table":
        print(render_table(report))
    else:
        emit(report, args)
    return EXIT_OK if report["ok"] else EXIT_FAIL


# --- h2, direction, baer -------------------------------------------------------------

def baer_table(classes, S):
    n = len(classes)
    return [[classify_by_iso(baer_sum(classes[i], classes[j], check=False), classes)
             for j in range(n)] for i in range(n)]


def h2_report(S, mode):
    if mode == "bf":
        classes = fiber_classify(S, "bf")
        table = baer_table(classes, S)
        unit = next(i for i, row in enumerate(table) if row == list(range(len(classes))))
    else:
        H = cohomology_monoid(S)
        classes, table, unit = list(H.classes), [list(r) for r in H.table], H.unit
    out = {"classes": len(classes), "table": table, "unit": unit,
           "witnesses": [io.emit_extension(E) for E in classes]}
    if mode == "both":
        bf = fiber_classify(S, "bf")
        if not modes_agree(classes, bf):
            raise CheckFailure("factor-system and brute-force classifications disagree")
        out["modes_agree"] = True
    return out


def cmd_h2(args):
    S = io.parse_semimodule(io.load_file(args.semimodule))
    emit(h2_report(S, args.mode), args)
    return EXIT_OK


def cmd_direction(args):
    E = io.parse_extension(io.load_file(args.ext))
    try:
        to_semimodule(E)
    except AxiomViolation as e:
        raise ParseError(f"extension is not in smod: {e}", witness=e.witness) from e
    out = {}
    if args.method in ("semidirect", "both"):
        out["semidirect"] = io.emit_point(df_by_semidirect(E))
    if args.method in ("coeq", "both"):
        if not is_cc(E):
            raise ParseError("the coequalizer construction needs a cancellative kernel")
        b = direction_bundle(E)
        out["coequalizer"] = io.emit_point(b.point)
        if args.method == "both":
            out["isomorphism"] = list(df_isomorphism(b).lam.map)
    out["order"] = next(iter(v["B"]["order"] for k, v in out.items() if k != "isomorphism"))
    emit(out, args)
    return EXIT_OK


def cmd_baer(args):
    E1 = io.parse_extension(io.load_file(args.ext1), "ext1")
    E2 = io.parse_extension(io.load_file(args.ext2), "ext2")
    B = baer_sum(E1, E2)
    S = to_semimodule(B)
    out = {"sum": io.emit_extension(B), "semimodule": io.emit_semimodule(S)}
    if S.K.order * S.M.order <= 16:
        H = cohomology_monoid(S)
        c = classify_by_iso(B, list(H.classes))
        out["class"] = c
        out["certificate"] = list(fibre_iso(B, H.classes[c]).alpha2.map)
        out["witness"] = io.emit_extension(H.classes[c])
    emit(out, args)
    return EXIT_OK


# --- census ------------------------------------------------------------------------------

def census(C, bound=BRUTE_FORCE_BOUND):
    """Classification per (M, K, eta) plus the open-question searches."""
    files = {}
    for i, S in enumerate(C.semimodules):
        if S.K.order * S.M.order > bound:
            continue
        H = cohomology_monoid(S, check=False)
        name = f"{i:04d}_{S.M.name}_{S.K.name}.json"
        files[name] = {"semimodule": io.emit_semimodule(S), "classes": len(H.classes),
                       "table": [list(r) for r in H.table], "unit": H.unit,
                       "factor_systems": [[list(r) for r in g] for g in H.factor_systems]}
    a4 = None
    for E in C.extensions:
        try:
            to_semimodule(E)
        except AxiomViolation as e:
            a4 = {"extension": io.emit_extension(E), "violation": list(e.witness)}
            break
    normal = None
    for E in C.raw_extensions:
        if not E.is_schreier and cokernel_check(E):
            normal = {"extension": io.emit_extension(E)}
            break
    files["open_questions.json"] = {
        "a4_failure": a4,
        "normal_non_schreier": normal,
        "searched": {"extensions": len(C.extensions), "raw_extensions": len(C.raw_extensions)},
    }
    return files


def cmd_census(args):
    C = build_corpus(args.max_order, args.max_carrier)
    files = census(C)
    os.makedirs(args.out, exist_ok=True)
    for name, doc in files.items():
        write_json(os.path.join(args.out, name), doc)
    print(f"wrote {len(files)} files to {args.out}")
    return EXIT_OK


# --- plumbing ----------------------------------------------------------------------------

def write_json(path, doc):
    with open(path, "w") as fh:
        fh.write(io.json.dumps(doc, sort_keys=True, indent=1) + "\n")


def emit(doc, args):
    if getattr(args, "out", None):
        write_json(args.out, doc)
    else:
        print(io.json.dumps(doc, sort_keys=True, indent=1))


def parser():
    p = argparse.ArgumentParser(prog="monext", description="Schreier extensions of finite monoids")
    sub = p.add_subparsers(dest="cmd", required=True)
    v = sub.add_parser("verify", help="run every statement check over the corpus")
    v.add_argument("--max-order", type=int, default=5)
    v.add_argument("--max-carrier", type=int, default=8)
    v.add_argument("--out")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--corpus-file", help="extra extension/semimodule documents to include")
    v.add_argument("--only", help="comma-separated statement ids")
    v.add_argument("--no-timing", action="store_true", help="omit timing fields from the report")
    v.add_argument("--format", choices=("json", "table"), default="json")
    v.set_defaults(fn=cmd_verify)
    h = sub.add_parser("h2", help="fibre classes and Baer-sum table of a semimodule")
    h.add_argument("--semimodule", required=True)
    h.add_argument("--mode", choices=("fs", "bf", "both"), default="fs")
    h.add_argument("--out")
    h.set_defaults(fn=cmd_h2)
    d = sub.add_parser("direction", help="direction point of an extension")
    d.add_argument("--ext", required=True)
    d.add_argument("--method", choices=("coeq", "semidirect", "both"), default="both")
    d.add_argument("--out")
    d.set_defaults(fn=cmd_direction)
    b = sub.add_parser("baer", help="Baer sum of two extensions")
    b.add_argument("--ext1", required=True)
    b.add_argument("--ext2", required=True)
    b.add_argument("--out")
    b.set_defaults(fn=cmd_baer)
    c = sub.add_parser("census", help="classification files for the corpus semimodules")
    c.add_argument("--max-order", type=int, default=3)
    c.add_argument("--max-carrier", type=int, default=8)
    c.add_argument("--out", required=True)
    c.set_defaults(fn=cmd_census)
    return p


def main(argv=None):
    args = parser().parse_args(argv)
    try:
        return args.fn(args)
    except BoundExceeded as e:
        print(f"bound exceeded: {e}", file=sys.stderr)
        return EXIT_BOUND
    except ParseError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except CheckFailure as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    except MonoidError as e:
        print(f"input error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
