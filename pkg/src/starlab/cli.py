"""Command line entry point ``srl``.

Exit codes: 0 pass, 1 counterexample found, 2 usage or parse error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from . import axioms as AX
from . import clean as CL
from .corpus import ConfigError, CorpusConfig, generate_corpus, load_corpus_file
from .hunts import QUESTIONS, hunt_counterexample
from .properties import PROPERTIES, PropertyCache, RingRecord
from .report import SuiteConfig, emit_report, exit_status, run_suite, verify_report
from .rings import TooLarge
from .spectext import SemanticError, SpecSyntaxError, format_ring_spec, parse_element, parse_ring_spec

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _cache(args):
    return None if args.no_cache else PropertyCache()


def _dump(obj):
    print(json.dumps(obj, indent=2))


def cmd_parse(args):
    expr = parse_ring_spec(args.spec)
    rec = RingRecord(expr)
    print(rec.spec)
    print(f"order {rec.order}")
    return EXIT_OK


def cmd_decide(args):
    if args.property not in PROPERTIES:
        raise UsageError(f"unknown property {args.property!r}; known: {', '.join(sorted(PROPERTIES))}")
    rec = RingRecord(parse_ring_spec(args.spec), _cache(args))
    cap = PROPERTIES[args.property][1]
    if rec.order > cap:
        raise TooLarge(f"{args.property} is capped at order {cap}; ring has order {rec.order}")
    value = rec.get(args.property)
    rec.save()
    _dump({"ring": rec.spec, "property": args.property, "value": value})
    return EXIT_OK


def cmd_witness(args):
    if args.mode not in CL.MODES:
        raise UsageError(f"unknown mode {args.mode!r}; known: {', '.join(CL.MODES)}")
    expr = parse_ring_spec(args.spec)
    rec = RingRecord(expr)
    ring = rec.ring
    a = parse_element(ring, args.element)
    w = CL.decomposition_witness(ring, a, CL.MODES[args.mode])
    if w is None:
        print(f"{ring.render(a)}: no {args.mode} decomposition")
        return EXIT_FOUND
    print(f"{ring.render(a)} = {ring.render(w.unit_part)} + {ring.render(w.idempotent_part)}")
    _dump({"element": w.element, "unit": w.unit_part, "idempotent": w.idempotent_part, "checks": w.verified})
    return EXIT_OK


def cmd_axioms(args):
    rec = RingRecord(parse_ring_spec(args.spec))
    ring = rec.ring
    rows = {}
    for name in AX.AXIOMS + ("GC", "LPRP"):
        entry = AX.check_axiom(ring, name)
        rows[name] = {"status": entry.status, "note": entry.note,
                      "witness": _render_witness(ring, entry.witness)}
    _dump({"ring": rec.spec, "axioms": rows})
    return EXIT_OK


def _render_witness(ring, w):
    if w is None:
        return None
    if isinstance(w, (int,)) and 0 <= w < ring.order:
        return ring.render(w)
    if isinstance(w, (tuple, list)):
        return [_render_witness(ring, x) for x in w]
    return str(w)


def cmd_types(args):
    rec = RingRecord(parse_ring_spec(args.spec))
    ring = rec.ring
    try:
        td = AX.type_decompose(ring)
    except AX.NotBaerStar:
        raise UsageError(f"{rec.spec} is not a Baer *-ring; types are undefined")
    _dump({
        "ring": rec.spec,
        "cI": ring.render(td.c_I), "cII": ring.render(td.c_II), "cIII": ring.render(td.c_III),
        "finite": td.I_f,
        "pieces": [{"central": ring.render(p.central), "type": p.type, "n": p.n,
                    "partition": [ring.render(x) for x in p.partition] if p.partition else None,
                    "witnesses": [ring.render(x) for x in p.witnesses] if p.witnesses else None}
                   for p in td.pieces],
    })
    return EXIT_OK


def cmd_suite(args):
    corpus_cfg = CorpusConfig(max_order=args.max_order, seed=args.seed)
    corpus = load_corpus_file(args.corpus) if args.corpus else generate_corpus(corpus_cfg)
    cfg = SuiteConfig(seed=args.seed, corpus=corpus_cfg, hunt_budget=args.hunt_budget,
                      use_cache=not args.no_cache, timings=args.timings)
    report = run_suite(corpus, cfg)
    text = emit_report(report, args.format, args.out)
    if not args.out:
        sys.stdout.write(text)
    for t in report["theorems"]:
        tag = "VACUOUS" if t["vacuous"] else ("FAIL" if t["counterexamples"] else "ok")
        print(f"{t['id']:<13} {t['passCount']}/{t['hypothesisCount']} {tag}", file=sys.stderr)
    return exit_status(report)


def cmd_hunt(args):
    res = hunt_counterexample(args.question, args.budget, args.seed, _cache(args))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(res, fh, indent=2)
    _dump(res)
    return EXIT_FOUND if res["findings"] else EXIT_OK


def cmd_verify(args):
    with open(args.report) as fh:
        report = json.load(fh)
    n, failures = verify_report(report)
    for where, ring, kind, msg in failures:
        print(f"FAIL {where} {kind} in {ring}: {msg}")
    print(f"{n - len(failures)}/{n} witnesses verified")
    return EXIT_FOUND if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="srl", description="Finite *-ring laboratory")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and print the canonical form of a ring spec")
    p.add_argument("spec")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("decide", help="decide a named property")
    p.add_argument("property")
    p.add_argument("spec")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("witness", help="decompose one element in a clean mode")
    p.add_argument("spec")
    p.add_argument("--element", required=True)
    p.add_argument("--mode", default="star-clean")
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("axioms", help="check the axioms A1-A7, GC and LP~RP")
    p.add_argument("spec")
    p.set_defaults(fn=cmd_axioms)

    p = sub.add_parser("types", help="type decomposition of a Baer *-ring")
    p.add_argument("spec")
    p.set_defaults(fn=cmd_types)

    p = sub.add_parser("suite", help="run every theorem over a corpus")
    p.add_argument("--corpus", help="file with one ring spec per line")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.add_argument("--max-order", type=int, default=4096)
    p.add_argument("--hunt-budget", type=int, default=20)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--timings", action="store_true", help="record wall time per theorem (breaks byte equality)")
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("hunt", help="search for rings exhibiting an open-question pattern")
    p.add_argument("question", choices=QUESTIONS)
    p.add_argument("--budget", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(fn=cmd_hunt)

    p = sub.add_parser("verify", help="re-verify every witness in a report")
    p.add_argument("report")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except (SpecSyntaxError, SemanticError, UsageError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLarge as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
