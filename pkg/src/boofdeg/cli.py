"""Command-line entry points for the measurement laboratory.

Four subcommands: analyze one function (given as hex, a DNF, a
read-once formula, or a hypergraph property), scan all functions of an
arity, verify the algebraic constructions on randomized or exhaustive
drills, and print the reference table for the all-zeros detector
family.

Exit status: 0 on success, 1 when an exact inequality or verification
check failed, 2 on bad input.
"""

import argparse
import json
import math
import os
import sys

from .cache import open_cache, CacheError
from .constructions import hypergraph_symmetric_embedding, ConstructionError
from .frontend import (
    BUILTIN_PROPERTIES, dnf_analyze, parse_dnf, parse_read_once,
    builtin_property, property_from_table, ro_to_table,
)
from .harness import (
    HarnessError, analyze_dnf_record, analyze_hex, analyze_property_record,
    analyze_read_once_record, nor_rows, parse_sweep, render_csv, run_scan,
    run_verify, scan_summary, write_jsonl,
)
from .truthtable import from_hex


def _maybe_file(text):
    """Treat the argument as a path when one exists, else as literal."""
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            return fh.read().strip()
    return text


def _print_record(rec, cache):
    if cache is not None and cache.skipped:
        print(
            "warning: skipped %d damaged cache lines in %s"
            % (cache.skipped, cache.path),
            file=sys.stderr,
        )
    print(json.dumps(rec, indent=2, sort_keys=True))
    return 1 if rec["suite"]["violations"] else 0


def cmd_analyze(args):
    chosen = [
        name for name, val in (
            ("--hex", args.hex), ("--dnf", args.dnf),
            ("--read-once", args.read_once),
            ("--property", args.property),
            ("--property-table", args.property_table),
        ) if val is not None
    ]
    if len(chosen) != 1:
        raise HarnessError(
            "give exactly one input form (got: %s)"
            % (", ".join(chosen) or "none")
        )
    cache = open_cache(args.cache)
    sweep = args.eps
    embeddings = not args.no_embeddings

    if args.hex is not None:
        if args.n is None:
            raise HarnessError("--hex needs --n, the number of inputs")
        rec = analyze_hex(args.hex, args.n, sweep=sweep, cache=cache,
                          with_embeddings=embeddings)
    elif args.dnf is not None:
        dnf = parse_dnf(_maybe_file(args.dnf))
        report, table = dnf_analyze(dnf, requested_k=args.k)
        rec = analyze_dnf_record(dnf, report, table, sweep=sweep,
                                 cache=cache)
    elif args.read_once is not None:
        formula = parse_read_once(_maybe_file(args.read_once))
        rec = analyze_read_once_record(formula, ro_to_table(formula),
                                       sweep=sweep, cache=cache)
    else:
        if args.n is None:
            raise HarnessError("property analysis needs --n, the vertex count")
        if args.property is not None:
            spec = builtin_property(args.property, args.n, k=args.k)
        else:
            k = args.k or 2
            edges = math.comb(args.n, k)
            table = from_hex(args.property_table, edges)
            spec = property_from_table(k, args.n, table, name="explicit")
        embedding = None
        note = None
        try:
            embedding = hypergraph_symmetric_embedding(spec)
        except ConstructionError as exc:
            note = str(exc)
        rec = analyze_property_record(spec, sweep=sweep, cache=cache,
                                      embedding=embedding)
        if note is not None:
            rec["property"]["embedding_skipped"] = note
    return _print_record(rec, cache)


def _suite_lines(summary):
    lines = []
    for item in summary["suite"]["inequalities"]:
        lines.append(
            "[%s] %s (%d checked, %d skipped)"
            % (item["id"], item["status"], item["checked"], item["skipped"])
        )
    for name, info in summary["ratios"].items():
        lines.append(
            "ratio %s: max %s at n=%d hex=%s"
            % (name, info["max"], info["at"]["n"], info["at"]["hex"])
        )
    return lines


def cmd_scan(args):
    sweep = parse_sweep(args.eps)
    records, skipped = run_scan(
        args.n, npn=args.npn, sweep=args.eps, workers=args.workers,
        budget=args.budget, with_embeddings=not args.no_embeddings,
    )
    flags = {
        "n": args.n, "npn": args.npn,
        "eps": [str(e) for e in sweep],
        "workers": args.workers, "budget": args.budget,
    }
    summary = scan_summary(records, skipped, sweep, flags)

    suffix = "_npn" if args.npn else ""
    csv_path = args.csv or "boofdeg_scan_n%d%s.csv" % (args.n, suffix)
    jsonl_path = args.jsonl or "boofdeg_scan_n%d%s.jsonl" % (args.n, suffix)
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_csv(records, sweep))
    write_jsonl(jsonl_path, records, summary)

    print("scanned %d function(s) at n=%d%s"
          % (len(records), args.n, ", class representatives" if args.npn
             else ""))
    if skipped:
        print("budget ran out: %d function(s) skipped, results are partial"
              % skipped)
    for line in _suite_lines(summary):
        print(line)
    print("wrote %s and %s" % (csv_path, jsonl_path))
    if summary["suite"]["violations"]:
        bad = [item for item in summary["suite"]["inequalities"]
               if item["status"] == "violated"]
        print(json.dumps(bad, indent=2, sort_keys=True), file=sys.stderr)
        return 1
    return 0


def cmd_verify(args):
    results = run_verify(args.target, trials=args.trials, seed=args.seed)
    bad = False
    for res in results:
        if res["ok"]:
            print("%s: pass (%d cases)" % (res["target"], res["cases"]))
        else:
            bad = True
            print("%s: FAIL (%d cases)" % (res["target"], res["cases"]))
            print(json.dumps(res["failures"], indent=2, sort_keys=True),
                  file=sys.stderr)
    return 1 if bad else 0


def cmd_nor_table(args):
    rows = nor_rows(args.max)
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        print(" n  gapped  floor  floor_ok  adeg_1/4  ceiling_ok")
        for row in rows:
            print("%2d  %6d  %5d  %8s  %8d  %10s" % (
                row["n"], row["gapped"], row["floor_reference"],
                "yes" if row["floor_ok"] else "NO",
                row["adeg_quarter"],
                "yes" if row["ceiling_ok"] else "NO",
            ))
    ok = all(r["floor_ok"] and r["ceiling_ok"] for r in rows)
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="boofdeg",
        description="Exact degree-measure laboratory for Boolean functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="measure a single function")
    p.add_argument("--hex", help="truth table as hex digits")
    p.add_argument("--n", type=int, help="number of inputs or vertices")
    p.add_argument("--dnf", help="DNF formula text or a file holding one")
    p.add_argument("--read-once",
                   help="read-once formula text or a file holding one")
    p.add_argument("--property", metavar="NAME",
                   help="built-in hypergraph property: %s"
                   % ", ".join(sorted(BUILTIN_PROPERTIES)))
    p.add_argument("--property-table", metavar="HEX",
                   help="explicit property table over the edge variables")
    p.add_argument("--k", type=int,
                   help="declared read bound (DNF) or edge size (property)")
    p.add_argument("--eps", action="append", metavar="P/Q",
                   help="error parameter, repeatable; default 1/4 1/3 1/2")
    p.add_argument("--cache", help="result cache path (default $BOOFDEG_CACHE)")
    p.add_argument("--no-embeddings", action="store_true",
                   help="skip embedding witness construction")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("scan", help="measure every function of an arity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--npn", action="store_true",
                   help="one representative per equivalence class")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=float, metavar="SECONDS",
                   help="wall-clock limit; extra functions are skipped")
    p.add_argument("--eps", action="append", metavar="P/Q")
    p.add_argument("--csv", help="CSV output path")
    p.add_argument("--jsonl", help="JSONL output path")
    p.add_argument("--no-embeddings", action="store_true")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("verify", help="run a construction drill")
    p.add_argument("target",
                   help="restriction-monotonicity, sign-rep, rational-approx,"
                        " symmetrize, composition, or all")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("nor-table",
                       help="reference table for the all-zeros detectors")
    p.add_argument("--max", type=int, default=8, metavar="N",
                   help="largest arity to tabulate (at most 8)")
    p.add_argument("--json", action="store_true",
                   help="emit rows as JSON with witnesses")
    p.set_defaults(fn=cmd_nor_table)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, CacheError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
