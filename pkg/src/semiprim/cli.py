"""Command-line front end: ``semiprim <command> ...``.

Exit status is 1 when any bound verdict fails, a table row mismatches, a
numerical lemma check fails or an entry errors; 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict

from . import harness
from .atlas import group_from_text
from .classification import numerical_lemma_checks
from .perm import census_cap, set_census_cap


def _verdict_rows(name, verdicts):
    return [[name, v.bound_id, v.lhs, v.rhs, v.status, v.exemption_reason or ""] for v in verdicts]


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if x is None else str(x) for x in r])
    return buf.getvalue().rstrip("\n")


def _text_report(r):
    lines = [f"{r.name}: degree {r.degree}, order {r.order}, {r.taxonomy}"]
    if r.error:
        lines.append(f"  error: {r.error}")
        return "\n".join(lines)
    for a in r.antiplinths:
        lines.append(f"  antiplinth order {a['order']}, {a['orbits']} orbits")
    m = r.metrics
    if m is not None:
        lines.append(f"  b = {m.base_size} (base {[x + 1 for x in m.base]}), m = {m.minimal_degree}, "
                     f"fpr = {m.fpr}, chief length {m.chief_length}")
    for v in r.bounds:
        extra = f" ({v.exemption_reason})" if v.exemption_reason else ""
        lines.append(f"  {v.bound_id:15s} {v.status}{extra}: {v.lhs} vs {v.rhs}")
    c = r.classification
    if c is not None:
        row = "none" if c.table_row is None else f"table {c.table_row.table} row {c.table_row.row}"
        lines.append(f"  cover case {c.theorem_case}, {row}, G^Delta = {c.G_delta}, H^Delta = {c.H_delta}")
        if c.note:
            lines.append(f"  note: {c.note}")
    return "\n".join(lines)


def _emit_reports(reports, fmt):
    if fmt == "json":
        return harness.report_to_json(reports)
    if fmt == "csv":
        rows = []
        for r in reports:
            rows.extend(_verdict_rows(r.name, r.bounds))
        return _csv(["name", "bound_id", "lhs", "rhs", "status", "exemption_reason"], rows)
    return "\n".join(_text_report(r) for r in reports)


def _failed(reports):
    return any(r.error for r in reports) or any(v.status == "fail" for r in reports for v in r.bounds)


def cmd_analyze(args):
    G = group_from_text(args.group)
    rep = harness.analyze(G, args.group, args.threshold)
    print(_emit_reports([rep], args.format))
    return 1 if _failed([rep]) else 0


def cmd_verify_bounds(args):
    G = group_from_text(args.group)
    verdicts = harness.verify_bounds(G, threshold=args.threshold)
    if args.format == "json":
        print(json.dumps([harness.to_jsonable(asdict(v)) for v in verdicts], indent=2))
    elif args.format == "csv":
        print(_csv(["name", "bound_id", "lhs", "rhs", "status", "exemption_reason"],
                   _verdict_rows(args.group, verdicts)))
    else:
        for v in verdicts:
            extra = f" ({v.exemption_reason})" if v.exemption_reason else ""
            print(f"{v.bound_id:15s} {v.status}{extra}: {v.lhs} vs {v.rhs}")
    return 1 if any(v.status == "fail" for v in verdicts) else 0


def cmd_reproduce_tables(args):
    rep = harness.reproduce_tables()
    if args.format == "json":
        print(json.dumps(rep, indent=2))
    elif args.format == "csv":
        print(_csv(["name", "label", "expected", "computed", "quotient_base_size", "match"],
                   [[r["name"], r["label"], tuple(r["expected"]), tuple(r["computed"]),
                     r["quotient_base_size"], r["match"]] for r in rep["rows"]]))
    else:
        for r in rep["rows"]:
            flag = "ok" if r["match"] else "MISMATCH"
            print(f"{r['label']:28s} expected {tuple(r['expected'])} computed {tuple(r['computed'])} "
                  f"b(G^Delta) = {r['quotient_base_size']}  {flag}")
    return 0 if rep["ok"] else 1


def cmd_corpus(args):
    if args.config == "default":
        entries = list(harness.DEFAULT_CORPUS)
    else:
        with open(args.config) as fh:
            entries = harness.read_corpus(fh.read(), seed=args.seed)
    reports = harness.run_corpus(entries, args.threshold, args.time_budget)
    print(_emit_reports(reports, args.format))
    counts = harness.summarize(reports)
    print(" ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    return 1 if _failed(reports) else 0


def cmd_lemmas(args):
    rep = numerical_lemma_checks()
    if args.format == "json":
        print(json.dumps(rep, indent=2))
    else:
        print(f"m r! < 4^(m r): {rep['factorial_pairs_checked']} pairs, failures {rep['factorial_failures']}")
        print(f"square-root inequality: {rep['sqrt_pairs_checked']} pairs, failures {rep['sqrt_failures']}")
        print("ok" if rep["ok"] else "FAILED")
    return 0 if rep["ok"] else 1


def build_parser():
    p = argparse.ArgumentParser(prog="semiprim", description="Semiprimitive permutation group toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--census-cap", type=int, default=None, help="largest group enumerated element by element")
    common.add_argument("--time-budget", type=float, default=None, help="seconds before remaining corpus entries are skipped")
    common.add_argument("--seed", type=int, default=0, help="seed for 'random' corpus lines")
    common.add_argument("--threshold", type=int, default=1, help="degree from which base-size bounds are asserted")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="full report for one group")
    a.add_argument("group", help="group expression, atlas name or generator file")
    a.set_defaults(func=cmd_analyze)
    v = sub.add_parser("verify-bounds", parents=[common], help="check the degree bounds for one group")
    v.add_argument("group")
    v.set_defaults(func=cmd_verify_bounds)
    t = sub.add_parser("reproduce-tables", parents=[common], help="recompute the exceptional-group table rows")
    t.set_defaults(func=cmd_reproduce_tables)
    c = sub.add_parser("corpus", parents=[common], help="analyze every entry of a corpus file ('default' for the built-in one)")
    c.add_argument("config")
    c.set_defaults(func=cmd_corpus)
    lm = sub.add_parser("lemmas", parents=[common], help="exhaustive numerical lemma checks")
    lm.set_defaults(func=cmd_lemmas)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    old_cap = census_cap()
    if args.census_cap is not None:
        set_census_cap(args.census_cap)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    finally:
        set_census_cap(old_cap)


if __name__ == "__main__":
    sys.exit(main())
