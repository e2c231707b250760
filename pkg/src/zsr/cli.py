"""Command-line interface: counts, spectra, pair checks, scans, and check grids.

Exit codes: 0 for success with nothing found, 1 when a scan or grid found a
violation (the interesting outcome), 2 for usage and domain errors.  All
machine output is deterministic: records carry big integers as decimal
strings, field order is fixed, and rerunning an identical invocation
produces identical bytes regardless of --parallelism.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .counting import count_dp, count_formula, count_molien, rational_catalan
from .errors import BudgetError, GroupParseError
from .groups import Abelian, enumerate_abelian, order_spectrum, order_spectrum_bruteforce, parse_group
from .lemmas import LemmaInstance, lemma21_grid, lemma22_grid, structure_grid
from .reciprocity import (
    FAMILIES,
    RECORD_FIELDS,
    divisor_gap_free,
    family_descriptors,
    iter_pair_reports,
    pair_key,
    reciprocity_check,
    report_from_record,
)

FORMATS = ("human", "json", "csv", "jsonl")
LEMMA_IDS = ("2.1i", "2.1ii", "2.2i", "2.2ii", "struct")
LEMMA_CSV_COLUMNS = ("lemma_id", "m", "n", "a", "b", "p", "q", "lhs", "rhs")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _exact_str(value) -> str:
    """Decimal string for integers, num/den for non-integral exact ratios."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "+".join(str(v) for v in value)
    return str(value)


def _write_csv(fh, records, columns=None) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    if columns is None:
        if not records:
            return
        columns = list(records[0].keys())
    writer.writerow(columns)
    for record in records:
        writer.writerow([_cell(record.get(c)) for c in columns])


def _emit(args, records: list[dict], human_lines: list[str]) -> None:
    """Render one command's records to stdout in the requested format."""
    if args.format == "human":
        for line in human_lines:
            print(line)
    elif args.format == "json":
        print(_dump(records[0] if len(records) == 1 else records))
    elif args.format == "jsonl":
        for record in records:
            print(_dump(record))
    else:
        _write_csv(sys.stdout, records)


def _cmd_count(args) -> int:
    desc = parse_group(args.group)
    if args.method == "formula":
        value = count_formula(order_spectrum(desc), args.length)
        method = "formula"
    elif args.method == "dp":
        if not isinstance(desc, Abelian):
            raise ValueError("the dp oracle enumerates elements of abelian groups only")
        value = count_dp(desc.group, args.length)
        method = "dp_oracle"
    else:
        value = count_molien(order_spectrum(desc), args.length)
        method = "molien_oracle"
    record = {
        "group": desc.notation(), "order": desc.order, "length": args.length,
        "method": method, "value": str(value),
    }
    _emit(args, [record], [f"|M({desc.notation()}, {args.length})| = {value}  [{method}]"])
    return 0


def _cmd_spectrum(args) -> int:
    desc = parse_group(args.group)
    if args.brute_force:
        if not isinstance(desc, Abelian):
            raise ValueError("brute-force spectra enumerate elements of abelian groups only")
        spectrum = order_spectrum_bruteforce(desc.group)
        method = "brute_force"
    else:
        spectrum = order_spectrum(desc)
        method = "structural"
    ordered = sorted(spectrum.entries.items())
    if args.format == "csv":
        rows = [{"group": desc.notation(), "order": spectrum.group_order, "method": method,
                 "d": d, "count": c} for d, c in ordered]
        _write_csv(sys.stdout, rows)
        return 0
    record = {
        "group": desc.notation(), "order": spectrum.group_order, "method": method,
        "spectrum": {str(d): c for d, c in ordered},
    }
    human = [f"order spectrum of {desc.notation()} (order {spectrum.group_order}, {method}):"]
    human += [f"  d = {d}: {c}" for d, c in ordered]
    _emit(args, [record], human)
    return 0


def _cmd_enumerate(args) -> int:
    groups = enumerate_abelian(args.order)
    records = [{"order": args.order, "group": g.notation(),
                "invariant_factors": list(g.invariant_factors)} for g in groups]
    human = [f"abelian groups of order {args.order}: {len(groups)}"]
    human += [f"  {g.notation()}" for g in groups]
    if args.format == "csv":
        rows = [{"order": r["order"], "group": r["group"],
                 "invariant_factors": "x".join(str(f) for f in r["invariant_factors"])}
                for r in records]
        _write_csv(sys.stdout, rows)
        return 0
    _emit(args, records, human)
    return 0


def _cmd_check(args) -> int:
    report = reciprocity_check(parse_group(args.g), parse_group(args.h))
    record = report.to_record()
    agree = "yes" if report.spectra_agree else f"no (first difference at d = {report.witness_divisor})"
    human = [
        f"G = {record['g']} (order {record['order_g']}), H = {record['h']} (order {record['order_h']})",
        f"spectra agree on shared divisors: {agree}",
        f"|M(G, {record['order_h']})| = {report.count_g_at_h}",
        f"|M(H, {record['order_g']})| = {report.count_h_at_g}",
        f"iff consistent: {'yes' if report.iff_consistent else 'NO'}",
    ]
    if args.format == "csv":
        _write_csv(sys.stdout, [record], RECORD_FIELDS)
    else:
        _emit(args, [record], human)
    return 0 if report.iff_consistent else 1


def _load_log(path: str) -> dict:
    """Parse a partial scan log; truncates a torn final line and returns key -> report."""
    if not os.path.exists(path):
        return {}
    existing = {}
    good_bytes = 0
    with open(path, "rb") as fh:
        for raw in fh:
            if not raw.endswith(b"\n"):
                break
            try:
                record = json.loads(raw.decode("utf-8"))
                existing[(record["g"], record["h"])] = report_from_record(record)
            except (ValueError, KeyError):
                break
            good_bytes += len(raw)
    if good_bytes < os.path.getsize(path):
        with open(path, "r+b") as fh:
            fh.truncate(good_bytes)
    return existing


def _run_scan(args, families: tuple[str, ...]) -> int:
    descriptors = family_descriptors(families, args.max_order)
    existing = _load_log(args.out) if args.out else {}
    out_fh = open(args.out, "a", encoding="utf-8") if args.out else None
    stream_stdout = args.out is None and args.format in ("csv", "jsonl")
    csv_writer = None
    if stream_stdout and args.format == "csv":
        csv_writer = csv.writer(sys.stdout, lineterminator="\n")
        csv_writer.writerow(RECORD_FIELDS)
    checked = 0
    violations = []
    try:
        for report in iter_pair_reports(descriptors, existing=existing, parallelism=args.parallelism):
            checked += 1
            if not report.iff_consistent:
                violations.append(report)
            is_new = pair_key(report.g, report.h) not in existing
            if out_fh is not None and is_new:
                out_fh.write(_dump(report.to_record()) + "\n")
            elif stream_stdout:
                record = report.to_record()
                if csv_writer is not None:
                    csv_writer.writerow([_cell(record.get(c)) for c in RECORD_FIELDS])
                else:
                    print(_dump(record))
    finally:
        if out_fh is not None:
            out_fh.close()
    summary = {
        "pairs_checked": checked, "violations": len(violations),
        "max_order": args.max_order, "families": list(families),
    }
    human = [
        f"families: {', '.join(families)}",
        f"pairs checked (order <= {args.max_order}): {checked}",
        f"violations: {len(violations)}",
    ]
    human += [f"  VIOLATION {r.to_record()['g']} vs {r.to_record()['h']}" for r in violations]
    if stream_stdout:
        for line in human:
            print(line, file=sys.stderr)
    elif args.format == "human":
        for line in human:
            print(line)
    elif args.format == "csv":
        _write_csv(sys.stdout, [summary])
    else:
        payload = dict(summary)
        payload["violating_pairs"] = [r.to_record() for r in violations]
        print(_dump(payload))
    return 1 if violations else 0


def _cmd_verify_theorem(args) -> int:
    return _run_scan(args, ("abelian",))


def _cmd_scan_conjecture(args) -> int:
    parts = [p for p in args.families.split(",") if p]
    unknown = set(parts) - set(FAMILIES)
    if unknown:
        raise ValueError(f"unknown families {sorted(unknown)}; valid names: {', '.join(FAMILIES)}")
    families = tuple(f for f in FAMILIES if f in parts)
    if not families:
        raise ValueError("at least one family is required")
    return _run_scan(args, families)


def _lemma_record(instance: LemmaInstance) -> dict:
    params = instance.parameters
    return {
        "lemma_id": instance.lemma_id,
        "m": params.get("m"), "n": params.get("n"),
        "a": params.get("a"), "b": params.get("b"),
        "p": params.get("p"), "q": params.get("q"),
        "lhs": _exact_str(instance.lhs), "rhs": _exact_str(instance.rhs),
    }


def _cmd_lemma(args) -> int:
    runners = {
        "2.1i": lambda: lemma21_grid(args.max, "i"),
        "2.1ii": lambda: lemma21_grid(args.max, "ii"),
        "2.2i": lambda: lemma22_grid(args.max, "i"),
        "2.2ii": lambda: lemma22_grid(args.max, "ii"),
        "struct": lambda: structure_grid(args.max),
    }
    result = runners[args.id]()
    failure_records = [_lemma_record(inst) for inst in result.failures]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, failure_records, LEMMA_CSV_COLUMNS)
    summary = {"lemma": result.lemma, "max": args.max,
               "checked": result.checked, "failures": len(result.failures)}
    if args.format == "human":
        print(f"check {result.lemma} up to {args.max}: {result.checked} instances, "
              f"{len(result.failures)} failures")
        for record in failure_records:
            print(f"  FAIL {record}")
    elif args.format == "csv":
        _write_csv(sys.stdout, failure_records, LEMMA_CSV_COLUMNS)
        print(f"checked: {result.checked}, failures: {len(result.failures)}", file=sys.stderr)
    elif args.format == "jsonl":
        for record in failure_records:
            print(_dump(record))
        print(_dump(summary))
    else:
        payload = dict(summary)
        payload["failing_instances"] = failure_records
        print(_dump(payload))
    return 1 if result.failures else 0


def _cmd_catalan(args) -> int:
    value = rational_catalan(args.n, args.m)
    record = {"n": args.n, "m": args.m, "value": str(value)}
    _emit(args, [record], [f"C({args.n + args.m}, {args.n}) / {args.n + args.m} = {value}"])
    return 0


def _cmd_gapfree(args) -> int:
    result = divisor_gap_free(args.n)
    record = {"n": args.n, "gap_free": result}
    verdict = "has no consecutive divisors above 1" if result else "has consecutive divisors above 1"
    _emit(args, [record], [f"{args.n} {verdict}"])
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="human",
                        help="output format (default: human)")
    common.add_argument("--parallelism", type=_positive_int, default=1,
                        help="worker processes for scans (default: 1)")
    parser = argparse.ArgumentParser(
        prog="zsr",
        description="Exact zero-sum multiset counting over finite groups, "
                    "with reciprocity scans and inequality grids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count zero-sum multisets of a given length")
    p.add_argument("--group", required=True, help="group notation, e.g. C2xC6, D10, Dic3, Q8")
    p.add_argument("--length", type=int, required=True, help="multiset length m")
    p.add_argument("--method", choices=("formula", "dp", "molien"), default="formula")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("spectrum", parents=[common], help="element counts by exact order")
    p.add_argument("--group", required=True)
    p.add_argument("--brute-force", action="store_true",
                   help="enumerate elements instead of using the structural rules")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("enumerate", parents=[common], help="abelian groups of a given order")
    p.add_argument("--order", type=_positive_int, required=True)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("check", parents=[common], help="reciprocity check for one pair")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("verify-theorem", parents=[common],
                       help="scan all abelian pairs up to an order bound")
    p.add_argument("--max-order", type=_positive_int, required=True)
    p.add_argument("--out", help="JSONL log path (append; enables resume)")
    p.set_defaults(func=_cmd_verify_theorem)

    p = sub.add_parser("scan-conjecture", parents=[common],
                       help="scan pairs from chosen families up to an order bound")
    p.add_argument("--families", default=",".join(FAMILIES),
                   help=f"comma-separated subset of {{{','.join(FAMILIES)}}}")
    p.add_argument("--max-order", type=_positive_int, required=True)
    p.add_argument("--out", help="JSONL log path (append; enables resume)")
    p.set_defaults(func=_cmd_scan_conjecture)

    p = sub.add_parser("lemma", parents=[common], help="run one inequality/structure grid")
    p.add_argument("--id", choices=LEMMA_IDS, required=True)
    p.add_argument("--max", type=_positive_int, required=True,
                   help="grid bound (m, n bound for 2.*, order bound for struct)")
    p.add_argument("--out", help="CSV failure report path")
    p.set_defaults(func=_cmd_lemma)

    p = sub.add_parser("catalan", parents=[common], help="C(n+m, n)/(n+m) for coprime n, m")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.set_defaults(func=_cmd_catalan)

    p = sub.add_parser("gapfree", parents=[common],
                       help="test whether n has no consecutive divisors above 1")
    p.add_argument("--n", type=_positive_int, required=True)
    p.set_defaults(func=_cmd_gapfree)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GroupParseError, BudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
