#!/usr/bin/env python3
"""Recomputes benchmark summary statistics from the emitted CSV.

Uses the standard library's statistics module (exact rational arithmetic)
and compares against the summary JSON written next to the CSV. Exits 1 if
any mean or sample standard deviation differs by more than 1e-9 relative.

    python3 tests/oracle/bench_stats.py bench.csv [bench.summary.json]
"""
import csv
import json
import pathlib
import statistics
import sys

METRICS = ["wall_time_ms", "cpu_time_ms", "peak_memory_bytes", "records_extracted"]
TOLERANCE = 1e-9


def rel_error(expected, actual):
    scale = max(abs(expected), abs(actual))
    return 0.0 if scale == 0 else abs(expected - actual) / scale


def main(argv):
    csv_path = pathlib.Path(argv[1])
    summary_path = pathlib.Path(argv[2]) if len(argv) > 2 else csv_path.with_suffix(".summary.json")
    tiers = {}
    with csv_path.open(newline="") as f:
        for row in csv.DictReader(f):
            tiers.setdefault(row["tier"], []).append(row)
    summary = json.loads(summary_path.read_text())
    reported = {t["tier"]: t for t in summary["tiers"]}

    worst = 0.0
    failures = []
    if list(reported) != list(tiers):
        failures.append(f"tier order {list(reported)} != {list(tiers)}")
    for tier, rows in tiers.items():
        for metric in METRICS:
            values = [float(r[metric]) for r in rows]
            mean = statistics.mean(values)
            std = statistics.stdev(values) if len(values) > 1 else 0.0
            got = reported[tier][metric]
            for name, want, have in (("mean", mean, got["mean"]), ("std", std, got["std"])):
                err = rel_error(want, have)
                worst = max(worst, err)
                if err > TOLERANCE:
                    failures.append(f"{tier} {metric} {name}: recomputed {want!r}, reported {have!r}")
    rows = sum(len(r) for r in tiers.values())
    print(f"{rows} rows, {len(tiers)} tiers, max relative error {worst:.2e}")
    for f in failures:
        print("MISMATCH", f)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
