#!/usr/bin/env python3
"""Batch decisions over the committed corpus, census style.

Runs the full decision pipeline over every synthetic fixture in parallel and
prints the per-thickness outcome table plus the failing knots with their
witnesses.  With an exported census corpus under fixtures/census/ the same
command reproduces the published decision tables.

Run from the repository root:  python3 demos/demo_04_census_run.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hfklift.batch import collect_paths, run_batch

ROOT = os.path.join(os.path.dirname(__file__), "..", "fixtures")

target = os.path.join(ROOT, "census")
if not os.path.isdir(target):
    print("(no census corpus committed; demonstrating on the synthetic fixtures)\n")
    target = os.path.join(ROOT, "synthetic")

paths = collect_paths(os.path.join(target, "manifest.json"))
report = run_batch(paths, jobs=os.cpu_count())

for line in report.summary_lines():
    print(line)

print("\nnon-SpliFf rows:")
for row in report.rows:
    if row["status"].startswith("Fails"):
        print(f"  {row['name']:>10}  {row['status']:<12} k = {row['failing_k']}"
              f"  witness gradings {row['witness_gradings']}")

print(f"\nwall time {report.meta['wall_time_s']}s on {report.meta['jobs']} workers")
