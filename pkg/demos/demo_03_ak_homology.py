#!/usr/bin/env python3
"""Region homology with its U-action: truncated towers, V_k, length-one counts.

Run from the repository root:  python3 demos/demo_03_ak_homology.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hfklift import (
    ak_report,
    count_length_one,
    derived_stats,
    fallback_vk,
    lift,
    load_quotient,
    truncated_homology,
)

ROOT = os.path.join(os.path.dirname(__file__), "..", "fixtures")

print("=== The right-handed trefoil at level k = 0 ===\n")
qc = load_quotient(os.path.join(ROOT, "special", "trefoil-right.json"))
fc = lift(qc)
gh = truncated_homology(fc, 0)
print("homology of the region {i < 0 and j >= 0}:", gh.dims)
print("length-one summands:", count_length_one(gh))
print("V_0 from the fallback model:", fallback_vk(fc, 0, rho=-1))
print("\nThe single class at grading -2 is the truncated tower with bottom")
print("-2 V_0 = -2; it is not part of the reduced module.")

print("\n=== A failing thickness-one complex ===\n")
import json  # noqa: E402

manifest = json.load(open(os.path.join(ROOT, "synthetic", "manifest.json")))
entry = next(e for e in manifest["entries"] if "th1-rho3-fail" in e["tags"])
qc2 = load_quotient(os.path.join(ROOT, "synthetic", entry["file"]))
stats = derived_stats(qc2)
fc2 = lift(qc2)
k = stats.rho - 3
rep = ak_report(fc2, k, thickness=stats.thickness, rho=stats.rho)
print(f"{entry['name']}: thickness {stats.thickness}, rho {stats.rho}, level k = {k}")
print("graded dimensions:", rep.dims)
print("length-one counts:", rep.count_1)
print("splitting property holds:", rep.spliff)
print("\nTwo distinct even gradings carry boxes killed by U, so no splitting")
print("into a single odd and a single even box family exists at this level.")

print("\n=== Reports across all levels of the cable ===\n")
qc3 = load_quotient(os.path.join(ROOT, "special", "cable_2_-1-left-trefoil.json"))
stats3 = derived_stats(qc3)
fc3 = lift(qc3)
for k in range(0, stats3.genus_bound + 1):
    rep = ak_report(fc3, k, thickness=stats3.thickness, rho=stats3.rho)
    print(f"k = {k}: dims {rep.dims}  count_1 {rep.count_1}  spliff {rep.spliff}")
