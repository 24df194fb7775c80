"""Census-scale batch runs: parallel decide() over fixture files, CSV/JSON reports.

Knots are independent, so the pool parallelizes across files; per-knot work
stays single-threaded.  Reports are sorted by knot name, making the CSV body
byte-identical regardless of worker count.  Individual failures never abort a
batch: they become Unknown rows carrying the error text.
"""

from __future__ import annotations

import io
import json
import logging
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .lift import DEFAULT_KERNEL_CAP
from .model import ComplexFormatError, load_quotient, validate
from .spliff import decide

log = logging.getLogger("hfklift.batch")

CSV_COLUMNS = [
    "name", "crossings", "thickness", "rho", "status",
    "failing_k", "kernel_dim", "method_trace",
]

_NAME_RE = re.compile(r"^m?K?(\d+)[an_]")


def crossings_from_name(name: str) -> int | None:
    m = _NAME_RE.match(name)
    return int(m.group(1)) if m else None


def evaluate_file(path: str, max_kernel_dim: int, fallback_n: int | None) -> dict:
    """Decide one fixture file; errors become Unknown rows, never exceptions."""
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        qc = load_quotient(path)
        if qc.name:
            name = qc.name
        violations = validate(qc)
        if violations:
            return _unknown_row(name, f"invalid: {violations[0]}")
        verdict = decide(qc, max_kernel_dim=max_kernel_dim, fallback_n=fallback_n)
    except ComplexFormatError as exc:
        return _unknown_row(name, f"unreadable: {exc}")
    except Exception as exc:  # noqa: BLE001 -- batch rows must be total
        log.warning("%s: %s", path, exc)
        return _unknown_row(name, f"error: {exc}")
    row = verdict.to_jsonable()
    row["crossings"] = crossings_from_name(name)
    return row


def _unknown_row(name: str, reason: str) -> dict:
    return {
        "name": name,
        "thickness": None,
        "rho": None,
        "rho_mirror": None,
        "status": f"Unknown({reason})",
        "failing_k": None,
        "witness_gradings": None,
        "kernel_dim": None,
        "per_lift_agreement": None,
        "method_trace": "",
        "crossings": crossings_from_name(name),
    }


@dataclass
class BatchReport:
    rows: list[dict]
    totals: dict[str, int]
    per_crossing: dict
    meta: dict

    def to_jsonable(self) -> dict:
        return {
            "meta": self.meta,
            "totals": self.totals,
            "per_crossing": self.per_crossing,
            "rows": self.rows,
        }

    def csv_body(self) -> str:
        out = io.StringIO()
        out.write(",".join(CSV_COLUMNS) + "\n")
        for row in self.rows:
            cells = []
            for col in CSV_COLUMNS:
                val = row.get(col)
                text = "" if val is None else str(val)
                if "," in text or '"' in text:
                    text = '"' + text.replace('"', '""') + '"'
                cells.append(text)
            out.write(",".join(cells) + "\n")
        return out.getvalue()

    def summary_lines(self) -> list[str]:
        lines = [
            f"knots: {sum(self.totals.values())}  "
            + "  ".join(f"{k}: {v}" for k, v in sorted(self.totals.items()))
        ]
        if self.per_crossing:
            lines.append("crossings  SpliffBoth  non-SpliFf  Unknown")
            for c in sorted(self.per_crossing, key=lambda x: (x is None, x)):
                b = self.per_crossing[c]
                lines.append(
                    f"{c if c is not None else '?':>9}  "
                    f"{b.get('SpliffBoth', 0):>10}  {b.get('Fails', 0):>10}  "
                    f"{b.get('Unknown', 0):>7}"
                )
        return lines


def _status_bucket(status: str) -> str:
    if status.startswith("Fails"):
        return "Fails"
    if status.startswith("Unknown"):
        return "Unknown"
    return status


def run_batch(
    paths: list[str],
    jobs: int | None = None,
    max_kernel_dim: int = DEFAULT_KERNEL_CAP,
    fallback_n: int | None = None,
) -> BatchReport:
    start = time.monotonic()
    jobs = jobs or os.cpu_count() or 1
    paths = sorted(paths)
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(
                    _worker,
                    ((p, max_kernel_dim, fallback_n) for p in paths),
                    chunksize=max(1, len(paths) // (jobs * 8) or 1),
                )
            )
    else:
        rows = [evaluate_file(p, max_kernel_dim, fallback_n) for p in paths]
    rows.sort(key=lambda r: r["name"])

    totals: dict[str, int] = {}
    per_crossing: dict = {}
    for row in rows:
        bucket = _status_bucket(row["status"])
        totals[bucket] = totals.get(bucket, 0) + 1
        c = row.get("crossings")
        per_crossing.setdefault(c, {})
        per_crossing[c][bucket] = per_crossing[c].get(bucket, 0) + 1

    meta = {
        "wall_time_s": round(time.monotonic() - start, 3),
        "jobs": jobs,
        "max_kernel_dim": max_kernel_dim,
        "fallback_n": fallback_n,
        "inputs": len(paths),
    }
    return BatchReport(rows=rows, totals=totals, per_crossing=per_crossing, meta=meta)


def _worker(args: tuple) -> dict:
    path, max_kernel_dim, fallback_n = args
    return evaluate_file(path, max_kernel_dim, fallback_n)


def collect_paths(target: str) -> list[str]:
    """Fixture files from a directory, a manifest JSON, or a single file."""
    if os.path.isdir(target):
        return sorted(
            os.path.join(target, f)
            for f in os.listdir(target)
            if f.endswith(".json") and f != "manifest.json"
        )
    if target.endswith("manifest.json"):
        with open(target, encoding="utf-8") as fh:
            manifest = json.load(fh)
        base = os.path.dirname(target)
        entries = manifest["entries"] if isinstance(manifest, dict) else manifest
        out = []
        for e in entries:
            if isinstance(e, dict) and e.get("status") in ("skipped", "filtered", "verify-failed"):
                continue
            rel = e["file"] if isinstance(e, dict) else e
            out.append(os.path.join(base, rel))
        return sorted(out)
    return [target]
