"""Export jobs: iterate knots, translate engine payloads, emit fixture files.

Every emitted file is checked against the consumer's verify command (an
external interface of the fixture format); per-knot engine failures are
recorded in the manifest as skipped entries and never abort a job.
"""

from __future__ import annotations

import json
import logging
import os
import re
import subprocess
from dataclasses import dataclass, field

from .engine import TranslationError, translate_payload

log = logging.getLogger("hfkexport.export")

VERIFY_COMMAND = ["hfklift", "verify"]


@dataclass
class ExportJob:
    out_dir: str
    max_crossings: int | None = None
    min_crossings: int = 0
    nonalternating_only: bool = False
    names: list[str] = field(default_factory=list)
    diagram_files: list[str] = field(default_factory=list)
    include_mirrors: bool = False
    thickness: int | None = None  # keep only knots of this thickness
    verify: bool = True


def display_name(census_name: str) -> str:
    return census_name[1:] if census_name.startswith("K") else census_name


def crossings_of(name: str) -> int | None:
    m = re.match(r"^m?K?(\d+)[an_]", name)
    return int(m.group(1)) if m else None


def census_manifest(engine, max_crossings: int, nonalternating_only: bool = False) -> list[str]:
    """Deterministic census name list through the crossing bound."""
    if max_crossings < 3:
        return []
    return engine.census_names(max_crossings, nonalternating_only)


def _emit(fixture: dict, path: str) -> None:
    fixture = dict(fixture)
    fixture["generators"] = sorted(
        fixture["generators"], key=lambda g: (g["alexander"], g["maslov"], g["id"])
    )
    fixture["arrows"] = sorted(fixture["arrows"], key=lambda a: (a["from"], a["to"]))
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(fixture, fh, indent=1)
        fh.write("\n")


def _payload_thickness(fixture: dict) -> int:
    deltas = [g["maslov"] - g["alexander"] for g in fixture["generators"]]
    return max(deltas) - min(deltas)


def _safe_filename(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", name) + ".json"


def export(job: ExportJob, engine) -> dict:
    """Run a job; returns the manifest (also written to out_dir/manifest.json)."""
    os.makedirs(job.out_dir, exist_ok=True)
    specs: list[tuple[str, str]] = []  # (engine spec, display name)
    if job.max_crossings is not None:
        for census in census_manifest(engine, job.max_crossings, job.nonalternating_only):
            name = display_name(census)
            c = crossings_of(name)
            if c is not None and c < job.min_crossings:
                continue
            specs.append((census, name))
    for name in job.names:
        specs.append((name, display_name(name)))
    for path in job.diagram_files:
        with open(path, encoding="utf-8") as fh:
            pd = fh.read().strip()
        specs.append((pd, os.path.splitext(os.path.basename(path))[0]))

    entries = []
    written = []
    for spec, name in specs:
        for mirrored in ([False, True] if job.include_mirrors else [False]):
            out_name = ("m" + name) if mirrored else name
            try:
                raw = engine.mirror_payload(spec) if mirrored else engine.hfk_payload(spec)
                fixture, resolution = translate_payload(raw, out_name)
            except TranslationError as exc:
                entries.append({"name": out_name, "status": "skipped", "reason": str(exc)})
                continue
            except Exception as exc:  # noqa: BLE001 -- engine hiccups must not abort
                log.warning("%s: engine failure: %s", out_name, exc)
                entries.append({"name": out_name, "status": "skipped",
                                "reason": f"engine: {exc}"})
                continue
            thickness = _payload_thickness(fixture)
            if job.thickness is not None and thickness != job.thickness:
                entries.append({"name": out_name, "status": "filtered",
                                "reason": f"thickness {thickness}"})
                continue
            fname = _safe_filename(out_name)
            _emit(fixture, os.path.join(job.out_dir, fname))
            written.append(fname)
            entries.append({
                "name": out_name,
                "file": fname,
                "crossings": crossings_of(out_name),
                "generators": len(fixture["generators"]),
                "thickness": thickness,
                "schema": resolution,
                "status": "ok",
            })

    verify_failures = _verify_files(job, written) if job.verify and written else []
    for entry in entries:
        if entry.get("file") in verify_failures:
            entry["status"] = "verify-failed"

    manifest = {
        "engine": _engine_version(engine),
        "job": {
            "max_crossings": job.max_crossings,
            "min_crossings": job.min_crossings,
            "nonalternating_only": job.nonalternating_only,
            "include_mirrors": job.include_mirrors,
            "thickness": job.thickness,
        },
        "counts": _counts(entries),
        "entries": entries,
    }
    with open(os.path.join(job.out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=1)
    return manifest


def _engine_version(engine) -> dict:
    try:
        return engine.version()
    except Exception:  # noqa: BLE001
        return {"engine": type(engine).__name__}


def _counts(entries: list[dict]) -> dict:
    out: dict = {"ok": 0, "skipped": 0, "filtered": 0, "verify-failed": 0, "by_crossings": {}}
    for e in entries:
        out[e["status"]] = out.get(e["status"], 0) + 1
        if e["status"] == "ok" and e.get("crossings") is not None:
            key = str(e["crossings"])
            out["by_crossings"][key] = out["by_crossings"].get(key, 0) + 1
    return out


def _verify_files(job: ExportJob, written: list[str]) -> set[str]:
    """Run the consumer's verify command over the emitted files in batches."""
    failures: set[str] = set()
    batch = 200
    for start in range(0, len(written), batch):
        chunk = written[start:start + batch]
        paths = [os.path.join(job.out_dir, f) for f in chunk]
        try:
            proc = subprocess.run(
                VERIFY_COMMAND + paths, capture_output=True, text=True, check=False
            )
        except FileNotFoundError:
            log.warning("verify command %s not found; skipping validation", VERIFY_COMMAND)
            return set()
        if proc.returncode != 0:
            for line in proc.stdout.splitlines():
                if ": ok" not in line and ":" in line:
                    failures.add(os.path.basename(line.split(":", 1)[0]))
    return failures
