from __future__ import annotations

import json

from hfkexport import ExportJob, census_manifest, export

from conftest import CABLE_PD


class TestCensusManifest:
    def test_max_three_contains_only_trefoil(self, fake_engine):
        assert census_manifest(fake_engine, 3) == ["K3a1"]

    def test_max_zero_empty(self, fake_engine):
        assert census_manifest(fake_engine, 0) == []

    def test_deterministic_order(self, fake_engine):
        a = census_manifest(fake_engine, 12)
        b = census_manifest(fake_engine, 12)
        assert a == b


class TestExport:
    def test_census_job(self, fake_engine, tmp_path):
        job = ExportJob(out_dir=str(tmp_path), max_crossings=6)
        manifest = export(job, fake_engine)
        ok = [e for e in manifest["entries"] if e["status"] == "ok"]
        assert [e["name"] for e in ok] == ["3a1", "4a1", "5a1", "6a1"]
        for e in ok:
            path = tmp_path / e["file"]
            assert path.exists()
            data = json.loads(path.read_text())
            assert data["name"] == e["name"]
        assert manifest["counts"]["ok"] == 4
        assert (tmp_path / "manifest.json").exists()

    def test_trefoil_dimension(self, fake_engine, tmp_path):
        job = ExportJob(out_dir=str(tmp_path), names=["K3a1"])
        manifest = export(job, fake_engine)
        entry = manifest["entries"][0]
        assert entry["generators"] == 3  # total HFK dimension of the trefoil

    def test_engine_failure_recorded_not_fatal(self, fake_engine, tmp_path):
        fake_engine.failures.add("K4a1")
        job = ExportJob(out_dir=str(tmp_path), max_crossings=5)
        manifest = export(job, fake_engine)
        by_name = {e["name"]: e for e in manifest["entries"]}
        assert by_name["4a1"]["status"] == "skipped"
        assert "engine" in by_name["4a1"]["reason"]
        assert by_name["3a1"]["status"] == "ok"
        assert by_name["5a1"]["status"] == "ok"

    def test_mirrors_flag(self, fake_engine, tmp_path):
        job = ExportJob(out_dir=str(tmp_path), names=["K3a1"], include_mirrors=True)
        manifest = export(job, fake_engine)
        names = [e["name"] for e in manifest["entries"] if e["status"] == "ok"]
        assert names == ["3a1", "m3a1"]
        mirrored = json.loads((tmp_path / "m3a1.json").read_text())
        gradings = {(g["alexander"], g["maslov"]) for g in mirrored["generators"]}
        assert gradings == {(-1, 0), (0, 1), (1, 2)}  # (S1) transform of the trefoil

    def test_thickness_filter(self, fake_engine, tmp_path):
        job = ExportJob(out_dir=str(tmp_path), max_crossings=9, thickness=1)
        manifest = export(job, fake_engine)
        for e in manifest["entries"]:
            if e["status"] == "ok":
                assert e["thickness"] == 1
        assert manifest["counts"]["filtered"] >= 1

    def test_diagram_file(self, fake_engine, tmp_path):
        pd_file = tmp_path / "cable.pd"
        pd_file.write_text(CABLE_PD + "\n")
        job = ExportJob(out_dir=str(tmp_path / "out"), diagram_files=[str(pd_file)])
        manifest = export(job, fake_engine)
        entry = manifest["entries"][0]
        assert entry["status"] == "ok"
        assert entry["generators"] == 7

    def test_schema_resolution_recorded(self, fake_engine, tmp_path):
        job = ExportJob(out_dir=str(tmp_path), names=["K3a1"])
        manifest = export(job, fake_engine)
        schema = manifest["entries"][0]["schema"]
        assert schema["grading_order"] == "alexander-first"
        assert schema["arrow_orientation"] == "key-is-source-target"

    def test_manifest_lists_engine_version(self, fake_engine, tmp_path):
        job = ExportJob(out_dir=str(tmp_path), names=["K3a1"])
        manifest = export(job, fake_engine)
        assert manifest["engine"]["engine"] == "fake"
