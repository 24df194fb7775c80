from __future__ import annotations

import pytest

from hfklift import (
    InvalidComplexError,
    Generator,
    HVArrow,
    QuotientComplex,
    decide,
    mirror,
    shortcut_thickness_one,
    shortcut_thickness_two,
    shortcut_thickness_zero,
)

from conftest import all_quotients, synthetic, synthetic_by_tag, synthetic_entries


class TestShortcuts:
    def test_thickness_zero(self, unknot, trefoil, figure_eight):
        assert shortcut_thickness_zero() == "SpliffBoth"
        for qc in (unknot, trefoil, figure_eight):
            v = decide(qc)
            assert v.status == "SpliffBoth"
            assert v.method_trace == ("thickness-0 shortcut",)

    def test_thickness_one_rho_bound(self):
        assert shortcut_thickness_one(1)
        assert shortcut_thickness_one(2)
        assert not shortcut_thickness_one(3)

    def test_thickness_two_conditions(self):
        # rho = 3: k = 0 is rho - 3, k = ... odd/even parity rules
        table = {(0, 3): 1, (0, 1): 1, (1, 4): 1, (2, 4): 0}
        out = shortcut_thickness_two(table, rho=3, genus=2)
        # k=0: k+rho odd, top (0,3) nonzero, k == rho-3 so mid rule barred
        assert out[0] is False
        # k=1: k+rho even, k != rho-4 impossible... rho-4 = -1: allowed; top (1,4) nonzero, mid (1,2) zero
        assert out[1] is True

    def test_k_equals_rho_minus_4_never_shortcut(self):
        # even k+rho at k = rho-4: undecided regardless of vanishing
        table = {}
        out = shortcut_thickness_two(table, rho=4, genus=1)
        assert out[0] is False  # k = 0 = rho - 4, both groups vanish, still barred

    def test_k_rho_minus_3_odd_top_zero_passes(self):
        out = shortcut_thickness_two({}, rho=3, genus=0)
        assert out[0] is True  # top group vanishes


class TestDecide:
    def test_invalid_input_raises(self):
        bad = QuotientComplex(
            name="bad",
            generators=(Generator(0, 0, 0), Generator(1, 0, 0)),
            arrows=(HVArrow(source=0, target=1, u_power=1, v_power=0),),
        )
        with pytest.raises(InvalidComplexError):
            decide(bad)

    def test_cable_spliff_both(self, cable):
        v = decide(cable)
        assert v.status == "SpliffBoth"
        assert v.thickness == 1 and v.rho == 2 and v.rho_mirror == -1

    def test_failing_fixture_has_witness(self):
        name = synthetic_by_tag("th1-rho3-fail")[0]
        v = decide(synthetic(name))
        assert v.status in ("FailsKnot", "FailsMirror")
        assert v.failing_k is not None
        assert v.witness_gradings is not None
        d1, d2 = v.witness_gradings
        assert (d1 - d2) % 2 == 0

    def test_thickness_one_only_k_rho_minus_3(self):
        # trace shows a homology check only at k = rho - 3 on the high side
        for name in synthetic_by_tag("th1-rho3-pass")[:3] + synthetic_by_tag("th1-rho3-fail")[:3]:
            qc = synthetic(name)
            v = decide(qc)
            rho, rho_m = v.rho, v.rho_mirror
            for line in v.method_trace:
                if "homology k=" in line:
                    k = int(line.split("homology k=")[1].split()[0])
                    side_rho = rho if line.startswith("K") else rho_m
                    assert k == side_rho - 3, line

    def test_out_of_scope_thickness(self):
        name = synthetic_by_tag("th3plus")[0]
        v = decide(synthetic(name))
        assert v.status == "Unknown"
        assert v.unknown_reason == "thickness out of scope"

    def test_kernel_cap_unknown(self):
        for entry in synthetic_entries():
            if entry["thickness"] == 2 and entry.get("lifted") and entry["kernel_dim"] >= 2:
                v = decide(synthetic(entry["name"]), max_kernel_dim=entry["kernel_dim"] - 1)
                assert v.status == "Unknown"
                assert v.unknown_reason == "kernel too large"
                assert v.kernel_dim == entry["kernel_dim"]
                return
        pytest.fail("no suitable fixture")

    def test_mirror_involution(self):
        sample = [e["name"] for e in synthetic_entries() if e["thickness"] in (1, 2)][:12]
        for name in sample:
            qc = synthetic(name)
            v = decide(qc)
            vm = decide(mirror(qc))
            if v.status.startswith("Unknown"):
                assert vm.status.startswith("Unknown")
                continue
            # the per-side failure sets swap; statuses follow them (when both
            # sides fail, both orientations report FailsKnot)
            keys = lambda fs: sorted((k, w) for k, w, _ in fs)
            assert keys(vm.failures_knot) == keys(v.failures_mirror), name
            assert keys(vm.failures_mirror) == keys(v.failures_knot), name
            assert vm.rho == v.rho_mirror and vm.rho_mirror == v.rho

    def test_mirror_involution_both_sides_failing(self):
        # thickness-two complexes can fail on both sides; the status then
        # stays FailsKnot in both orientations while the side sets swap
        from make_synthetic_fixtures import Assembly, add_staircase, add_box, add_box_pair, to_quotient

        asm = Assembly()
        add_staircase(asm, [1, 2], dual=True)
        add_box(asm, 1, 1, 0, 3)
        add_box_pair(asm, 2, 1, 0, 1)
        qc = to_quotient(asm, "bothfail")
        v = decide(qc)
        vm = decide(mirror(qc))
        if v.failures_knot and v.failures_mirror:
            assert v.status == "FailsKnot" and vm.status == "FailsKnot"
            keys = lambda fs: sorted((k, w) for k, w, _ in fs)
            assert keys(vm.failures_knot) == keys(v.failures_mirror)

    def test_shortcut_soundness_verification_mode(self):
        checked = 0
        for entry in synthetic_entries():
            if entry["thickness"] != 2 or entry["kernel_dim"] > 4:
                continue
            v = decide(synthetic(entry["name"]), verify_shortcuts=True)
            assert not v.status.startswith("Unknown") or v.unknown_reason != "shortcut"
            checked += 1
            if checked >= 6:
                break
        assert checked >= 4

    def test_th2_shortcut_no_lifting(self):
        name = synthetic_by_tag("th2-shortcut")[0]
        v = decide(synthetic(name))
        assert v.status == "SpliffBoth"
        assert not any("lift(s)" in t for t in v.method_trace)
        assert v.kernel_dim is None

    def test_th2_per_lift_agreement_flag(self):
        for entry in synthetic_entries():
            if entry["thickness"] == 2 and entry.get("lifted") and 1 <= entry["kernel_dim"] <= 4:
                v = decide(synthetic(entry["name"]))
                assert v.per_lift_agreement is True
                assert v.kernel_dim == entry["kernel_dim"]
                return
        pytest.fail("no suitable fixture")


class TestVerdictSerialization:
    def test_schema(self, cable):
        obj = decide(cable).to_jsonable()
        assert set(obj) == {
            "name", "thickness", "rho", "rho_mirror", "status", "failing_k",
            "witness_gradings", "kernel_dim", "per_lift_agreement", "method_trace",
        }

    def test_unknown_reason_embedded(self):
        name = synthetic_by_tag("th3plus")[0]
        obj = decide(synthetic(name)).to_jsonable()
        assert obj["status"] == "Unknown(thickness out of scope)"


def test_every_corpus_verdict_total():
    # decide never raises on valid inputs; every status is one of the four
    for qc in all_quotients():
        v = decide(qc)
        assert v.status in ("SpliffBoth", "FailsKnot", "FailsMirror", "Unknown")
