from __future__ import annotations

import json

import pytest

from hfklift import (
    ComplexFormatError,
    Generator,
    HVArrow,
    QuotientComplex,
    derived_stats,
    full_to_jsonable,
    lift,
    mirror,
    quotient_from_jsonable,
    quotient_to_jsonable,
    validate,
)

from conftest import all_quotients, synthetic, synthetic_by_tag


def make(gens, arrows, name="t"):
    return QuotientComplex(
        name=name,
        generators=tuple(Generator(i, m, a) for i, (m, a) in enumerate(gens)),
        arrows=tuple(HVArrow(source=s, target=t, u_power=u, v_power=v) for s, t, u, v in arrows),
    )


class TestValidate:
    def test_unknot_valid(self, unknot):
        assert validate(unknot) == []

    def test_cable_fixture_valid(self, cable):
        assert validate(cable) == []
        assert cable.n == 7
        assert len(cable.arrows) == 6

    def test_grading_law_violation(self):
        # target Maslov equals source Maslov: even difference breaks the +1 law
        bad = make([(0, 1), (0, 0)], [(1, 0, 1, 0)])
        assert any(v.startswith("grading-law") for v in validate(bad))

    def test_alexander_law_violation(self):
        bad = make([(0, 2), (-1, 0)], [(1, 0, 1, 0)])
        assert any(v.startswith("alexander-law") for v in validate(bad))

    def test_both_powers_zero_forbidden(self):
        bad = make([(0, 0), (-1, 0)], [(1, 0, 0, 0)])
        assert any(v.startswith("uv-power") for v in validate(bad))

    def test_both_powers_positive_rejected_by_parser(self):
        obj = {
            "name": "d",
            "generators": [
                {"id": 0, "maslov": 0, "alexander": 0},
                {"id": 1, "maslov": 1, "alexander": 1},
            ],
            "arrows": [{"from": 0, "to": 1, "u": 1, "v": 1}],
        }
        with pytest.raises(ComplexFormatError):
            quotient_from_jsonable(obj)

    def test_duplicate_arrow(self):
        bad = make([(0, 1), (-1, 0)], [(1, 0, 1, 0), (1, 0, 1, 0)])
        assert any(v.startswith("duplicate-arrow") for v in validate(bad))

    def test_id_gap(self):
        qc = QuotientComplex(
            name="gap",
            generators=(Generator(0, 0, 0), Generator(2, 1, 1)),
            arrows=(),
        )
        assert any(v.startswith("id-range") for v in validate(qc))

    def test_empty_rejected(self):
        assert any(v.startswith("empty") for v in validate(make([], [])))

    def test_whole_corpus_valid(self):
        for qc in all_quotients():
            assert validate(qc) == [], qc.name


class TestDerivedStats:
    def test_unknot(self, unknot):
        stats = derived_stats(unknot)
        assert stats.thickness == 0
        assert stats.rho == 0
        assert stats.genus_bound == 0
        assert stats.hfk_table == {(0, 0): 1}

    def test_figure_eight_thin(self, figure_eight):
        assert derived_stats(figure_eight).thickness == 0

    def test_cable(self, cable):
        stats = derived_stats(cable)
        assert stats.thickness == 1
        assert stats.rho == 2
        assert stats.genus_bound == 2

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            derived_stats(make([], []))


class TestMirror:
    def test_unknot_fixed_point(self, unknot):
        m = mirror(unknot)
        assert [(g.maslov, g.alexander) for g in m.generators] == [(0, 0)]

    def test_involution_on_corpus(self):
        for qc in all_quotients():
            mm = mirror(mirror(qc))
            assert mm.generators == qc.generators
            assert set(mm.arrows) == set(qc.arrows)

    def test_mirror_is_valid(self):
        for qc in all_quotients():
            assert validate(mirror(qc)) == [], qc.name

    def test_figure_eight_amphichiral_table(self, figure_eight):
        a = derived_stats(figure_eight).hfk_table
        b = derived_stats(mirror(figure_eight)).hfk_table
        assert a == b

    def test_trefoil_s1_transform(self, trefoil, trefoil_left):
        # (S1): dim HFK_d(K, s) = dim HFK_{-d}(mK, -s)
        left = derived_stats(trefoil_left).hfk_table
        mirrored = derived_stats(mirror(trefoil)).hfk_table
        assert left == mirrored

    def test_thickness_and_rho(self):
        for qc in all_quotients():
            stats = derived_stats(qc)
            mstats = derived_stats(mirror(qc))
            assert mstats.thickness == stats.thickness
            assert mstats.rho == stats.thickness - stats.rho


class TestSymmetries:
    def test_s2_on_corpus(self):
        # dim HFK_d(K, s) = dim HFK_{d-2s}(K, -s)
        for qc in all_quotients():
            table = derived_stats(qc).hfk_table
            for (s, d), dim in table.items():
                assert table.get((-s, d - 2 * s), 0) == dim, (qc.name, s, d)

    def test_euler_characteristic_symmetric(self):
        for qc in all_quotients():
            table = derived_stats(qc).hfk_table
            chi: dict[int, int] = {}
            for (s, d), dim in table.items():
                chi[s] = chi.get(s, 0) + (dim if d % 2 == 0 else -dim)
            for s, val in chi.items():
                assert chi.get(-s, 0) == val, (qc.name, s)


class TestSerialization:
    def test_roundtrip(self, cable):
        obj = quotient_to_jsonable(cable)
        back = quotient_from_jsonable(json.loads(json.dumps(obj)))
        assert back.generators == cable.generators
        assert set(back.arrows) == set(cable.arrows)

    def test_unknown_fields_ignored(self):
        obj = {
            "name": "u",
            "generators": [{"id": 0, "maslov": 0, "alexander": 0, "extra": 1}],
            "arrows": [],
            "comment": "ignored",
        }
        qc = quotient_from_jsonable(obj)
        assert qc.n == 1

    def test_canonical_generator_order(self, cable):
        obj = quotient_to_jsonable(cable)
        keys = [(g["alexander"], g["maslov"], g["id"]) for g in obj["generators"]]
        assert keys == sorted(keys)

    def test_full_complex_diagonal_powers(self, cable):
        fc = lift(cable)
        obj = full_to_jsonable(fc)
        diagonals = [a for a in obj["arrows"] if a["u"] > 0 and a["v"] > 0]
        assert len(diagonals) == 2
        for a in diagonals:
            src = next(g for g in obj["generators"] if g["id"] == a["from"])
            tgt = next(g for g in obj["generators"] if g["id"] == a["to"])
            assert a["v"] == a["u"] - (tgt["alexander"] - src["alexander"])

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        from hfklift import load_quotient

        with pytest.raises(ComplexFormatError):
            load_quotient(bad)


def test_synthetic_tags_exist():
    # corpus guarantees the buckets the rest of the suite relies on
    assert len(synthetic_by_tag("th1-rho3-fail")) >= 4
    assert len(synthetic_by_tag("th2-fail")) >= 3
    assert len(synthetic_by_tag("small")) >= 50
    assert synthetic("syn000").n > 0
