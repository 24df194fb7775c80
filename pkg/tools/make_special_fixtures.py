#!/usr/bin/env python3
"""Write the hand-checked fixture files under fixtures/special/.

These are standard small complexes whose gradings and arrows are fixed by
the grading laws plus the usual normalization (both the column and the row
homology of the full complex sit in grading zero): the unknot, both
trefoils, the figure-eight knot, and the 7-generator (2,-1)-cable of the
left-handed trefoil whose lift carries exactly two diagonal arrows.

Run from the repository root:  python3 tools/make_special_fixtures.py
"""

from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hfklift import Generator, HVArrow, QuotientComplex, dump_quotient, validate  # noqa: E402

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "fixtures", "special")


def qc(name: str, gens: list[tuple[int, int]], arrows: list[tuple[int, int, int, int]]):
    return QuotientComplex(
        name=name,
        generators=tuple(Generator(i, m, a) for i, (m, a) in enumerate(gens)),
        arrows=tuple(HVArrow(source=s, target=t, u_power=u, v_power=v) for s, t, u, v in arrows),
    )


# (maslov, alexander) per generator; arrows are (source, target, u, v)
FIXTURES = [
    qc("unknot", [(0, 0)], []),
    qc(
        "trefoil-right",
        [(0, 1), (-1, 0), (-2, -1)],
        [(1, 0, 1, 0), (1, 2, 0, 1)],
    ),
    qc(
        "trefoil-left",
        [(0, -1), (1, 0), (2, 1)],
        [(0, 1, 1, 0), (2, 1, 0, 1)],
    ),
    qc(
        "figure-eight",
        [(1, 1), (0, 0), (0, 0), (-1, -1), (0, 0)],
        [(1, 0, 1, 0), (1, 3, 0, 1), (0, 2, 0, 1), (3, 2, 1, 0)],
    ),
    # seven generators, six horizontal/vertical arrows; the lift adds the two
    # diagonal arrows x2 -> x1 and x5 -> x4 (both u v)
    qc(
        "cable(2,-1)-left-trefoil",
        [(4, 2), (3, 1), (2, 1), (1, 0), (1, -1), (0, -1), (0, -2)],
        [
            (0, 1, 0, 1),
            (5, 1, 2, 0),
            (2, 4, 0, 2),
            (6, 4, 1, 0),
            (3, 5, 0, 1),
            (3, 2, 1, 0),
        ],
    ),
]


def main() -> None:
    os.makedirs(OUT_DIR, exist_ok=True)
    for fixture in FIXTURES:
        assert validate(fixture) == [], (fixture.name, validate(fixture))
        fname = fixture.name.replace("(", "_").replace(")", "").replace(",", "_") + ".json"
        dump_quotient(fixture, os.path.join(OUT_DIR, fname))
        print("wrote", fname)


if __name__ == "__main__":
    main()
