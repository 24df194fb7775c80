from __future__ import annotations

import json
import os
import sys

import pytest

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SPECIAL_DIR = os.path.join(REPO, "fixtures", "special")
SYNTHETIC_DIR = os.path.join(REPO, "fixtures", "synthetic")
CENSUS_DIR = os.path.join(REPO, "fixtures", "census")

sys.path.insert(0, os.path.join(REPO, "tools"))

from hfklift import (  # noqa: E402
    QuotientComplex,
    build_hv,
    linear_subsystem,
    load_quotient,
    placeholders,
    solve,
    square_to_system,
    squares_to_zero,
    substitute,
)


def special(name: str) -> QuotientComplex:
    return load_quotient(os.path.join(SPECIAL_DIR, name + ".json"))


def synthetic_entries() -> list[dict]:
    with open(os.path.join(SYNTHETIC_DIR, "manifest.json"), encoding="utf-8") as fh:
        return json.load(fh)["entries"]


def synthetic(name: str) -> QuotientComplex:
    return load_quotient(os.path.join(SYNTHETIC_DIR, name + ".json"))


def synthetic_by_tag(tag: str) -> list[str]:
    return [e["name"] for e in synthetic_entries() if tag in e["tags"]]


def all_quotients() -> list[QuotientComplex]:
    out = [special(n) for n in ("unknot", "trefoil-right", "trefoil-left",
                                "figure-eight", "cable_2_-1-left-trefoil")]
    out.extend(synthetic(e["name"]) for e in synthetic_entries())
    return out


def brute_force_solutions(qc: QuotientComplex) -> set[int]:
    """Every placeholder assignment whose substituted differential squares to zero."""
    phs = placeholders(qc)
    assert len(phs) <= 16, "brute force oracle is for small systems"
    return {
        a for a in range(1 << len(phs))
        if squares_to_zero(substitute(qc, a))
    }


def affine_solutions(qc: QuotientComplex) -> tuple[set[int], bool]:
    """Solution set of the linear subsystem; second value: system fully linear."""
    system = square_to_system(build_hv(qc), placeholders(qc))
    sol = solve(linear_subsystem(system))
    return set(sol.assignments()), not system.nonlinear_terms


@pytest.fixture
def unknot() -> QuotientComplex:
    return special("unknot")


@pytest.fixture
def trefoil() -> QuotientComplex:
    return special("trefoil-right")


@pytest.fixture
def trefoil_left() -> QuotientComplex:
    return special("trefoil-left")


@pytest.fixture
def figure_eight() -> QuotientComplex:
    return special("figure-eight")


@pytest.fixture
def cable() -> QuotientComplex:
    return special("cable_2_-1-left-trefoil")
