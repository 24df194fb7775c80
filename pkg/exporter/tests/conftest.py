from __future__ import annotations

import pytest


def staircase_payload(steps: list[int], dual: bool) -> dict:
    """An engine-style payload for a palindromic staircase complex.

    Generators map ids to (alexander, maslov) pairs and differentials are
    keyed (source, target), matching the engine's documented conventions.
    """
    a = steps
    b = list(reversed(steps))
    gens = [(0, sum(b))]  # (maslov, alexander)
    for i in range(len(steps)):
        m, al = gens[-1]
        gens.append((m + 1 - 2 * a[i], al - a[i]))
        m, al = gens[-1]
        gens.append((m - 1, al - b[i]))
    arrows = []
    for i in range(len(steps)):
        arrows.append((2 * i + 1, 2 * i))
        arrows.append((2 * i + 1, 2 * i + 2))
    if dual:
        gens = [(-m, -al) for (m, al) in gens]
        arrows = [(t, s) for (s, t) in arrows]
    return {
        "modulus": 2,
        "total_rank": len(gens),
        "generators": {i: (al, m) for i, (m, al) in enumerate(gens)},
        "differentials": {key: 1 for key in arrows},
    }


def mirror_payload(payload: dict) -> dict:
    """(S1) transform of a payload: gradings negated, arrows reversed."""
    return {
        **payload,
        "generators": {i: (-al, -m) for i, (al, m) in payload["generators"].items()},
        "differentials": {(t, s): c for (s, t), c in payload["differentials"].items()},
    }


TREFOIL = {
    "modulus": 2,
    "total_rank": 3,
    "generators": {0: (1, 0), 1: (0, -1), 2: (-1, -2)},
    "differentials": {(1, 0): 1, (1, 2): 1},
}

FIGURE_EIGHT = {
    "modulus": 2,
    "total_rank": 5,
    "generators": {0: (1, 1), 1: (0, 0), 2: (0, 0), 3: (-1, -1), 4: (0, 0)},
    "differentials": {(1, 0): 1, (1, 3): 1, (0, 2): 1, (3, 2): 1},
}

# quotient of the (2,-1)-cable of the left-handed trefoil: seven generators
CABLE = {
    "modulus": 2,
    "total_rank": 7,
    "generators": {
        0: (2, 4), 1: (1, 3), 2: (1, 2), 3: (0, 1), 4: (-1, 1), 5: (-1, 0), 6: (-2, 0),
    },
    "differentials": {
        (0, 1): 1, (5, 1): 1, (2, 4): 1, (6, 4): 1, (3, 5): 1, (3, 2): 1,
    },
}

CABLE_PD = "PD[(1,4,2,5),(3,8,4,9),(5,12,6,13)]"  # stand-in diagram spec


class FakeEngine:
    """Offline engine serving pinned payloads in the documented schema."""

    def __init__(self):
        self._by_name: dict[str, dict] = {
            "K3a1": TREFOIL,
            "K4a1": FIGURE_EIGHT,
            CABLE_PD: CABLE,
        }
        # a census of staircase knots: K{c}a1 for c = 5..26
        for c in range(5, 27):
            steps = [1] * (1 + c % 3) if c % 4 else [1, 2]
            self._by_name[f"K{c}a1"] = staircase_payload(steps, dual=c % 2 == 0)
        self.failures: set[str] = set()

    def version(self) -> dict:
        return {"engine": "fake", "schema": "generators=(alexander,maslov); key=(source,target)"}

    def census_names(self, max_crossings: int, nonalternating_only: bool = False):
        names = []
        for c in range(3, max_crossings + 1):
            name = f"K{c}a1"
            if name in self._by_name and not nonalternating_only:
                names.append(name)
        return names

    def hfk_payload(self, spec: str) -> dict:
        key = spec if spec in self._by_name else "K" + spec
        if spec in self.failures or key in self.failures:
            raise RuntimeError("engine exploded")
        if key not in self._by_name:
            raise KeyError(spec)
        return self._by_name[key]

    def mirror_payload(self, spec: str) -> dict:
        return mirror_payload(self.hfk_payload(spec))


@pytest.fixture
def fake_engine() -> FakeEngine:
    return FakeEngine()


def engine_available() -> bool:
    try:
        import snappy  # noqa: F401
    except ImportError:
        return False
    return True


needs_engine = pytest.mark.skipif(
    not engine_available(), reason="SnapPy engine not installed in this environment"
)
