"""Data model for knot Floer complexes presented by horizontal/vertical arrows.

A quotient complex records the generators of reduced HFK-hat with their Maslov
and Alexander gradings, plus the arrows that survive modulo uv: horizontal
arrows carry a power of u, vertical arrows a power of v, and exactly one of
the two powers is zero.  A full complex is an n x n differential over F[U]
whose U-exponents are forced by the gradings; it is what the lift solver
produces.

Coefficients live in the two-element field throughout, so the presence of an
arrow or matrix entry means coefficient 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


class ComplexFormatError(ValueError):
    """Raised when a complex file cannot be parsed into the canonical format."""


@dataclass(frozen=True)
class Generator:
    id: int
    maslov: int
    alexander: int

    @property
    def delta(self) -> int:
        return self.maslov - self.alexander


@dataclass(frozen=True)
class HVArrow:
    source: int
    target: int
    u_power: int
    v_power: int

    @property
    def is_horizontal(self) -> bool:
        return self.v_power == 0 and self.u_power > 0


@dataclass(frozen=True)
class UEntry:
    """A nonzero matrix entry of a full differential: coefficient * U^k."""

    coefficient: int
    u_exponent: int


@dataclass(frozen=True)
class QuotientComplex:
    name: str
    generators: tuple[Generator, ...]
    arrows: tuple[HVArrow, ...]

    @property
    def n(self) -> int:
        return len(self.generators)

    def maslov(self, gen_id: int) -> int:
        return self._maslov[gen_id]

    def alexander(self, gen_id: int) -> int:
        return self._alexander[gen_id]

    def __post_init__(self) -> None:
        by_id = {g.id: g for g in self.generators}
        object.__setattr__(self, "_maslov", {i: g.maslov for i, g in by_id.items()})
        object.__setattr__(self, "_alexander", {i: g.alexander for i, g in by_id.items()})


@dataclass(frozen=True)
class FullComplex:
    """A differential over F[U]: d maps (target, source) pairs to U-exponents."""

    name: str
    generators: tuple[Generator, ...]
    d: tuple[tuple[int, int, int], ...]  # (target i, source j, exponent k), sorted

    @property
    def n(self) -> int:
        return len(self.generators)

    def maslov(self, gen_id: int) -> int:
        return self._maslov[gen_id]

    def alexander(self, gen_id: int) -> int:
        return self._alexander[gen_id]

    def entry(self, target: int, source: int) -> UEntry | None:
        k = self._d_map.get((target, source))
        return None if k is None else UEntry(1, k)

    @property
    def matrix(self) -> dict[tuple[int, int], int]:
        return dict(self._d_map)

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", tuple(sorted(self.d)))
        by_id = {g.id: g for g in self.generators}
        object.__setattr__(self, "_maslov", {i: g.maslov for i, g in by_id.items()})
        object.__setattr__(self, "_alexander", {i: g.alexander for i, g in by_id.items()})
        object.__setattr__(self, "_d_map", {(i, j): k for i, j, k in self.d})


@dataclass(frozen=True)
class DerivedStats:
    thickness: int
    rho: int
    genus_bound: int
    hfk_table: dict[tuple[int, int], int] = field(compare=False)  # (alexander, maslov) -> dim


def validate(qc: QuotientComplex) -> list[str]:
    """Check every QuotientComplex invariant; return violations (empty = valid).

    Violations are data, not exceptions: each entry is a message prefixed with
    a stable tag and naming the offending generator or arrow.
    """
    violations: list[str] = []
    n = len(qc.generators)
    if n == 0:
        violations.append("empty: complex has no generators")
        return violations

    ids = sorted(g.id for g in qc.generators)
    if ids != list(range(n)):
        violations.append(f"id-range: generator ids {ids} are not exactly 0..{n - 1}")
        return violations

    seen_pairs: set[tuple[int, int]] = set()
    for idx, a in enumerate(qc.arrows):
        where = f"arrow {idx} ({a.source}->{a.target})"
        if not (0 <= a.source < n and 0 <= a.target < n):
            violations.append(f"id-range: {where}: endpoint out of range")
            continue
        if a.u_power < 0 or a.v_power < 0:
            violations.append(f"uv-power: {where}: negative power")
            continue
        if (a.u_power == 0) == (a.v_power == 0):
            violations.append(
                f"uv-power: {where}: exactly one of u={a.u_power}, v={a.v_power} must be zero"
            )
            continue
        mi, mj = qc.maslov(a.target), qc.maslov(a.source)
        ai, aj = qc.alexander(a.target), qc.alexander(a.source)
        if mi != mj - 1 + 2 * a.u_power:
            violations.append(
                f"grading-law: {where}: M={mi} != M={mj} - 1 + 2*{a.u_power}"
            )
        if ai != aj + a.u_power - a.v_power:
            violations.append(
                f"alexander-law: {where}: A={ai} != A={aj} + {a.u_power} - {a.v_power}"
            )
        if (a.source, a.target) in seen_pairs:
            violations.append(f"duplicate-arrow: {where}: repeated (source, target) pair")
        seen_pairs.add((a.source, a.target))
    return violations


def derived_stats(qc: QuotientComplex) -> DerivedStats:
    """Thickness, rho, genus bound and the HFK-hat dimension table."""
    if not qc.generators:
        raise ValueError("complex has no generators")
    deltas = [g.delta for g in qc.generators]
    table: dict[tuple[int, int], int] = {}
    for g in qc.generators:
        key = (g.alexander, g.maslov)
        table[key] = table.get(key, 0) + 1
    return DerivedStats(
        thickness=max(deltas) - min(deltas),
        rho=max(deltas),
        genus_bound=max(g.alexander for g in qc.generators),
        hfk_table=table,
    )


def mirror(qc: QuotientComplex) -> QuotientComplex:
    """The dual complex: gradings negated, arrows reversed with the same powers."""
    gens = tuple(
        Generator(g.id, -g.maslov, -g.alexander) for g in qc.generators
    )
    arrows = tuple(
        HVArrow(source=a.target, target=a.source, u_power=a.u_power, v_power=a.v_power)
        for a in qc.arrows
    )
    return QuotientComplex(name=f"m({qc.name})" if qc.name else "", generators=gens, arrows=arrows)


def _sorted_generators(generators: tuple[Generator, ...]) -> list[Generator]:
    # canonical order for serialization: by Alexander, then Maslov, then id
    return sorted(generators, key=lambda g: (g.alexander, g.maslov, g.id))


def quotient_to_jsonable(qc: QuotientComplex) -> dict:
    return {
        "name": qc.name,
        "generators": [
            {"id": g.id, "maslov": g.maslov, "alexander": g.alexander}
            for g in _sorted_generators(qc.generators)
        ],
        "arrows": [
            {"from": a.source, "to": a.target, "u": a.u_power, "v": a.v_power}
            for a in sorted(qc.arrows, key=lambda a: (a.source, a.target))
        ],
    }


def full_to_jsonable(fc: FullComplex) -> dict:
    arrows = []
    for i, j, k in sorted(fc.d, key=lambda e: (e[1], e[0])):
        v = k - (fc.alexander(i) - fc.alexander(j))
        arrows.append({"from": j, "to": i, "u": k, "v": v})
    return {
        "name": fc.name,
        "generators": [
            {"id": g.id, "maslov": g.maslov, "alexander": g.alexander}
            for g in _sorted_generators(fc.generators)
        ],
        "arrows": arrows,
    }


def _parse_generators(obj: dict) -> tuple[Generator, ...]:
    try:
        gens = tuple(
            Generator(id=int(g["id"]), maslov=int(g["maslov"]), alexander=int(g["alexander"]))
            for g in obj["generators"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ComplexFormatError(f"bad generator record: {exc}") from exc
    return gens


def _parse_arrows(obj: dict) -> list[tuple[int, int, int, int]]:
    try:
        return [
            (int(a["from"]), int(a["to"]), int(a["u"]), int(a["v"]))
            for a in obj["arrows"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ComplexFormatError(f"bad arrow record: {exc}") from exc


def quotient_from_jsonable(obj: dict) -> QuotientComplex:
    """Parse the canonical format; unknown fields are ignored."""
    if not isinstance(obj, dict) or "generators" not in obj or "arrows" not in obj:
        raise ComplexFormatError("expected an object with 'generators' and 'arrows'")
    gens = _parse_generators(obj)
    arrows = tuple(
        HVArrow(source=f, target=t, u_power=u, v_power=v)
        for f, t, u, v in _parse_arrows(obj)
    )
    for a in arrows:
        if a.u_power > 0 and a.v_power > 0:
            raise ComplexFormatError(
                f"arrow {a.source}->{a.target} is diagonal (u={a.u_power}, v={a.v_power}); "
                "not a quotient complex"
            )
    return QuotientComplex(name=str(obj.get("name", "")), generators=gens, arrows=arrows)


def full_from_jsonable(obj: dict) -> FullComplex:
    """Parse a full-complex file; diagonal arrows carry both powers."""
    if not isinstance(obj, dict) or "generators" not in obj or "arrows" not in obj:
        raise ComplexFormatError("expected an object with 'generators' and 'arrows'")
    gens = _parse_generators(obj)
    alex = {g.id: g.alexander for g in gens}
    entries = []
    for f, t, u, v in _parse_arrows(obj):
        if u > 0 and v > 0 and v != u - (alex[t] - alex[f]):
            raise ComplexFormatError(
                f"diagonal arrow {f}->{t}: v={v} inconsistent with u={u} and gradings"
            )
        entries.append((t, f, u))
    return FullComplex(name=str(obj.get("name", "")), generators=gens, d=tuple(entries))


def has_diagonal(obj: dict) -> bool:
    """Whether a parsed canonical file carries any diagonal arrow."""
    return any(f[2] > 0 and f[3] > 0 for f in _parse_arrows(obj))


def load_quotient(path) -> QuotientComplex:
    return quotient_from_jsonable(_load_json(path))


def load_full(path) -> FullComplex:
    return full_from_jsonable(_load_json(path))


def _load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ComplexFormatError(f"{path}: {exc}") from exc


def dump_quotient(qc: QuotientComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(quotient_to_jsonable(qc), fh, indent=1)
        fh.write("\n")


def dump_full(fc: FullComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(full_to_jsonable(fc), fh, indent=1)
        fh.write("\n")
