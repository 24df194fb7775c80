"""Reconstruct full differentials from horizontal/vertical arrow data.

The pipeline: build the H+V matrix over F[U], place one unknown per ordered
generator pair that could carry a diagonal arrow (conditions (D1)-(D2), with
the U-exponent forced by (D3)), expand d^2 = 0 into equations over GF(2),
solve the linear part by Gaussian elimination, and enumerate the affine
solution set when the kernel is nontrivial.  Every produced complex is
verified by exact matrix squaring.

For thickness at most one the system is guaranteed linear and all lifts are
isomorphic, so the base solution is the answer.  At thickness two some
equations may be quadratic; those are never solved algebraically -- the
affine set of the linear subsystem is enumerated and filtered by squaring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import gf2
from .model import FullComplex, QuotientComplex, derived_stats


class NoLiftError(ValueError):
    """The d^2 = 0 system is inconsistent: the input is not a valid quotient."""


class KernelTooLargeError(ValueError):
    """Kernel dimension exceeds the enumeration cap."""

    def __init__(self, dim: int, cap: int):
        super().__init__(f"kernel too large: dimension {dim} exceeds cap {cap}")
        self.dim = dim
        self.cap = cap


class ThicknessError(ValueError):
    """lift() only handles thickness <= 1; use enumerate_lifts beyond that."""


DEFAULT_KERNEL_CAP = 12


@dataclass(frozen=True)
class Placeholder:
    var_index: int
    source: int
    target: int
    u_exponent: int


@dataclass(frozen=True)
class EquationSystem:
    rows: tuple[int, ...]            # bitmask over var indices, per equation
    rhs: tuple[int, ...]             # constant term per equation
    var_map: tuple[Placeholder, ...]
    nonlinear_terms: tuple[tuple[int, tuple[int, int]], ...]  # (row, (var, var))

    @property
    def num_vars(self) -> int:
        return len(self.var_map)

    @property
    def num_rows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class SolutionSet:
    base: int                        # bitmask over var indices
    kernel_basis: tuple[int, ...]
    num_vars: int

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)

    def assignments(self) -> Iterator[int]:
        """All elements of base + span(kernel), in binary counting order."""
        for sel in range(1 << len(self.kernel_basis)):
            a = self.base
            rem = sel
            t = 0
            while rem:
                if rem & 1:
                    a ^= self.kernel_basis[t]
                rem >>= 1
                t += 1
            yield a


def build_hv(qc: QuotientComplex) -> dict[tuple[int, int], int]:
    """The H+V matrix: (target, source) -> U-exponent, one entry per arrow."""
    hv: dict[tuple[int, int], int] = {}
    for a in qc.arrows:
        k = qc.maslov(a.target) - qc.maslov(a.source) + 1
        if k % 2 != 0 or k // 2 != a.u_power:
            raise ValueError(
                f"arrow {a.source}->{a.target}: u-power {a.u_power} violates the "
                f"exponent law (M difference gives {k}/2)"
            )
        hv[(a.target, a.source)] = a.u_power
    return hv


def placeholders(qc: QuotientComplex) -> list[Placeholder]:
    """One placeholder per ordered pair (i, j) admitting a diagonal arrow.

    (D1): k = (M_i - M_j + 1)/2 >= 1, (D2): k > A_i - A_j, with k the exponent
    from (D3).  Ordering is row-major by (i, j), which fixes variable indices.
    """
    out: list[Placeholder] = []
    n = qc.n
    for i in range(n):
        for j in range(n):
            dm = qc.maslov(i) - qc.maslov(j) + 1
            if dm % 2 != 0:
                continue
            k = dm // 2
            if k < 1:
                continue
            if k <= qc.alexander(i) - qc.alexander(j):
                continue
            out.append(Placeholder(var_index=len(out), source=j, target=i, u_exponent=k))
    return out


def supports_linear_system(qc: QuotientComplex) -> bool:
    """Whether thickness <= 2 and every Alexander grading spans <= 2 Maslov degrees.

    Under this hypothesis no two placeholders compose, so d^2 = 0 is linear.
    """
    stats = derived_stats(qc)
    if stats.thickness > 2:
        return False
    degrees: dict[int, set[int]] = {}
    for g in qc.generators:
        degrees.setdefault(g.alexander, set()).add(g.maslov)
    return all(len(ds) <= 2 for ds in degrees.values())


def square_to_system(
    hv: dict[tuple[int, int], int],
    phs: list[Placeholder],
    linear_guaranteed: bool = False,
) -> EquationSystem:
    """Expand d_var^2 = 0 into GF(2) equations.

    One equation per (matrix position, U-exponent) with a nonzero coefficient:
    constants come from (H+V)^2, linear terms from the two mixed products,
    quadratic terms only from D_var * D_var.  With linear_guaranteed the
    absence of quadratic terms is asserted.  Exact duplicate equations are
    merged; trivial 0 = 0 rows are dropped.
    """
    by_source: dict[int, list[tuple[int, int]]] = {}  # j -> [(i, k)] over hv
    for (i, j), k in hv.items():
        by_source.setdefault(j, []).append((i, k))
    ph_by_source: dict[int, list[Placeholder]] = {}
    for p in phs:
        ph_by_source.setdefault(p.source, []).append(p)

    # coefficient accumulators keyed by (row position, column position, exponent)
    const: dict[tuple[int, int, int], int] = {}
    linear: dict[tuple[int, int, int], int] = {}
    quad: dict[tuple[int, int, int], dict[tuple[int, int], int]] = {}

    for (t, j), k1 in hv.items():
        # (H+V)[i, t] * (H+V)[t, j]  and  D_var[i, t] * (H+V)[t, j]
        for i, k2 in by_source.get(t, ()):
            key = (i, j, k1 + k2)
            const[key] = const.get(key, 0) ^ 1
        for p in ph_by_source.get(t, ()):
            key = (p.target, j, k1 + p.u_exponent)
            linear.setdefault(key, 0)
            linear[key] ^= 1 << p.var_index
    for p in phs:
        # (H+V)[i, p.target] * D_var[p.target, p.source]
        for i, k2 in by_source.get(p.target, ()):
            key = (i, p.source, p.u_exponent + k2)
            linear.setdefault(key, 0)
            linear[key] ^= 1 << p.var_index
        # D_var[i, p.target] * D_var[p.target, p.source]
        for q in ph_by_source.get(p.target, ()):
            key = (q.target, p.source, p.u_exponent + q.u_exponent)
            mono = (min(p.var_index, q.var_index), max(p.var_index, q.var_index))
            bucket = quad.setdefault(key, {})
            bucket[mono] = bucket.get(mono, 0) ^ 1

    keys = sorted(set(const) | set(linear) | set(quad))
    rows: list[int] = []
    rhs: list[int] = []
    nonlinear: list[tuple[int, tuple[int, int]]] = []
    seen: set[tuple[int, int]] = set()
    for key in keys:
        mask = linear.get(key, 0)
        b = const.get(key, 0)
        monos = sorted(m for m, c in quad.get(key, {}).items() if c)
        if not mask and not b and not monos:
            continue
        if not monos:
            if (mask, b) in seen:
                continue
            seen.add((mask, b))
        row_idx = len(rows)
        rows.append(mask)
        rhs.append(b)
        for mono in monos:
            nonlinear.append((row_idx, mono))

    system = EquationSystem(
        rows=tuple(rows),
        rhs=tuple(rhs),
        var_map=tuple(phs),
        nonlinear_terms=tuple(nonlinear),
    )
    if linear_guaranteed and system.nonlinear_terms:
        raise AssertionError(
            "quadratic terms appeared although the degree hypothesis holds"
        )
    return system


def linear_subsystem(system: EquationSystem) -> EquationSystem:
    """The maximal subsystem of purely linear equations."""
    bad = {row for row, _ in system.nonlinear_terms}
    keep = [t for t in range(system.num_rows) if t not in bad]
    return EquationSystem(
        rows=tuple(system.rows[t] for t in keep),
        rhs=tuple(system.rhs[t] for t in keep),
        var_map=system.var_map,
        nonlinear_terms=(),
    )


def solve(system: EquationSystem) -> SolutionSet:
    """Solve a linear system: base solution (free variables 0) plus kernel basis."""
    if system.nonlinear_terms:
        raise ValueError("system has quadratic terms; solve its linear_subsystem instead")
    try:
        base, kernel = gf2.solve_affine(
            list(system.rows), list(system.rhs), system.num_vars
        )
    except gf2.InconsistentSystem as exc:
        raise NoLiftError("no lift exists: d^2 = 0 is inconsistent") from exc
    return SolutionSet(base=base, kernel_basis=tuple(kernel), num_vars=system.num_vars)


def substitute(qc: QuotientComplex, assignment: int) -> FullComplex:
    """The complex with the chosen diagonal arrows merged into H+V."""
    entries = [(i, j, k) for (i, j), k in build_hv(qc).items()]
    for p in placeholders(qc):
        if assignment >> p.var_index & 1:
            entries.append((p.target, p.source, p.u_exponent))
    return FullComplex(name=qc.name, generators=qc.generators, d=tuple(entries))


def squares_to_zero(fc: FullComplex) -> bool:
    """Exact check that d^2 = 0 over F[U]."""
    by_source: dict[int, list[tuple[int, int]]] = {}
    for (i, j), k in fc.matrix.items():
        by_source.setdefault(j, []).append((i, k))
    acc: dict[tuple[int, int, int], int] = {}
    for (t, j), k1 in fc.matrix.items():
        for i, k2 in by_source.get(t, ()):
            key = (i, j, k1 + k2)
            acc[key] = acc.get(key, 0) ^ 1
    return not any(acc.values())


def enumerate_lifts(
    qc: QuotientComplex,
    solution_set: SolutionSet,
    max_kernel_dim: int = DEFAULT_KERNEL_CAP,
) -> Iterator[FullComplex]:
    """All complexes from base + kernel that square to zero, in counting order.

    The squaring check is a no-op filter when the system was linear and the
    essential filter when quadratic equations were set aside.
    """
    if solution_set.kernel_dim > max_kernel_dim:
        raise KernelTooLargeError(solution_set.kernel_dim, max_kernel_dim)
    for assignment in solution_set.assignments():
        fc = substitute(qc, assignment)
        if squares_to_zero(fc):
            yield fc


def lift(qc: QuotientComplex) -> FullComplex:
    """The full complex of a thickness <= 1 input (all lifts are isomorphic)."""
    stats = derived_stats(qc)
    if stats.thickness > 1:
        raise ThicknessError(
            f"thickness {stats.thickness} > 1: enumerate_lifts over the solution set instead"
        )
    hv = build_hv(qc)
    phs = placeholders(qc)
    system = square_to_system(hv, phs, linear_guaranteed=True)
    sol = solve(system)
    fc = substitute(qc, sol.base)
    if not squares_to_zero(fc):
        raise AssertionError("solver produced a non-squaring differential")
    return fc


def verify_full_complex(fc: FullComplex) -> list[str]:
    """Check the FullComplex invariants; returns violations (empty = valid)."""
    violations: list[str] = []
    for (i, j), k in sorted(fc.matrix.items()):
        where = f"entry ({i},{j})"
        dm = fc.maslov(i) - fc.maslov(j) + 1
        if dm % 2 != 0 or dm // 2 != k:
            violations.append(f"exponent-law: {where}: U^{k} but gradings force {dm}/2")
            continue
        da = fc.alexander(i) - fc.alexander(j)
        if k == 0 and da >= 0:
            violations.append(f"filtration: {where}: k = 0 needs a strict Alexander drop")
        if k > 0 and k - da < 0:
            violations.append(f"filtration: {where}: v-power {k - da} negative")
    if not squares_to_zero(fc):
        violations.append("d-squared: d^2 != 0")
    cols = [0] * fc.n
    for (i, j), _ in fc.matrix.items():
        cols[j] |= 1 << i
    image, kernel = gf2.column_reduce(cols)
    if len(kernel) - len(image) != 1:
        violations.append(
            f"homology-rank: U=1 matrix has dim ker - rank = {len(kernel) - len(image)}, not 1"
        )
    return violations


def quotient_of(fc: FullComplex, name: str | None = None) -> QuotientComplex:
    """Drop diagonal arrows: the uv-quotient presented by H+V only."""
    from .model import HVArrow

    arrows = []
    for (i, j), k in sorted(fc.matrix.items()):
        v = k - (fc.alexander(i) - fc.alexander(j))
        if k > 0 and v > 0:
            continue
        arrows.append(HVArrow(source=j, target=i, u_power=k, v_power=v))
    return QuotientComplex(
        name=fc.name if name is None else name,
        generators=fc.generators,
        arrows=tuple(arrows),
    )
