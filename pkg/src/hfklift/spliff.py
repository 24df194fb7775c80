"""Per-knot SpliFf decision: thickness dispatch, shortcuts, homology checks.

A knot passes when every level k of both the complex and its dual admits the
required splitting.  Thickness zero passes outright; thickness one needs at
most one homology check per side (level rho - 3, only when rho >= 3);
thickness two first tries HFK-level vanishing shortcuts per level and then
runs homology checks on every enumerated lift, demanding the same outcome
across lifts.  Verdicts are total: anything undecidable becomes Unknown with
a machine-readable reason.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ak import ak_report, bprime_spliff, failing_gradings
from .lift import (
    DEFAULT_KERNEL_CAP,
    KernelTooLargeError,
    NoLiftError,
    build_hv,
    enumerate_lifts,
    lift,
    linear_subsystem,
    placeholders,
    solve,
    square_to_system,
    supports_linear_system,
)
from .model import QuotientComplex, derived_stats, mirror, validate


class InvalidComplexError(ValueError):
    """decide() was handed a complex that fails validation."""


@dataclass(frozen=True)
class Verdict:
    name: str
    thickness: int
    rho: int
    rho_mirror: int
    status: str  # SpliffBoth | FailsKnot | FailsMirror | Unknown
    failing_k: int | None = None
    witness_gradings: tuple[int, ...] | None = None
    kernel_dim: int | None = None
    per_lift_agreement: bool | None = None
    unknown_reason: str | None = None
    method_trace: tuple[str, ...] = ()
    failures_knot: tuple = field(default=(), compare=False)
    failures_mirror: tuple = field(default=(), compare=False)

    def to_jsonable(self) -> dict:
        return {
            "name": self.name,
            "thickness": self.thickness,
            "rho": self.rho,
            "rho_mirror": self.rho_mirror,
            "status": self.status
            if self.status != "Unknown" or not self.unknown_reason
            else f"Unknown({self.unknown_reason})",
            "failing_k": self.failing_k,
            "witness_gradings": list(self.witness_gradings) if self.witness_gradings else None,
            "kernel_dim": self.kernel_dim,
            "per_lift_agreement": self.per_lift_agreement,
            "method_trace": "; ".join(self.method_trace),
        }


def shortcut_thickness_zero() -> str:
    """Thickness-zero knots and their mirrors always pass."""
    return "SpliffBoth"


def shortcut_thickness_one(rho: int) -> bool:
    """True when this side passes with no homology computation (rho <= 2)."""
    return rho <= 2


def shortcut_thickness_two(
    hfk_table: dict[tuple[int, int], int], rho: int, genus: int
) -> dict[int, bool]:
    """HFK-level vanishing test per level k; True = passes without lifting."""
    out: dict[int, bool] = {}
    for k in range(0, genus + 1):
        top = hfk_table.get((k, k + rho), 0)
        mid = hfk_table.get((k, k + rho - 2), 0)
        if (k + rho) % 2 != 0:
            ok = top == 0 or (k != rho - 3 and mid == 0)
        else:
            ok = k != rho - 4 and (top == 0 or mid == 0)
        out[k] = ok
    return out


class _Undecidable(Exception):
    def __init__(self, reason: str, kernel_dim: int | None = None):
        super().__init__(reason)
        self.reason = reason
        self.kernel_dim = kernel_dim


def _side_lifts(qc: QuotientComplex, max_kernel_dim: int):
    system = square_to_system(
        build_hv(qc), placeholders(qc), linear_guaranteed=supports_linear_system(qc)
    )
    try:
        sol = solve(linear_subsystem(system))
    except NoLiftError as exc:
        raise _Undecidable(f"no-lift: {exc}") from exc
    try:
        lifts = list(enumerate_lifts(qc, sol, max_kernel_dim))
    except KernelTooLargeError as exc:
        raise _Undecidable("kernel too large", kernel_dim=exc.dim) from exc
    if not lifts:
        raise _Undecidable("no-lift: no assignment squares to zero", kernel_dim=sol.kernel_dim)
    return lifts, sol.kernel_dim


def _check_side_thickness_one(qc, rho, label, fallback_n, trace, failures):
    if shortcut_thickness_one(rho):
        trace.append(f"{label}: rho={rho}<=2 pass")
        return
    k = rho - 3
    try:
        fc = lift(qc)
    except NoLiftError as exc:
        raise _Undecidable(f"no-lift: {exc}") from exc
    rep = ak_report(fc, k, thickness=1, rho=rho, fallback_n=fallback_n)
    chain_level = bprime_spliff(fc, rho)
    if chain_level != rep.spliff:
        raise AssertionError(
            f"{label}: chain-level B' test ({chain_level}) disagrees with "
            f"homology count ({rep.spliff}) at k={k}"
        )
    if rep.spliff:
        trace.append(f"{label}: homology k={k} pass")
    else:
        witness = failing_gradings(rep.adjusted_count_1)
        trace.append(f"{label}: homology k={k} fail at gradings {witness}")
        failures.append((k, witness, rep))


def _check_side_thickness_two(
    qc, rho, label, stats, max_kernel_dim, fallback_n, verify_shortcuts, trace, failures
):
    shortcuts = shortcut_thickness_two(stats.hfk_table, rho, stats.genus_bound)
    undecided = sorted(k for k, ok in shortcuts.items() if not ok)
    passed = sorted(k for k, ok in shortcuts.items() if ok)
    if passed:
        trace.append(f"{label}: hfk-shortcut pass k={passed}")
    if not undecided and not verify_shortcuts:
        return None, None

    lifts, kdim = _side_lifts(qc, max_kernel_dim)
    trace.append(f"{label}: {len(lifts)} lift(s), kernel dim {kdim}")
    agreement = True
    for k in undecided:
        reports = [
            ak_report(fc, k, thickness=2, rho=rho, fallback_n=fallback_n) for fc in lifts
        ]
        flags = {r.spliff for r in reports}
        if len(flags) > 1:
            trace.append(f"{label}: k={k} lift-dependent")
            raise _Undecidable("lift-dependent", kernel_dim=kdim)
        if not flags.pop():
            witness = failing_gradings(reports[0].adjusted_count_1)
            trace.append(f"{label}: homology k={k} fail at gradings {witness}")
            failures.append((k, witness, reports[0]))
        else:
            trace.append(f"{label}: homology k={k} pass")
    if verify_shortcuts:
        for k in passed:
            rep = ak_report(lifts[0], k, thickness=2, rho=rho, fallback_n=fallback_n)
            if not rep.spliff:
                raise AssertionError(
                    f"{label}: hfk shortcut passed k={k} but homology check fails"
                )
    return kdim, agreement


def decide(
    qc: QuotientComplex,
    max_kernel_dim: int = DEFAULT_KERNEL_CAP,
    fallback_n: int | None = None,
    verify_shortcuts: bool = False,
) -> Verdict:
    """Full decision for one knot: dispatch by thickness, check both sides."""
    violations = validate(qc)
    if violations:
        raise InvalidComplexError("; ".join(violations))
    stats = derived_stats(qc)
    th = stats.thickness
    rho = stats.rho
    mqc = mirror(qc)
    mstats = derived_stats(mqc)
    rho_m = mstats.rho

    common = dict(name=qc.name, thickness=th, rho=rho, rho_mirror=rho_m)
    trace: list[str] = []

    if th == 0:
        return Verdict(status="SpliffBoth", method_trace=("thickness-0 shortcut",), **common)
    if th > 2:
        return Verdict(
            status="Unknown",
            unknown_reason="thickness out of scope",
            method_trace=(f"thickness {th} > 2",),
            **common,
        )

    failures_k: list = []
    failures_m: list = []
    kernel_dims: list[int] = []
    agreement: bool | None = None
    try:
        if th == 1:
            _check_side_thickness_one(qc, rho, "K", fallback_n, trace, failures_k)
            _check_side_thickness_one(mqc, rho_m, "mK", fallback_n, trace, failures_m)
        else:
            for side_qc, side_rho, side_stats, label, failures in (
                (qc, rho, stats, "K", failures_k),
                (mqc, rho_m, mstats, "mK", failures_m),
            ):
                kdim, agree = _check_side_thickness_two(
                    side_qc, side_rho, label, side_stats,
                    max_kernel_dim, fallback_n, verify_shortcuts, trace, failures,
                )
                if kdim is not None:
                    kernel_dims.append(kdim)
                if agree is not None:
                    agreement = agree if agreement is None else (agreement and agree)
    except _Undecidable as und:
        return Verdict(
            status="Unknown",
            unknown_reason=und.reason,
            kernel_dim=und.kernel_dim,
            per_lift_agreement=False if und.reason == "lift-dependent" else None,
            method_trace=tuple(trace),
            **common,
        )

    kernel_dim = max(kernel_dims) if kernel_dims else None
    if failures_k:
        k, witness, _ = failures_k[0]
        status, failing_k, wit = "FailsKnot", k, witness
    elif failures_m:
        k, witness, _ = failures_m[0]
        status, failing_k, wit = "FailsMirror", k, witness
    else:
        status, failing_k, wit = "SpliffBoth", None, None
    return Verdict(
        status=status,
        failing_k=failing_k,
        witness_gradings=wit,
        kernel_dim=kernel_dim,
        per_lift_agreement=agreement,
        method_trace=tuple(trace),
        failures_knot=tuple(failures_k),
        failures_mirror=tuple(failures_m),
        **common,
    )
