"""Command-line entry point: verify, lift, ak, spliff and batch subcommands.

Exit codes: verify returns 0 (valid) / 1 (violations) / 2 (unreadable);
spliff returns 0 (SpliffBoth) / 1 (fails) / 3 (Unknown) / 2 (bad input);
batch returns 0 unless inputs are unusable.  Set HFKLIFT_LOG to a logging
level name to see progress of long runs.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import ak as akmod
from . import batch as batchmod
from .lift import (
    DEFAULT_KERNEL_CAP,
    KernelTooLargeError,
    NoLiftError,
    ThicknessError,
    build_hv,
    enumerate_lifts,
    lift,
    linear_subsystem,
    placeholders,
    solve,
    square_to_system,
    supports_linear_system,
)
from .model import (
    ComplexFormatError,
    derived_stats,
    dump_full,
    full_from_jsonable,
    has_diagonal,
    load_quotient,
    quotient_from_jsonable,
    validate,
)
from .spliff import decide


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("HFKLIFT_LOG")
    if level:
        logging.basicConfig(level=level.upper())
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ComplexFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hfklift", description=__doc__)
    sub = p.add_subparsers(required=True)

    v = sub.add_parser("verify", help="validate complex files and print derived stats")
    v.add_argument("paths", nargs="+")
    v.set_defaults(func=cmd_verify)

    lf = sub.add_parser("lift", help="lift a quotient complex, writing the full complex")
    lf.add_argument("path")
    lf.add_argument("--all-lifts", action="store_true")
    lf.add_argument("--max-kernel-dim", type=int, default=DEFAULT_KERNEL_CAP)
    lf.set_defaults(func=cmd_lift)

    a = sub.add_parser("ak", help="print per-level homology reports")
    a.add_argument("path")
    a.add_argument("--k", type=int, default=None, help="single level (default: 0..genus)")
    a.add_argument("--fallback-N", dest="fallback_n", type=int, default=None)
    a.set_defaults(func=cmd_ak)

    s = sub.add_parser("spliff", help="decide property SpliFf for knot and mirror")
    s.add_argument("path")
    s.add_argument("--max-kernel-dim", type=int, default=DEFAULT_KERNEL_CAP)
    s.add_argument("--fallback-N", dest="fallback_n", type=int, default=None)
    s.set_defaults(func=cmd_spliff)

    b = sub.add_parser("batch", help="decide a directory or manifest of fixtures")
    b.add_argument("target")
    b.add_argument("--jobs", type=int, default=None)
    b.add_argument("--max-kernel-dim", type=int, default=DEFAULT_KERNEL_CAP)
    b.add_argument("--fallback-N", dest="fallback_n", type=int, default=None)
    b.add_argument("--out", default=None, help="report path prefix")
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.set_defaults(func=cmd_batch)
    return p


def cmd_verify(args) -> int:
    worst = 0
    for path in args.paths:
        try:
            qc = load_quotient(path)
        except ComplexFormatError as exc:
            print(f"{path}: unreadable: {exc}")
            return 2
        violations = validate(qc)
        if violations:
            for v in violations:
                print(f"{path}: {v}")
            worst = max(worst, 1)
        else:
            stats = derived_stats(qc)
            print(
                f"{path}: ok  n={qc.n} thickness={stats.thickness} "
                f"rho={stats.rho} genus_bound={stats.genus_bound}"
            )
    return worst


def cmd_lift(args) -> int:
    qc = load_quotient(args.path)
    violations = validate(qc)
    if violations:
        print(f"{args.path}: invalid: {violations[0]}", file=sys.stderr)
        return 2
    phs = placeholders(qc)
    base, _ = os.path.splitext(args.path)

    if not args.all_lifts:
        try:
            fc = lift(qc)
        except ThicknessError as exc:
            print(f"error: {exc} (pass --all-lifts)", file=sys.stderr)
            return 1
        n_diag = _diagonal_count(fc)
        out = f"{base}.lifted.json"
        dump_full(fc, out)
        print(f"placeholders: {len(phs)}  kernel dim: 0  diagonals: {n_diag}")
        print(f"wrote {out}")
        return 0

    system = square_to_system(build_hv(qc), phs, linear_guaranteed=supports_linear_system(qc))
    try:
        sol = solve(linear_subsystem(system))
        lifts = list(enumerate_lifts(qc, sol, args.max_kernel_dim))
    except NoLiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KernelTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"placeholders: {len(phs)}  kernel dim: {sol.kernel_dim}  lifts: {len(lifts)}")
    for idx, fc in enumerate(lifts):
        out = f"{base}.lift{idx:03d}.json"
        dump_full(fc, out)
        print(f"wrote {out} (diagonals: {_diagonal_count(fc)})")
    return 0


def _diagonal_count(fc) -> int:
    n = 0
    for (i, j), k in fc.matrix.items():
        if k > 0 and k - (fc.alexander(i) - fc.alexander(j)) > 0:
            n += 1
    return n


def _load_lifts(path, max_kernel_dim: int = DEFAULT_KERNEL_CAP):
    """Full complexes from a file: as written, or every lift of a quotient."""
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if has_diagonal(obj):
        return [full_from_jsonable(obj)]
    qc = quotient_from_jsonable(obj)
    try:
        return [lift(qc)]
    except ThicknessError:
        system = square_to_system(
            build_hv(qc), placeholders(qc), linear_guaranteed=supports_linear_system(qc)
        )
        sol = solve(linear_subsystem(system))
        return list(enumerate_lifts(qc, sol, max_kernel_dim))


def cmd_ak(args) -> int:
    lifts = _load_lifts(args.path)
    fc = lifts[0]
    deltas = [g.delta for g in fc.generators]
    thickness = max(deltas) - min(deltas)
    rho = max(deltas)
    genus = max(g.alexander for g in fc.generators)
    ks = [args.k] if args.k is not None else list(range(0, genus + 1))
    reports = []
    for k in ks:
        per_lift = [
            akmod.ak_report(c, k, thickness=thickness, rho=rho, fallback_n=args.fallback_n)
            for c in lifts
        ]
        serialized = {json.dumps(r.to_jsonable(), sort_keys=True) for r in per_lift}
        if len(serialized) > 1:
            print(f"error: level k={k} is lift-dependent across {len(lifts)} lifts",
                  file=sys.stderr)
            return 3
        reports.append(per_lift[0])
    print(json.dumps([r.to_jsonable() for r in reports], indent=1))
    return 0


def cmd_spliff(args) -> int:
    qc = load_quotient(args.path)
    violations = validate(qc)
    if violations:
        print(f"{args.path}: invalid: {violations[0]}", file=sys.stderr)
        return 2
    verdict = decide(qc, max_kernel_dim=args.max_kernel_dim, fallback_n=args.fallback_n)
    print(json.dumps(verdict.to_jsonable(), indent=1))
    if verdict.status == "SpliffBoth":
        return 0
    if verdict.status.startswith("Fails"):
        return 1
    return 3


def cmd_batch(args) -> int:
    paths = batchmod.collect_paths(args.target)
    report = batchmod.run_batch(
        paths,
        jobs=args.jobs,
        max_kernel_dim=args.max_kernel_dim,
        fallback_n=args.fallback_n,
    )
    for line in report.summary_lines():
        print(line)
    if args.out:
        csv_path = args.out if args.out.endswith(".csv") else args.out + ".csv"
        json_path = (args.out[: -len(".csv")] if args.out.endswith(".csv") else args.out) + ".json"
        with open(csv_path, "w", encoding="utf-8") as fh:
            for key, val in sorted(report.meta.items()):
                fh.write(f"# {key}: {val}\n")
            fh.write(report.csv_body())
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(report.to_jsonable(), fh, indent=1)
        print(f"wrote {csv_path} and {json_path}")
    elif args.format == "json":
        print(json.dumps(report.to_jsonable(), indent=1))
    return 0


if __name__ == "__main__":
    sys.exit(main())
