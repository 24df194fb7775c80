"""export_census: emit canonical fixture files from the knot Floer engine."""

from __future__ import annotations

import argparse
import logging
import sys

from .engine import EngineNotAvailable, load_engine
from .export import ExportJob, export


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="export_census", description=__doc__)
    parser.add_argument("--max-crossings", type=int, default=None)
    parser.add_argument("--min-crossings", type=int, default=0)
    parser.add_argument("--nonalternating-only", action="store_true")
    parser.add_argument("--mirrors", action="store_true",
                        help="also export each knot's mirrored diagram")
    parser.add_argument("--thickness", type=int, default=None,
                        help="keep only knots of this thickness")
    parser.add_argument("--names", nargs="*", default=[],
                        help="explicit census names (K12n67 or 12n67)")
    parser.add_argument("--diagrams", nargs="*", default=[],
                        help="files containing PD codes")
    parser.add_argument("--no-verify", action="store_true")
    parser.add_argument("--out", required=True)
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.max_crossings is None and not args.names and not args.diagrams:
        parser.error("nothing to export: pass --max-crossings, --names or --diagrams")

    try:
        engine = load_engine()
    except EngineNotAvailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    job = ExportJob(
        out_dir=args.out,
        max_crossings=args.max_crossings,
        min_crossings=args.min_crossings,
        nonalternating_only=args.nonalternating_only,
        names=args.names,
        diagram_files=args.diagrams,
        include_mirrors=args.mirrors,
        thickness=args.thickness,
        verify=not args.no_verify,
    )
    manifest = export(job, engine)
    counts = manifest["counts"]
    print(
        f"exported {counts['ok']} fixtures to {args.out} "
        f"(skipped {counts['skipped']}, filtered {counts['filtered']}, "
        f"verify failures {counts['verify-failed']})"
    )
    return 0 if counts["verify-failed"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
