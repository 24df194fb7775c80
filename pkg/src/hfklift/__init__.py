"""Lift uv-quotient knot Floer complexes and decide property SpliFf.

The package reconstructs full knot Floer differentials from their horizontal
and vertical arrows by solving d^2 = 0 over GF(2), computes the graded
homology of lattice regions together with its U-action, and runs the full
per-knot decision pipeline for property SpliFf on a knot and its mirror.
"""

from .ak import (
    AkReport,
    GradedHomology,
    TruncatedBasisElement,
    ak_report,
    ak_truncated_model,
    bprime_spliff,
    count_length_one,
    eq2_crosscheck,
    fallback_vk,
    homology_with_u,
    structure_conformance,
    truncated_basis,
    truncated_differential,
    truncated_homology,
)
from .lift import (
    EquationSystem,
    KernelTooLargeError,
    NoLiftError,
    Placeholder,
    SolutionSet,
    ThicknessError,
    build_hv,
    enumerate_lifts,
    lift,
    linear_subsystem,
    placeholders,
    quotient_of,
    solve,
    square_to_system,
    squares_to_zero,
    substitute,
    supports_linear_system,
    verify_full_complex,
)
from .model import (
    ComplexFormatError,
    DerivedStats,
    FullComplex,
    Generator,
    HVArrow,
    QuotientComplex,
    UEntry,
    derived_stats,
    dump_full,
    dump_quotient,
    full_from_jsonable,
    full_to_jsonable,
    load_full,
    load_quotient,
    mirror,
    quotient_from_jsonable,
    quotient_to_jsonable,
    validate,
)
from .spliff import (
    InvalidComplexError,
    Verdict,
    decide,
    shortcut_thickness_one,
    shortcut_thickness_two,
    shortcut_thickness_zero,
)

__all__ = [
    "AkReport", "GradedHomology", "TruncatedBasisElement", "ak_report",
    "ak_truncated_model", "bprime_spliff", "count_length_one", "eq2_crosscheck",
    "fallback_vk", "homology_with_u", "structure_conformance", "truncated_basis",
    "truncated_differential", "truncated_homology",
    "EquationSystem", "KernelTooLargeError", "NoLiftError", "Placeholder",
    "SolutionSet", "ThicknessError", "build_hv", "enumerate_lifts", "lift",
    "linear_subsystem", "placeholders", "quotient_of", "solve",
    "square_to_system", "squares_to_zero", "substitute", "supports_linear_system",
    "verify_full_complex",
    "ComplexFormatError", "DerivedStats", "FullComplex", "Generator", "HVArrow",
    "QuotientComplex", "UEntry", "derived_stats", "dump_full", "dump_quotient",
    "full_from_jsonable", "full_to_jsonable", "load_full", "load_quotient",
    "mirror", "quotient_from_jsonable", "quotient_to_jsonable", "validate",
    "InvalidComplexError", "Verdict", "decide", "shortcut_thickness_one",
    "shortcut_thickness_two", "shortcut_thickness_zero",
]

__version__ = "0.1.0"
