"""Realizability of five-element spectra by symmetric nonnegative matrices,
with exact replays of the supporting certificates."""

from . import c_tables, exact, pattern_c, pattern_h, poly, report, sniep, spectral
from .exact import DomainError, FormatError, Surd, parse_rational, sqrt_lower_bound, sqrt_upper_bound, verify_sqrt_bound
from .pattern_c import (
    CParams,
    DiagBounds,
    PipelineError,
    PipelineResult,
    apply_relations,
    build_bmin_and_eval,
    c_predicates,
    derive_diag_bounds,
    offdiag_lower_bounds,
    verify_appendix_c,
    verify_appendix_d,
    verify_c_identities,
)
from .pattern_h import HParams, h_predicates, verify_appendix_ab, verify_h_identities
from .poly import Interval, MultiPoly, Sign, UniPoly, identity_check, isolate_real_roots, sign_on_interval
from .report import Report
from .sniep import SpectrumList, Verdict, VerdictKind, check_conditions, decide, normalize, realize, sample_random
from .spectral import SymMatrix, charpoly_exact, eigen_jacobi

__version__ = "0.1.0"

__all__ = [
    "c_tables",
    "exact",
    "pattern_c",
    "pattern_h",
    "poly",
    "report",
    "sniep",
    "spectral",
    "DomainError",
    "FormatError",
    "Surd",
    "parse_rational",
    "sqrt_lower_bound",
    "sqrt_upper_bound",
    "verify_sqrt_bound",
    "CParams",
    "DiagBounds",
    "PipelineError",
    "PipelineResult",
    "apply_relations",
    "build_bmin_and_eval",
    "c_predicates",
    "derive_diag_bounds",
    "offdiag_lower_bounds",
    "verify_appendix_c",
    "verify_appendix_d",
    "verify_c_identities",
    "HParams",
    "h_predicates",
    "verify_appendix_ab",
    "verify_h_identities",
    "Interval",
    "MultiPoly",
    "Sign",
    "UniPoly",
    "identity_check",
    "isolate_real_roots",
    "sign_on_interval",
    "Report",
    "SpectrumList",
    "Verdict",
    "VerdictKind",
    "check_conditions",
    "decide",
    "normalize",
    "realize",
    "sample_random",
    "SymMatrix",
    "charpoly_exact",
    "eigen_jacobi",
]
