"""Exact Penrose vertex patches and their self-similarities."""
from .generator import (
    AuditReport,
    BoundaryHit,
    Patch,
    audit_boundary,
    default_offset,
    derive_edges,
    derive_faces,
    export_patch,
    generate_patch,
    generate_patch_strip,
    load_patch,
)
from .golden import TAU, GoldenNumber, format_golden, parse_golden
from .projections import GridMatrix, LatticePoint, SymCirculantMatrix
from .similarity import (
    InflationCenter,
    ScalingFactor,
    VerificationReport,
    enumerate_factors,
    find_centers,
    is_admissible,
    verify_invariance,
)
from .estimators import InflationMap, PenrosePattern
from .windows import InternalPoint, Status, WindowPentagon, classify, coset_window

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BoundaryHit",
    "Patch",
    "audit_boundary",
    "default_offset",
    "derive_edges",
    "derive_faces",
    "export_patch",
    "generate_patch",
    "generate_patch_strip",
    "load_patch",
    "TAU",
    "GoldenNumber",
    "format_golden",
    "parse_golden",
    "GridMatrix",
    "LatticePoint",
    "SymCirculantMatrix",
    "InflationCenter",
    "ScalingFactor",
    "VerificationReport",
    "enumerate_factors",
    "find_centers",
    "is_admissible",
    "verify_invariance",
    "InflationMap",
    "PenrosePattern",
    "InternalPoint",
    "Status",
    "WindowPentagon",
    "classify",
    "coset_window",
]
