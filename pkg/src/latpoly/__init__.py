"""Exact-arithmetic lattice polytope invariants and Cayley structure."""

__version__ = "0.1.0"

from .cayley import (
    CayleyDecomposition,
    LocalsplitReport,
    build,
    build_strict,
    check_localsplit,
    detect,
    generate,
    lattice_point,
    segment,
    width_candidates,
)
from .errors import InvalidPolytope, InvariantViolation, TheoremViolation
from .invariants import (
    InvariantReport,
    classify,
    codegree,
    degree,
    is_q_normal,
    is_spanned,
    nef_value,
    qcodegree,
    spanned_at_vertex,
    vertex_shift,
)
from .polytope import (
    HPolytope,
    VPolytope,
    VertexData,
    apply_unimodular,
    canonicalize,
    facets,
    hpolytope,
    is_smooth,
    lattice_equivalent,
    lattice_points,
    normal_fan_equal,
    reduce_vertices,
    shrink,
    vertex_data,
    vertices,
)

__all__ = [
    "CayleyDecomposition",
    "HPolytope",
    "InvalidPolytope",
    "InvariantReport",
    "InvariantViolation",
    "LocalsplitReport",
    "TheoremViolation",
    "VPolytope",
    "VertexData",
    "apply_unimodular",
    "build",
    "build_strict",
    "canonicalize",
    "check_localsplit",
    "classify",
    "codegree",
    "degree",
    "detect",
    "facets",
    "generate",
    "hpolytope",
    "is_q_normal",
    "is_smooth",
    "is_spanned",
    "lattice_equivalent",
    "lattice_point",
    "lattice_points",
    "nef_value",
    "normal_fan_equal",
    "qcodegree",
    "reduce_vertices",
    "segment",
    "shrink",
    "spanned_at_vertex",
    "vertex_data",
    "vertex_shift",
    "vertices",
    "width_candidates",
]
