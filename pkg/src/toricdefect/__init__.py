"""Exact combinatorics of dual defects and A-discriminants of toric varieties."""
from .cayley import CayleyStructure, enumerate_cayley_structures, verify_cayley
from .cones import Cone, check_embedding_hypothesis, hilbert_basis, semigroup_generates
from .defect import (
    DefectReport,
    covering_fibration,
    discriminant_verdict,
    dual_defect,
    join_decomposition,
    lattice_defect,
)
from .errors import ToricError
from .fan import (
    Fan,
    cartier_multiples,
    check_fibration,
    fiber_and_base,
    line_criterion,
    normal_fan,
    orbit_curve_degree,
)
from .hessian import certify_agreement, hessian_defect
from .lattice import LatticeMap, Sublattice, smith_normal_form
from .polytope import LatticePolytope, PointConfiguration, convex_hull

__all__ = [
    "CayleyStructure", "Cone", "DefectReport", "Fan", "LatticeMap", "LatticePolytope",
    "PointConfiguration", "Sublattice", "ToricError", "cartier_multiples", "certify_agreement",
    "check_embedding_hypothesis", "check_fibration", "convex_hull", "covering_fibration",
    "discriminant_verdict", "dual_defect", "enumerate_cayley_structures", "fiber_and_base",
    "hessian_defect", "hilbert_basis", "join_decomposition", "lattice_defect", "line_criterion",
    "normal_fan", "orbit_curve_degree", "semigroup_generates", "smith_normal_form", "verify_cayley",
]
