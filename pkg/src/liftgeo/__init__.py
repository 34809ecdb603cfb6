"""Exact rational geometry of minimal valid functions and integer-variable
lifting for maximal S-free bodies."""

from .bodies import (
    MaximalityReport,
    SDescriptor,
    SFreeBody,
    body_from_facets,
    body_from_vertices_2d,
    lattice_points_in_body,
    verify_maximal_sfree,
)
from .covering import (
    CoverageReport,
    boundary_point,
    covered_point,
    covering_decision,
    non_uniqueness_witness,
    origin_interior_radius,
    union_area_inclusion_exclusion,
    union_area_sweep,
)
from .gauge import GaugeValue, PointClass, classify_point, psi, psi_value
from .geom import (
    HPolyhedron,
    RationalVec,
    affine_dim,
    lineality_space,
    linear_max,
    poly_contains,
    poly_equal,
    polygon_area_2d,
    polygon_intersection_2d,
    rat,
    recession_cone,
    vertices_2d,
)
from .lifting import (
    LiftedBody,
    PiStarResult,
    lifted_body,
    minimal_lifting_eval,
    pi_star,
    pi_star_certificate_check,
    pi_star_periodic,
    single_ray_validity,
)
from .regions import (
    RegionComplex,
    l_psi,
    lifting_region,
    region_cone_form,
    region_membership,
    region_of_point,
)

__version__ = "0.1.0"

__all__ = [
    "CoverageReport",
    "GaugeValue",
    "HPolyhedron",
    "LiftedBody",
    "MaximalityReport",
    "PiStarResult",
    "PointClass",
    "RationalVec",
    "RegionComplex",
    "SDescriptor",
    "SFreeBody",
    "affine_dim",
    "body_from_facets",
    "body_from_vertices_2d",
    "boundary_point",
    "classify_point",
    "covered_point",
    "covering_decision",
    "l_psi",
    "lattice_points_in_body",
    "lifted_body",
    "lifting_region",
    "lineality_space",
    "linear_max",
    "minimal_lifting_eval",
    "non_uniqueness_witness",
    "origin_interior_radius",
    "pi_star",
    "pi_star_certificate_check",
    "pi_star_periodic",
    "poly_contains",
    "poly_equal",
    "polygon_area_2d",
    "polygon_intersection_2d",
    "psi",
    "psi_value",
    "rat",
    "recession_cone",
    "region_cone_form",
    "region_membership",
    "region_of_point",
    "single_ray_validity",
    "union_area_inclusion_exclusion",
    "union_area_sweep",
    "verify_maximal_sfree",
    "vertices_2d",
]
