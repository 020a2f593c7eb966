"""Toolkit for abelian McKay quivers, gnat-family divisor data and
degree-0 orthogonality checks on toric crepant resolutions."""

from .group_characters import (
    GroupData,
    character_group,
    character_permutation,
    coordinate_weight_order,
    image_of_rho,
    is_faithful,
    rho,
)
from .toric_fan import (
    Cone,
    Fan,
    LatticeN,
    OrbitId,
    Ray,
    ValidationReport,
    is_projective,
    junior_points,
    orbits,
    point_on_divisor,
    ray_permutation,
    search_symmetric_triangulations,
    validate_fan,
)
from .mckay_quiver import Arrow, McKayQuiver, build_quiver, components, export_dot
from .gnat_family import (
    GnatFamily,
    GWeilDivisor,
    Theta,
    direct_transform,
    is_valid_family,
    max_shift_coefficient,
    max_shift_family,
    principal_divisor,
    principal_table_tsv,
    q_table_tsv,
    shift_move,
    theta_plus,
    theta_weight,
    zero_divisor,
    zero_divisor_listing,
    zero_divisor_table,
)
from .orthogonality import (
    ArrowType,
    CorollaryReport,
    OrthogonalityVerdict,
    SameOrbitVerdict,
    SymmetryReduction,
    arrow_types,
    check_corollary2,
    check_pair,
    corollary_pairs,
    same_orbit_certificate,
    symmetry_reduction,
)

__version__ = "0.1.0"
