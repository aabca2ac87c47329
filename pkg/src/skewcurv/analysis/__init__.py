"""Curvature classes, Ricci data and sectional-curvature identities."""
from .classes import (
    L2_ORBITS,
    L2Params,
    check_L2_components,
    check_R1_invariance,
    check_R_invariance,
    extract_L2_params,
    project_curvature,
    r1_class_params,
    random_curvature_tensor,
    random_L2_params,
    random_R1_params,
    s_symmetrize,
    synth_L2,
)
from .ricci import (
    RicciData,
    almost_einstein_decompose,
    einstein_check,
    ricci_closed_forms,
    ricci_data,
    ricci_direction,
    scalars_closed_forms,
    system_rho_residual,
    verify_ricci_directions,
)
from .sectional import (
    SectionalReport,
    basic_plane_curvatures,
    basis_coordinates,
    combined_expansion,
    orbit_expansions,
    r1_quartic_residual,
    random_unit_vectors,
    s_basis_components,
    sectional,
    sectional_report,
    verify_basic_plane_relations,
    verify_orthonormal_sum_theorem,
    verify_R1_interpolation,
    verify_R1_plane_relations,
    verify_three_angle_theorem,
)
