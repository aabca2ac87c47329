"""Curvature of 4-dimensional Riemannian manifolds with a skew-circulant structure S."""
from .connection import (
    ChartManifold,
    ConnectionCoefficients,
    LieGroupManifold,
    PointGeometry,
    bianchi_first_residual,
    christoffel,
    g45_algebra,
    geometry_at,
    koszul_nabla,
    lie_from_brackets,
    riemann_chart,
    riemann_lie,
)
from .errors import *  # noqa: F401,F403
from .expr import ScalarField, derivative, evaluate, parse
from .linalg4 import contract_ricci, full_contract, invert4, skew_circulant_from_row
from .manifold import (
    MetricAtPoint,
    SBasis,
    SkewStructure,
    angle,
    build_structure,
    check_compatibility,
    lie_structure,
    metric_at,
    s_basis,
    unit_vector_with_angle,
)

__version__ = "0.1.0"
