"""
Curvature of a chart metric from two scalar fields
===================================================

On R^4 the metric g = A I + B E, with E the skew-circulant matrix whose
first row is (0, 1, 0, -1), is preserved by the structure S that cycles the
coordinate vectors with one sign flip.  A and B are plain expression strings.
"""

import numpy as np

from skewcurv import ChartManifold, geometry_at
from skewcurv.connection import bianchi_first_residual, metric_compatibility_residual
from skewcurv.linalg4 import symmetry_residual

# constant functions give a flat metric
flat = ChartManifold.from_strings("2", "0.5")
print("max |R| for constant (A, B):", np.abs(geometry_at(flat, (1, 2, 3, 4)).R).max())

# a non-constant A; derivatives are taken symbolically, so no step sizes
m = ChartManifold.from_strings("2 + 0.1*sin(x1 + x4)", "0.3")
p = (0.4, -1.0, 0.2, 1.3)
print("dA/dx1 =", m.A.diff(1))
geo = geometry_at(m, p)

# the curvature tensor has the algebraic symmetries and satisfies Bianchi
print("symmetry residual:", symmetry_residual(geo.R))
print("Bianchi residual:", bianchi_first_residual(geo.R))
print("metric compatibility of the connection:", metric_compatibility_residual(m, p))

# the associated form g~(x, y) = g(x, Sy) + g(Sx, y) at this point
print("g~ =\n", geo.metric.g_tilde)
