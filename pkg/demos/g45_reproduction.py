"""
A hyperbolic Lie group with an S-invariant Einstein metric
===========================================================

The Lie algebra g45(a, b) has [e1,e4] = e1, [e2,e4] = a e2, [e3,e4] = b e3.
With a = b = 1 and the left-invariant metric that makes e1..e4 orthonormal
the space has constant curvature, so it is Einstein.
"""

import numpy as np

from skewcurv import g45_algebra, geometry_at, koszul_nabla
from skewcurv.analysis import check_R1_invariance, check_R_invariance, ricci_data

# the Koszul formula gives the connection straight from the brackets
m = g45_algebra(1.0, 1.0)
nabla = koszul_nabla(m)
for i, j in np.argwhere(np.abs(nabla.gamma).sum(axis=2) > 0):
    print(f"nabla_e{i + 1} e{j + 1} =", nabla.gamma[i, j])

# every coordinate 2-plane has sectional curvature +1 in this sign convention
geo = geometry_at(m)
print("R_1212, R_1313, R_2424 =", geo.R[0, 1, 0, 1], geo.R[0, 2, 0, 2], geo.R[1, 3, 1, 3])

# Ricci is -3 g, the scalar curvature -12, and the trace against g~ vanishes
d = ricci_data(geo.R, geo.metric)
print("rho =\n", d.rho)
print("tau =", d.tau, " tau* =", d.tau_star)

# R is invariant under S applied to all four slots, but not under S applied
# to one pair only
print("S-invariance residual:", check_R_invariance(geo.R, geo.S))
print("pair-invariance residual:", check_R1_invariance(geo.R, geo.S))
