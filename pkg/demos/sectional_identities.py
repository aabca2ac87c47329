"""
Sectional curvatures along an S-basis
======================================

A vector x generates the basis (S^3x, S^2x, Sx, x).  For S-invariant curvature
the six coordinate planes of this basis carry only two distinct sectional
curvatures, and k(u, Su) for any unit u is pinned down by a handful of
values at x and at two auxiliary vectors.
"""

import math

import numpy as np

from skewcurv import s_basis, unit_vector_with_angle
from skewcurv.analysis import (
    basic_plane_curvatures,
    random_L2_params,
    random_unit_vectors,
    sectional_report,
    synth_L2,
)
from skewcurv.manifold import build_structure

rng = np.random.default_rng(7)
S = build_structure()
g = np.eye(4)
R = synth_L2(random_L2_params(rng))

# x = e1 induces an orthonormal S-basis when g is the identity
x = np.array([1.0, 0.0, 0.0, 0.0])
for plane, k in basic_plane_curvatures(R, g, S, x).items():
    print(f"k({plane}) = {k:+.6f}")

# vectors with a prescribed angle to their image under S
b = s_basis(x, S, g)
v = unit_vector_with_angle(b, math.pi / 3)
print("angle(v, Sv) / pi =", math.acos(v @ S.apply(v)) / math.pi)

# residual table over random unit vectors; the pair-invariance identities
# are skipped because this R is only S-invariant
rep = sectional_report(R, g, S, x, random_unit_vectors(rng, g, 200))
for name, res in rep.residuals.items():
    print(f"{name:24s} {res:.2e}")
for name, why in rep.skipped.items():
    print(f"{name:24s} skipped: {why}")
