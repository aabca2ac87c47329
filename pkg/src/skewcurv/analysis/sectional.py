"""Sectional curvatures of the 2-planes spanned by S-basis vectors.

The verifiers below take a curvature tensor, a metric matrix, the structure
S and the vector x inducing the S-basis.  Each first checks the curvature
hypothesis of the statement it verifies (invariance residual at most
``hypothesis_tol``) and raises PropertyNotSatisfied otherwise, so a large
residual always means the identity itself failed.

Vectors ``u`` may be passed as a single vector or as an ``(n, 4)`` batch; the
returned residual is then the maximum over the batch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DegeneratePlane, NotOrthonormalBasis, NotUnitVector, PropertyNotSatisfied
from ..linalg4 import as_mat4, multilinear
from ..manifold import SBasis, SkewStructure, s_basis, unit_vector_with_angle
from .classes import check_R1_invariance, check_R_invariance

HYPOTHESIS_TOL = 1e-6
CONCLUSION_TOL = 1e-9
PLANE_NAMES = ("x,Sx", "x,S2x", "x,S3x", "Sx,S2x", "Sx,S3x", "S2x,S3x")


def _quad(g, x, y):
    x = np.atleast_2d(x)
    y = np.atleast_2d(y)
    return np.einsum("ni,ij,nj->n", x, g, y)


def _k(R, g, x, y) -> np.ndarray:
    """Batched sectional curvature."""
    x2 = np.atleast_2d(np.asarray(x, dtype=float))
    y2 = np.atleast_2d(np.asarray(y, dtype=float))
    n = max(len(x2), len(y2))
    x2 = np.broadcast_to(x2, (n, 4))
    y2 = np.broadcast_to(y2, (n, 4))
    den = _quad(g, x2, x2) * _quad(g, y2, y2) - _quad(g, x2, y2) ** 2
    scale = _quad(g, x2, x2) * _quad(g, y2, y2)
    if np.any(den <= 1e-12 * scale) or np.any(scale <= 0.0):
        raise DegeneratePlane("vectors span a degenerate plane")
    return np.atleast_1d(multilinear(R, x2, y2, x2, y2)) / den


def sectional(R, g, x, y) -> float:
    """k(x, y) = R(x, y, x, y) / (g(x,x) g(y,y) - g(x,y)^2)."""
    return float(_k(R, as_mat4(g), x, y)[0])


def _require(prop: str, residual: float, tol: float) -> None:
    if residual > tol:
        raise PropertyNotSatisfied(prop, residual, tol)


def basic_plane_curvatures(R, g, S: SkewStructure, x) -> dict[str, float]:
    """Sectional curvatures of the six planes spanned by pairs of S^m x."""
    b = s_basis(x, S, g)
    v = [b.orbit(m) for m in range(4)]
    pairs = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    return {name: sectional(R, g, v[i], v[j]) for name, (i, j) in zip(PLANE_NAMES, pairs)}


def s_basis_components(R, basis: SBasis) -> np.ndarray:
    """The six curvature values carried by an S-basis.

    Order: R(x,S2x,x,S2x), R(x,Sx,x,Sx), R(x,Sx,Sx,S2x), R(x,Sx,S2x,S3x),
    R(x,Sx,x,S2x), R(x,Sx,Sx,S3x).
    """
    x, s1, s2, s3 = (basis.orbit(m) for m in range(4))
    return np.array(
        [
            multilinear(R, x, s2, x, s2),
            multilinear(R, x, s1, x, s1),
            multilinear(R, x, s1, s1, s2),
            multilinear(R, x, s1, s2, s3),
            multilinear(R, x, s1, x, s2),
            multilinear(R, x, s1, s1, s3),
        ]
    )


def basis_coordinates(basis: SBasis, u) -> np.ndarray:
    """Coordinates (alpha, beta, gamma, delta) of u = alpha S3x + beta S2x + gamma Sx + delta x."""
    u = np.atleast_2d(np.asarray(u, dtype=float))
    return np.linalg.solve(basis.vectors.T, u.T).T


def orbit_expansions(components, coords) -> tuple[np.ndarray, np.ndarray]:
    """R(u,Su,u,Su) and R(u,S2u,u,S2u) from the six S-basis components.

    Valid for any (R)-invariant tensor; ``coords`` are the S-basis coordinates
    of u (batch allowed).
    """
    R1, R2, R3, R4, R5, R6 = np.asarray(components, dtype=float)
    a, b, c, d = np.atleast_2d(coords).T
    P = a * a + c * c
    Q = b * b + d * d
    E = d * b * (c * c - a * a) + a * c * (b * b - d * d)
    F = (b * c - a * d) * Q + (a * b + d * c) * P
    G = (a * b + c * d) * Q + (b * c - d * a) * P
    r_s = (
        P * Q * R1
        + (P * P + Q * Q + 2 * d * b * (a * a - c * c) + 2 * a * c * (d * d - b * b)) * R2
        + 2 * P * Q * R3
        + 6 * E * R4
        + 2 * G * R5
        + 2 * F * R6
    )
    r_s2 = (P * P + Q * Q) * R1 + 2 * P * Q * R2 + 8 * E * R3 + 6 * P * Q * R4 + 4 * F * R5 + 4 * G * R6
    return r_s, r_s2


def combined_expansion(components, coords) -> np.ndarray:
    """2 R(u,Su,u,Su) + R(u,S2u,u,S2u) in terms of |u|^2 and g(u, Su)."""
    R1, R2, R3, R4, R5, R6 = np.asarray(components, dtype=float)
    a, b, c, d = np.atleast_2d(coords).T
    n2 = a * a + b * b + c * c + d * d
    cs = a * b + b * c + d * c - a * d
    return n2 * n2 * R1 + 2 * (n2 * n2 - cs * cs) * R2 + cs * cs * (4 * R3 + 6 * R4) + 4 * cs * n2 * (R5 + R6)


def verify_basic_plane_relations(R, g, S: SkewStructure, x, hypothesis_tol: float = HYPOTHESIS_TOL) -> dict[str, float]:
    """Residuals of k(x,Sx) = k(Sx,S2x) = k(S2x,S3x) = k(S3x,x) and k(x,S2x) = k(Sx,S3x)."""
    _require("R", check_R_invariance(R, S), hypothesis_tol)
    k = basic_plane_curvatures(R, g, S, x)
    return {
        "k(Sx,S2x) = k(x,Sx)": abs(k["Sx,S2x"] - k["x,Sx"]),
        "k(S2x,S3x) = k(x,Sx)": abs(k["S2x,S3x"] - k["x,Sx"]),
        "k(S3x,x) = k(x,Sx)": abs(k["x,S3x"] - k["x,Sx"]),
        "k(Sx,S3x) = k(x,S2x)": abs(k["Sx,S3x"] - k["x,S2x"]),
    }


def _orthonormal_basis(g, S, x) -> SBasis:
    b = s_basis(x, S, g)
    if not b.is_orthonormal(1e-10):
        raise NotOrthonormalBasis("x must induce an orthonormal S-basis")
    return b


def _unit_batch(g, u) -> np.ndarray:
    u2 = np.atleast_2d(np.asarray(u, dtype=float))
    if np.abs(_quad(g, u2, u2) - 1.0).max() > 1e-10:
        raise NotUnitVector("u must be a unit vector")
    return u2


def _cos_angle_with_S(g, S, u2) -> np.ndarray:
    return _quad(g, u2, S.apply(u2))


def _plane_pair(R, g, S, u2) -> tuple[np.ndarray, np.ndarray]:
    su = S.apply(u2)
    s2u = S.apply(u2, 2)
    return _k(R, g, u2, su), _k(R, g, u2, s2u)


def _sum_lhs(R, g, S, u2) -> np.ndarray:
    c = _cos_angle_with_S(g, S, u2)
    k1, k2 = _plane_pair(R, g, S, u2)
    return 2.0 * (1.0 - c * c) * k1 + k2


def verify_orthonormal_sum_theorem(R, g, S: SkewStructure, x, u, hypothesis_tol: float = HYPOTHESIS_TOL) -> float:
    """Residual of

    2(1 - c^2) k(u,Su) + k(u,S2u) = k(x,S2x) + 2(1 - c^2) k(x,Sx)
        + c^2 (4 R(x,Sx,Sx,S2x) + 6 R(x,Sx,S2x,S3x))
        + 4 c (R(x,Sx,x,S2x) + R(x,Sx,Sx,S3x)),   c = cos angle(u, Su),

    for x inducing an orthonormal S-basis and unit u.
    """
    g = as_mat4(g)
    _require("R", check_R_invariance(R, S), hypothesis_tol)
    b = _orthonormal_basis(g, S, x)
    u2 = _unit_batch(g, u)
    R1, R2, R3, R4, R5, R6 = s_basis_components(R, b)
    c = _cos_angle_with_S(g, S, u2)
    rhs = R1 + 2.0 * (1.0 - c * c) * R2 + c * c * (4.0 * R3 + 6.0 * R4) + 4.0 * c * (R5 + R6)
    return float(np.abs(_sum_lhs(R, g, S, u2) - rhs).max())


def verify_three_angle_theorem(R, g, S: SkewStructure, x, u, hypothesis_tol: float = HYPOTHESIS_TOL) -> float:
    """Residual of the identity expressing 2(1-c^2) k(u,Su) + k(u,S2u) through
    x and the two vectors v, w with angle(v,Sv) = pi/3, angle(w,Sw) = 2pi/3.
    """
    g = as_mat4(g)
    _require("R", check_R_invariance(R, S), hypothesis_tol)
    b = _orthonormal_basis(g, S, x)
    u2 = _unit_batch(g, u)
    v = unit_vector_with_angle(b, math.pi / 3)
    w = unit_vector_with_angle(b, 2 * math.pi / 3)
    kx1 = sectional(R, g, b.orbit(0), b.orbit(1))
    kx2 = sectional(R, g, b.orbit(0), b.orbit(2))
    kv1, kv2 = (float(t[0]) for t in _plane_pair(R, g, S, v))
    kw1, kw2 = (float(t[0]) for t in _plane_pair(R, g, S, w))
    c = _cos_angle_with_S(g, S, u2)
    rhs = (
        (1.0 - 4.0 * c * c) * (2.0 * kx1 + kx2)
        + (2.0 * c * c + c) * (1.5 * kv1 + kv2)
        + (2.0 * c * c - c) * (1.5 * kw1 + kw2)
    )
    return float(np.abs(_sum_lhs(R, g, S, u2) - rhs).max())


def verify_R1_plane_relations(R, g, S: SkewStructure, x, hypothesis_tol: float = HYPOTHESIS_TOL) -> dict[str, float]:
    """Basic-plane equalities plus k(x,S2x) = 2(1 - cos^2 phi) k(x,Sx) under (R1).

    The basis need not be orthonormal.
    """
    _require("R1", check_R1_invariance(R, S), hypothesis_tol)
    out = verify_basic_plane_relations(R, g, S, x, hypothesis_tol=math.inf)
    b = s_basis(x, S, g)
    k = basic_plane_curvatures(R, g, S, x)
    c = math.cos(b.phi)
    out["k(x,S2x) = 2(1-cos^2 phi) k(x,Sx)"] = abs(k["x,S2x"] - 2.0 * (1.0 - c * c) * k["x,Sx"])
    return out


def r1_quartic_residual(R, g, S: SkewStructure, x, u, hypothesis_tol: float = HYPOTHESIS_TOL) -> float:
    """Residual of R(u,Su,u,Su) = (1 + 2c^2) R(x,Sx,x,Sx) + 2c R(x,Sx,x,S2x) under (R1)."""
    g = as_mat4(g)
    _require("R1", check_R1_invariance(R, S), hypothesis_tol)
    b = _orthonormal_basis(g, S, x)
    u2 = _unit_batch(g, u)
    x0, s1, s2 = b.orbit(0), b.orbit(1), b.orbit(2)
    c = _cos_angle_with_S(g, S, u2)
    su = S.apply(u2)
    lhs = multilinear(R, u2, su, u2, su)
    rhs = (1.0 + 2.0 * c * c) * multilinear(R, x0, s1, x0, s1) + 2.0 * c * multilinear(R, x0, s1, x0, s2)
    return float(np.abs(lhs - rhs).max())


def verify_R1_interpolation(R, g, S: SkewStructure, x, u, hypothesis_tol: float = HYPOTHESIS_TOL) -> float:
    """Residual of

    k(u,Su) = (1 + 2c^2 - 3c) / (1 - c^2) k(x,Sx) + 3c / (2 (1 - c^2)) k(v,Sv)

    with angle(v, Sv) = pi/3, maximised together with the intermediate
    quartic identity (:func:`r1_quartic_residual`).
    """
    g = as_mat4(g)
    quartic = r1_quartic_residual(R, g, S, x, u, hypothesis_tol)
    b = _orthonormal_basis(g, S, x)
    u2 = _unit_batch(g, u)
    v = unit_vector_with_angle(b, math.pi / 3)
    kx = sectional(R, g, b.orbit(0), b.orbit(1))
    kv = sectional(R, g, v, S.apply(v))
    c = _cos_angle_with_S(g, S, u2)
    ku = _k(R, g, u2, S.apply(u2))
    rhs = ((1.0 + 2.0 * c * c - 3.0 * c) * kx + 1.5 * c * kv) / (1.0 - c * c)
    return float(max(np.abs(ku - rhs).max(), quartic))


def random_unit_vectors(rng: np.random.Generator, g, n: int) -> np.ndarray:
    u = rng.normal(size=(n, 4))
    return u / np.sqrt(_quad(as_mat4(g), u, u))[:, None]


@dataclass
class SectionalReport:
    k_x_Sx: float
    k_x_S2x: float
    phi: float
    planes: dict[str, float]
    residuals: dict[str, float] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)


def sectional_report(
    R,
    g,
    S: SkewStructure,
    x,
    us,
    hypothesis_tol: float = HYPOTHESIS_TOL,
    conclusion_tol: float = CONCLUSION_TOL,
) -> SectionalReport:
    """Basic-plane curvatures and every applicable identity residual.

    Identities whose hypothesis fails are listed in ``skipped`` with the reason.
    """
    g = as_mat4(g)
    b = s_basis(x, S, g)
    planes = basic_plane_curvatures(R, g, S, x)
    rep = SectionalReport(k_x_Sx=planes["x,Sx"], k_x_S2x=planes["x,S2x"], phi=b.phi, planes=planes)

    def attempt(name, fn):
        try:
            val = fn()
        except (PropertyNotSatisfied, NotOrthonormalBasis) as e:
            rep.skipped[name] = str(e)
            return
        if isinstance(val, dict):
            val = max(val.values())
        rep.residuals[name] = float(val)
        rep.tolerances[name] = conclusion_tol

    attempt("basic_plane_equalities", lambda: verify_basic_plane_relations(R, g, S, x, hypothesis_tol))
    attempt("orthonormal_sum", lambda: verify_orthonormal_sum_theorem(R, g, S, x, us, hypothesis_tol))
    attempt("three_angle", lambda: verify_three_angle_theorem(R, g, S, x, us, hypothesis_tol))
    attempt("r1_plane_relations", lambda: verify_R1_plane_relations(R, g, S, x, hypothesis_tol))
    attempt("r1_interpolation", lambda: verify_R1_interpolation(R, g, S, x, us, hypothesis_tol))
    return rep
