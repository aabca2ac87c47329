"""Ricci tensor, scalar curvatures and the almost-Einstein decomposition."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateMetric, PropertyNotSatisfied, ZeroVector
from ..linalg4 import as_vec4, bilinear, contract_ricci, full_contract, real_array
from ..manifold import MetricAtPoint, s_basis
from .classes import L2Params, check_R_invariance

HYPOTHESIS_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class RicciData:
    rho: np.ndarray
    tau: float
    tau_star: float
    alpha: float
    beta: float
    decomposition_residual: float


def system_rho_residual(rho) -> float:
    """Deviation from rho_11 = .. = rho_44, rho_12 = rho_23 = rho_34 = -rho_14, rho_13 = rho_24 = 0."""
    r = real_array(rho)
    d = np.diag(r)
    off = np.array([r[0, 1], r[1, 2], r[2, 3], -r[0, 3]])
    return float(
        max(
            np.abs(d - d[0]).max(),
            np.abs(off - off[0]).max(),
            abs(r[0, 2]),
            abs(r[1, 3]),
            np.abs(r - r.T).max(),
        )
    )


def _denominator(A: float, B: float) -> float:
    D = A * A - 2.0 * B * B
    if D <= 0.0:
        raise DegenerateMetric(f"A^2 - 2B^2 = {D:.3e} <= 0")
    return D


def ricci_closed_forms(p: L2Params, A: float, B: float) -> np.ndarray:
    """Ricci matrix of the (R)-invariant tensor ``p`` in the metric (A, B)."""
    D = _denominator(A, B)
    R1, R2, R3, R4, R5, R6 = p.as_array()
    diag = (2.0 * B * (R5 + R6) - A * (2.0 * R2 + R1)) / D
    off = (B * (2.0 * R3 - R2 + 3.0 * R4) - A * (R5 + R6)) / D
    rho = diag * np.eye(4)
    for i, j in ((0, 1), (1, 2), (2, 3)):
        rho[i, j] = rho[j, i] = off
    rho[0, 3] = rho[3, 0] = -off
    return rho


def scalars_closed_forms(rho, A: float, B: float) -> tuple[float, float]:
    """(tau, tau*) from rho_11, rho_12 for a Ricci matrix of the invariant shape."""
    D = _denominator(A, B)
    r = real_array(rho)
    r11, r12 = r[0, 0], r[0, 1]
    tau = 4.0 / D * (A * r11 - 2.0 * B * r12)
    tau_star = 4.0 / D * (A * r12 - B * r11)
    return tau, tau_star


def almost_einstein_decompose(rho, g, g_tilde, tau: float, tau_star: float) -> RicciData:
    rho = real_array(rho)
    resid = np.abs(rho - tau / 4.0 * real_array(g) - tau_star / 4.0 * real_array(g_tilde)).max()
    return RicciData(
        rho=rho,
        tau=tau,
        tau_star=tau_star,
        alpha=tau / 4.0,
        beta=tau_star / 4.0,
        decomposition_residual=float(resid),
    )


def ricci_data(R, metric: MetricAtPoint) -> RicciData:
    """Contract R, take both traces and decompose against g and g~."""
    rho = contract_ricci(R, metric.ginv)
    tau = full_contract(rho, metric.ginv)
    tau_star = full_contract(rho, metric.g_tilde_inv)
    return almost_einstein_decompose(rho, metric.g, metric.g_tilde, tau, tau_star)


def einstein_check(d: RicciData, tol: float) -> bool:
    """Einstein within ``tol``: tau* vanishes and rho = (tau/4) g + (tau*/4) g~."""
    return bool(abs(d.tau_star) < tol and d.decomposition_residual < tol)


def ricci_direction(rho, g, x) -> float:
    """r(x) = rho(x, x) / g(x, x)."""
    x = as_vec4(x)
    gxx = bilinear(g, x, x)
    if not np.any(x) or gxx <= 0.0:
        raise ZeroVector("Ricci curvature needs a non-null direction")
    return bilinear(rho, x, x) / gxx


def verify_ricci_directions(R, metric: MetricAtPoint, x, hypothesis_tol: float = HYPOTHESIS_TOL) -> dict[str, float]:
    """Ricci curvatures along an S-basis all equal tau/4 + (tau*/2) cos(phi).

    Returns the predicted common value and the residual of each direction.
    """
    res = check_R_invariance(R, metric.S)
    if res > hypothesis_tol:
        raise PropertyNotSatisfied("R", res, hypothesis_tol)
    basis = s_basis(x, metric.S, metric.g)
    d = ricci_data(R, metric)
    predicted = d.tau / 4.0 + d.tau_star / 2.0 * math.cos(basis.phi)
    out = {"predicted": predicted}
    for m, name in enumerate(("r(x)", "r(Sx)", "r(S2x)", "r(S3x)")):
        out[name] = abs(ricci_direction(d.rho, metric.g, basis.orbit(m)) - predicted)
    return out
