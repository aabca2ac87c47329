"""The skew-circulant structure S, the metric g it preserves and S-bases."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AngleOutOfRange,
    DegenerateBasis,
    DegenerateMetric,
    NotOrthonormalBasis,
    NotPositiveDefinite,
    ZeroVector,
)
from .linalg4 import as_mat4, as_vec4, bilinear, invert4, real_array, skew_circulant_from_row

SQRT2 = math.sqrt(2.0)


class BoundaryMetricWarning(UserWarning):
    """Chart metric with B == 0, i.e. g = A * identity."""


@dataclass(frozen=True, eq=False)
class SkewStructure:
    """Integer (1,1)-tensor with S^4 = -id.

    ``matrix[i, j]`` is S_i^j and row ``i`` lists the components of S e_i,
    i.e. ``(Sx)^j = sum_i S_i^j x^i``.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.shape != (4, 4) or not np.all(np.isin(m, (-1, 0, 1))):
            raise ValueError("S must be a 4x4 matrix with entries in {-1, 0, 1}")
        m = m.astype(np.int64)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if not np.array_equal(np.linalg.matrix_power(m, 4), -np.eye(4, dtype=np.int64)):
            raise ValueError("S^4 must equal -identity")

    @property
    def action(self) -> np.ndarray:
        """Matrix P with Sx = P @ x."""
        return self.matrix.T

    def apply(self, x, times: int = 1) -> np.ndarray:
        """S^times applied to a vector or to a batch of row vectors."""
        v = np.asarray(x, dtype=float)
        P = np.linalg.matrix_power(self.action, times % 8).astype(float)
        return v @ P.T

    def power(self, times: int) -> np.ndarray:
        return np.linalg.matrix_power(self.matrix, times % 8)


S_CHART = np.array(
    [
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [-1, 0, 0, 0],
    ]
)


def build_structure() -> SkewStructure:
    """The chart structure: S e1 = e2, S e2 = e3, S e3 = e4, S e4 = -e1."""
    return SkewStructure(S_CHART.copy())


def structure_from_images(images) -> SkewStructure:
    """Structure given by the images of the basis vectors, ``images[i] = S e_{i+1}``."""
    return SkewStructure(np.asarray(images))


def lie_structure() -> SkewStructure:
    """S e1 = -e4, S e2 = e1, S e3 = e2, S e4 = e3 (left-invariant frame)."""
    e = np.eye(4, dtype=int)
    return structure_from_images([-e[3], e[0], e[1], e[2]])


def fourth_power_is_minus_identity(S: SkewStructure) -> bool:
    return bool(np.array_equal(S.power(4), -np.eye(4, dtype=np.int64)))


def check_compatibility(S: SkewStructure, g) -> float:
    """max_ij |g(Se_i, Se_j) - g(e_i, e_j)|."""
    g = as_mat4(g)
    M = S.matrix.astype(float)
    return float(np.abs(M @ g @ M.T - g).max())


def associated_metric(g, S: SkewStructure) -> np.ndarray:
    """g~(x, y) = g(x, Sy) + g(Sx, y) as a component matrix."""
    g = as_mat4(g)
    M = S.matrix.astype(float)
    return g @ M.T + M @ g


def metric_matrix(A: float, B: float) -> np.ndarray:
    return skew_circulant_from_row((A, B, 0.0, -B))


def associated_metric_matrix(A: float, B: float) -> np.ndarray:
    return skew_circulant_from_row((2.0 * B, A, 0.0, -A))


def metric_inverse_closed_form(A: float, B: float) -> np.ndarray:
    D = A * A - 2.0 * B * B
    if D <= 0.0:
        raise DegenerateMetric(f"A^2 - 2B^2 = {D:.3e} <= 0")
    return skew_circulant_from_row((A, -B, 0.0, B)) / D


def associated_inverse_closed_form(A: float, B: float) -> np.ndarray:
    D = A * A - 2.0 * B * B
    if D <= 0.0:
        raise DegenerateMetric(f"A^2 - 2B^2 = {D:.3e} <= 0")
    return skew_circulant_from_row((-2.0 * B, A, 0.0, -A)) / (2.0 * D)


def check_positivity(A: float, B: float) -> None:
    """Raise NotPositiveDefinite unless A > sqrt(2) B >= 0.

    B == 0 is accepted (g = A * identity) with a BoundaryMetricWarning.
    """
    if not (math.isfinite(A) and math.isfinite(B)):
        raise NotPositiveDefinite("non-finite metric functions")
    if B < 0.0 or A <= SQRT2 * B or A <= 0.0:
        raise NotPositiveDefinite(f"need A > sqrt(2) B >= 0, got A={float(A)!r}, B={float(B)!r}")
    if B == 0.0:
        warnings.warn("B = 0: metric is A * identity", BoundaryMetricWarning, stacklevel=3)


@dataclass(frozen=True, eq=False)
class MetricAtPoint:
    A: float
    B: float
    g: np.ndarray
    g_tilde: np.ndarray
    ginv: np.ndarray
    g_tilde_inv: np.ndarray
    S: SkewStructure = field(default_factory=build_structure)


def metric_at(A: float, B: float, S: SkewStructure | None = None) -> MetricAtPoint:
    """g and g~ with their inverses for the metric functions (A, B)."""
    A = real_array(A)[()]
    B = real_array(B)[()]
    check_positivity(A, B)
    S = S if S is not None else build_structure()
    return MetricAtPoint(
        A=A,
        B=B,
        g=metric_matrix(A, B),
        g_tilde=associated_metric_matrix(A, B),
        ginv=metric_inverse_closed_form(A, B),
        g_tilde_inv=associated_inverse_closed_form(A, B),
        S=S,
    )


def metric_from_matrix(g, S: SkewStructure) -> MetricAtPoint:
    """Metric data for an arbitrary S-compatible matrix (e.g. a Lie frame)."""
    g = as_mat4(g)
    if np.linalg.eigvalsh(g).min() <= 0.0:
        raise NotPositiveDefinite("metric matrix is not positive definite")
    gt = associated_metric(g, S)
    return MetricAtPoint(
        A=float(g[0, 0]),
        B=float(g[0, 1]),
        g=g,
        g_tilde=gt,
        ginv=invert4(g),
        g_tilde_inv=invert4(gt),
        S=S,
    )


def angle(x, y, g) -> float:
    """Angle in [0, pi] between x and y with respect to g."""
    x = as_vec4(x)
    y = as_vec4(y)
    gxx = bilinear(g, x, x)
    gyy = bilinear(g, y, y)
    if gxx <= 0.0 or gyy <= 0.0:
        raise ZeroVector("angle needs two non-null vectors")
    c = bilinear(g, x, y) / math.sqrt(gxx * gyy)
    return math.acos(min(1.0, max(-1.0, c)))


@dataclass(frozen=True, eq=False)
class SBasis:
    """The quadruple (S^3 x, S^2 x, S x, x) with its Gram matrix and phi = angle(x, Sx)."""

    vectors: np.ndarray  # rows: S^3x, S^2x, Sx, x
    gram: np.ndarray
    phi: float
    S: SkewStructure
    g: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return self.vectors[3]

    def orbit(self, m: int) -> np.ndarray:
        """S^m x for m in 0..3."""
        return self.vectors[3 - m]

    def is_orthonormal(self, tol: float = 1e-10) -> bool:
        return bool(np.abs(self.gram - np.eye(4)).max() < tol)

    def angle_relations(self) -> dict[str, float]:
        """Residuals of the fixed angle relations between the basis vectors."""
        g = self.g
        v = [self.orbit(m) for m in range(4)]
        phi = self.phi
        return {
            "angle(Sx,S2x) = phi": abs(angle(v[1], v[2], g) - phi),
            "angle(S2x,S3x) = phi": abs(angle(v[2], v[3], g) - phi),
            "angle(x,S3x) = pi - phi": abs(angle(v[0], v[3], g) - (math.pi - phi)),
            "angle(x,S2x) = pi/2": abs(angle(v[0], v[2], g) - math.pi / 2),
            "angle(Sx,S3x) = pi/2": abs(angle(v[1], v[3], g) - math.pi / 2),
        }


def s_basis(x, S: SkewStructure, g) -> SBasis:
    """S-basis induced by x.

    Raises ZeroVector for x = 0 and DegenerateBasis when x, Sx, S^2x, S^3x
    are (numerically) dependent, which happens exactly when x lies in one of
    the two S-invariant real 2-planes.
    """
    x = as_vec4(x)
    g = as_mat4(g)
    if not np.any(x):
        raise ZeroVector("x must be nonzero")
    if check_compatibility(S, g) > 1e-10 * np.abs(g).max():
        raise ValueError("g is not preserved by S")
    vecs = np.array([S.apply(x, 3), S.apply(x, 2), S.apply(x, 1), x])
    gram = vecs @ g @ vecs.T
    scale = np.abs(g).max() * float(x @ x)
    det = np.linalg.det(gram)
    if det <= 1e-12 * scale**4:
        raise DegenerateBasis(f"x does not induce an S-basis (Gram det {det:.3e})")
    phi = angle(x, vecs[2], g)
    return SBasis(vectors=vecs, gram=gram, phi=phi, S=S, g=g)


def unit_vector_with_angle(basis: SBasis, phi: float) -> np.ndarray:
    """Unit vector u with angle(u, Su) = phi, built in an orthonormal S-basis.

    For |cos phi| <= 1/2 this is u = cos t x + sin t Sx with sin 2t = 2 cos phi.
    Otherwise u is the normalisation of x + s (Sx - S^3 x), whose angle
    cosine 2s / (1 + 2 s^2) sweeps (-sqrt2/2, sqrt2/2).
    """
    if not basis.is_orthonormal():
        raise NotOrthonormalBasis("unit_vector_with_angle needs an orthonormal S-basis")
    if not math.pi / 4 < phi < 3 * math.pi / 4:
        raise AngleOutOfRange(f"phi = {phi!r} outside (pi/4, 3pi/4)")
    c = math.cos(phi)
    x, sx, s3x = basis.orbit(0), basis.orbit(1), basis.orbit(3)
    if abs(c) <= 0.5:
        t = 0.5 * math.asin(2.0 * c)
        return math.cos(t) * x + math.sin(t) * sx
    # 2 c s^2 - 2 s + c = 0, smaller root
    s = (1.0 - math.sqrt(1.0 - 2.0 * c * c)) / (2.0 * c)
    u = x + s * (sx - s3x)
    return u / math.sqrt(1.0 + 2.0 * s * s)


def orthonormal_s_vector(g, S: SkewStructure) -> np.ndarray:
    """A g-unit vector x with g(x, Sx) = 0, so x induces an orthonormal S-basis.

    The form q(y) = g(y, Sy) is indefinite; mixing a positive and a negative
    eigenvector of q (relative to g) gives a null vector of q.
    """
    g = as_mat4(g)
    Q = 0.5 * associated_metric(g, S)  # q(y) = y.Q.y
    L = np.linalg.cholesky(g)
    Linv = np.linalg.inv(L)
    w, V = np.linalg.eigh(Linv @ Q @ Linv.T)
    lp, ln = w[-1], w[0]
    if not (lp > 0 > ln):
        raise DegenerateMetric("g(y, Sy) is not indefinite")
    theta = math.atan(math.sqrt(-lp / ln))
    y = math.cos(theta) * V[:, -1] + math.sin(theta) * V[:, 0]
    x = np.linalg.solve(L.T, y)
    return x / math.sqrt(bilinear(g, x, x))
