"""Levi-Civita connection and Riemann tensor.

Two sources of geometry are supported:

* a coordinate chart whose metric is the skew-circulant matrix built from two
  scalar fields A, B (Christoffel symbols from exact derivatives), and
* a Lie group with a left-invariant metric that is the identity in the frame
  e1..e4 (Koszul formula from structure constants).

Conventions: ``gamma[i, j, k]`` is the e_k component of nabla_{e_i} e_j;
R(x, y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z and
``R[i, j, k, h] = g(R(e_i, e_j) e_k, e_h)``.  With these, the hyperbolic
example g45(1, 1) has R_1212 = +1 and Ricci -3.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import expr as ex
from .errors import ParameterOutOfRange
from .linalg4 import bianchi_cyclic, skew_circulant_from_row
from .manifold import (
    MetricAtPoint,
    SkewStructure,
    build_structure,
    lie_structure,
    metric_at,
    metric_from_matrix,
)

_E_B = skew_circulant_from_row((0.0, 1.0, 0.0, -1.0))  # g = A * I + B * _E_B


@dataclass(frozen=True, eq=False)
class ChartManifold:
    A: ex.ScalarField
    B: ex.ScalarField
    S: SkewStructure = field(default_factory=build_structure)
    domain_note: str = ""

    def __post_init__(self):
        # first and second partials, computed once
        dA = [self.A.diff(i) for i in range(1, 5)]
        dB = [self.B.diff(i) for i in range(1, 5)]
        object.__setattr__(self, "_dA", dA)
        object.__setattr__(self, "_dB", dB)
        object.__setattr__(self, "_ddA", [[dA[i].diff(j) for j in range(1, 5)] for i in range(4)])
        object.__setattr__(self, "_ddB", [[dB[i].diff(j) for j in range(1, 5)] for i in range(4)])

    @classmethod
    def from_strings(cls, A: str, B: str, domain_note: str = "") -> "ChartManifold":
        return cls(ex.parse(A), ex.parse(B), domain_note=domain_note)

    def metric(self, p) -> MetricAtPoint:
        return metric_at(self.A(p), self.B(p), self.S)

    def metric_jets(self, p):
        """(g, dg, ddg) at p with dg[l] = d_l g and ddg[l, m] = d_l d_m g."""
        a, b = self.A(p), self.B(p)
        g = a * np.eye(4) + b * _E_B
        da = np.array([f(p) for f in self._dA])
        db = np.array([f(p) for f in self._dB])
        dda = np.array([[f(p) for f in row] for row in self._ddA])
        ddb = np.array([[f(p) for f in row] for row in self._ddB])
        dg = da[:, None, None] * np.eye(4) + db[:, None, None] * _E_B
        ddg = dda[:, :, None, None] * np.eye(4) + ddb[:, :, None, None] * _E_B
        return g, dg, ddg


@dataclass(frozen=True, eq=False)
class LieGroupManifold:
    """Lie algebra with [e_i, e_j] = sum_k brackets[i, j, k] e_k and g(e_i, e_j) = delta_ij."""

    brackets: np.ndarray
    S: SkewStructure = field(default_factory=lie_structure)
    name: str = ""

    def __post_init__(self):
        c = np.array(self.brackets, dtype=float)
        if c.shape != (4, 4, 4):
            raise ValueError("structure constants must have shape (4, 4, 4)")
        if np.abs(c + c.transpose(1, 0, 2)).max() > 0.0:
            raise ValueError("structure constants must be antisymmetric in the first two indices")
        c.setflags(write=False)
        object.__setattr__(self, "brackets", c)

    def metric(self, p=None) -> MetricAtPoint:
        return metric_from_matrix(np.eye(4), self.S)


def jacobi_residual(c) -> float:
    """max |[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]|."""
    c = np.asarray(c, dtype=float)
    t = np.einsum("ijm,mkl->ijkl", c, c)
    cyc = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    return float(np.abs(cyc).max())


@dataclass(frozen=True, eq=False)
class ConnectionCoefficients:
    gamma: np.ndarray  # gamma[i, j, k]: e_k component of nabla_{e_i} e_j
    dgamma: np.ndarray | None = None  # chart only: dgamma[m, i, j, k] = d_m gamma[i, j, k]

    def nabla(self, i: int, j: int) -> np.ndarray:
        """nabla_{e_i} e_j (0-based indices) as a component vector."""
        return self.gamma[i, j]


def christoffel(m: ChartManifold, p) -> ConnectionCoefficients:
    """Christoffel symbols of the chart metric at p, with their first derivatives."""
    met = m.metric(p)  # raises NotPositiveDefinite
    g, dg, ddg = m.metric_jets(p)
    ginv = met.ginv
    # T[i, j, l] = d_i g_jl + d_j g_il - d_l g_ij
    T = dg + dg.transpose(1, 0, 2) - dg.transpose(1, 2, 0)
    gamma = 0.5 * np.einsum("kl,ijl->ijk", ginv, T)
    # d_m T[i, j, l]
    dT = ddg + ddg.transpose(0, 2, 1, 3) - ddg.transpose(0, 2, 3, 1)
    dginv = -np.einsum("ka,mab,bl->mkl", ginv, dg, ginv)
    dgamma = 0.5 * (np.einsum("mkl,ijl->mijk", dginv, T) + np.einsum("kl,mijl->mijk", ginv, dT))
    return ConnectionCoefficients(gamma=gamma, dgamma=dgamma)


def metric_compatibility_residual(m: ChartManifold, p, conn: ConnectionCoefficients | None = None) -> float:
    """max |d_i g_jk - Gamma^l_ij g_lk - Gamma^l_ik g_jl|."""
    conn = conn or christoffel(m, p)
    g, dg, _ = m.metric_jets(p)
    G = conn.gamma
    res = dg - np.einsum("ijl,lk->ijk", G, g) - np.einsum("ikl,jl->ijk", G, g)
    return float(np.abs(res).max())


def riemann_chart(m: ChartManifold, p, conn: ConnectionCoefficients | None = None) -> np.ndarray:
    conn = conn or christoffel(m, p)
    G, dG = conn.gamma, conn.dgamma
    g = m.metric(p).g
    # R(e_i, e_j) e_k, component l
    Rup = (
        dG  # d_i gamma[j, k, l]
        - dG.transpose(1, 0, 2, 3)  # d_j gamma[i, k, l]
        + np.einsum("jkm,iml->ijkl", G, G)
        - np.einsum("ikm,jml->ijkl", G, G)
    )
    return np.einsum("ijkl,lh->ijkh", Rup, g)


def g45_algebra(a: float, b: float) -> LieGroupManifold:
    """[e1,e4] = e1, [e2,e4] = a e2, [e3,e4] = b e3 with -1 <= b <= a <= 1, ab != 0."""
    a = float(a)
    b = float(b)
    if not (-1.0 <= b <= a <= 1.0) or a * b == 0.0:
        raise ParameterOutOfRange(f"g45 needs -1 <= b <= a <= 1 and ab != 0, got a={a}, b={b}")
    c = np.zeros((4, 4, 4))
    for idx, coeff in ((0, 1.0), (1, a), (2, b)):
        c[idx, 3, idx] = coeff
        c[3, idx, idx] = -coeff
    return LieGroupManifold(c, name=f"g45(a={a:g}, b={b:g})")


def lie_from_brackets(entries, S: SkewStructure | None = None, name: str = "") -> LieGroupManifold:
    """Build from ``[(i, j, (c1, c2, c3, c4)), ...]`` with 1-based i < j or i > j."""
    c = np.zeros((4, 4, 4))
    for i, j, coeffs in entries:
        if not (1 <= i <= 4 and 1 <= j <= 4) or i == j:
            raise ValueError(f"bad bracket indices ({i}, {j})")
        v = np.asarray(coeffs, dtype=float)
        if v.shape != (4,):
            raise ValueError("bracket coefficients must have 4 entries")
        c[i - 1, j - 1] = v
        c[j - 1, i - 1] = -v
    return LieGroupManifold(c, S if S is not None else lie_structure(), name=name)


def koszul_nabla(m: LieGroupManifold) -> ConnectionCoefficients:
    """2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y) in an orthonormal frame."""
    c = m.brackets
    gamma = 0.5 * (c - c.transpose(2, 0, 1) + c.transpose(1, 2, 0))
    return ConnectionCoefficients(gamma=gamma)


def lie_metric_compatibility_residual(conn: ConnectionCoefficients) -> float:
    """max |<nabla_i e_j, e_k> + <e_j, nabla_i e_k>| for the identity metric."""
    G = conn.gamma
    return float(np.abs(G + G.transpose(0, 2, 1)).max())


def riemann_lie(m: LieGroupManifold, nabla: ConnectionCoefficients | None = None) -> np.ndarray:
    G = (nabla or koszul_nabla(m)).gamma
    c = m.brackets
    # nabla_i(nabla_j e_k) - nabla_j(nabla_i e_k) - nabla_[e_i,e_j] e_k, component l = h
    return (
        np.einsum("jkm,iml->ijkl", G, G)
        - np.einsum("ikm,jml->ijkl", G, G)
        - np.einsum("ijm,mkl->ijkl", c, G)
    )


def bianchi_first_residual(R) -> float:
    """max |R_ijkh + R_jkih + R_kijh|."""
    return float(np.abs(bianchi_cyclic(R)).max())


@dataclass(frozen=True, eq=False)
class PointGeometry:
    """Everything at one point: metric data, connection and curvature."""

    metric: MetricAtPoint
    connection: ConnectionCoefficients
    R: np.ndarray

    @property
    def S(self) -> SkewStructure:
        return self.metric.S


def geometry_at(m: ChartManifold | LieGroupManifold, p=(0.0, 0.0, 0.0, 0.0)) -> PointGeometry:
    if isinstance(m, LieGroupManifold):
        conn = koszul_nabla(m)
        return PointGeometry(m.metric(), conn, riemann_lie(m, conn))
    conn = christoffel(m, p)
    return PointGeometry(m.metric(p), conn, riemann_chart(m, p, conn))
