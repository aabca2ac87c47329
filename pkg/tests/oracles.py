"""Reference implementations used as test oracles.

Everything here is written independently of the package: plain loops,
Gauss-Jordan elimination, finite differences and sympy.
"""
from __future__ import annotations

import itertools
import math

import numpy as np
import sympy as sp

X = sp.symbols("x1:5")


def gauss_jordan_inverse(m):
    n = len(m)
    a = [list(map(float, row)) + [1.0 if i == j else 0.0 for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return np.array([row[n:] for row in a])


def ricci_loops(R, ginv):
    rho = np.zeros((4, 4))
    for j, k in itertools.product(range(4), repeat=2):
        rho[j, k] = sum(ginv[i, h] * R[i, j, k, h] for i in range(4) for h in range(4))
    return rho


def trace_loops(rho, inv):
    return sum(inv[i, j] * rho[i, j] for i in range(4) for j in range(4))


def multilinear_loops(R, x, y, z, w):
    return sum(
        R[i, j, k, h] * x[i] * y[j] * z[k] * w[h] for i, j, k, h in itertools.product(range(4), repeat=4)
    )


def sectional_direct(R, g, x, y):
    gxx, gyy, gxy = x @ g @ x, y @ g @ y, x @ g @ y
    return multilinear_loops(R, x, y, x, y) / (gxx * gyy - gxy * gxy)


def apply_S_rows(matrix, x):
    """(Sx)^j = sum_i S_i^j x^i, written out."""
    return np.array([sum(matrix[i][j] * x[i] for i in range(4)) for j in range(4)])


def central_difference(f, p, axis, h=1e-5):
    """Fourth-order central difference of f along coordinate ``axis`` (0-based)."""
    p = np.asarray(p, dtype=float)
    e = np.zeros(4)
    e[axis] = h
    return (-f(p + 2 * e) + 8 * f(p + e) - 8 * f(p - e) + f(p - 2 * e)) / (12 * h)


def to_sympy(text: str):
    """Expression text in the package syntax as a sympy expression."""
    names = {f"x{i + 1}": X[i] for i in range(4)}
    names.update(sin=sp.sin, cos=sp.cos, exp=sp.exp, ln=sp.log, sqrt=sp.sqrt)
    return sp.sympify(text.replace("^", "**"), locals=names)


def symbolic_chart_curvature(A_text: str, B_text: str, point):
    """Christoffel symbols and R_ijkh of g = skew-circulant(A, B, 0, -B), exactly.

    Conventions: gamma[i, j, k] = Gamma^k_ij, and
    R_ijkh = g_lh (d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^m_jk Gamma^l_im - Gamma^m_ik Gamma^l_jm).
    """
    A, B = to_sympy(A_text), to_sympy(B_text)
    g = sp.Matrix(
        [
            [A, B, 0, -B],
            [B, A, B, 0],
            [0, B, A, B],
            [-B, 0, B, A],
        ]
    )
    ginv = g.inv()
    G = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for i, j, k in itertools.product(range(4), repeat=3):
        G[i][j][k] = sp.Rational(1, 2) * sum(
            ginv[k, l] * (sp.diff(g[j, l], X[i]) + sp.diff(g[i, l], X[j]) - sp.diff(g[i, j], X[l])) for l in range(4)
        )
    subs = dict(zip(X, [sp.Float(v, 30) for v in point]))
    Gn = np.array([[[float(G[i][j][k].subs(subs)) for k in range(4)] for j in range(4)] for i in range(4)])
    dG = np.array(
        [[[[float(sp.diff(G[j][k][l], X[i]).subs(subs)) for l in range(4)] for k in range(4)] for j in range(4)] for i in range(4)]
    )
    gn = np.array(g.subs(subs).evalf(), dtype=float)
    R = np.zeros((4, 4, 4, 4))
    for i, j, k, h in itertools.product(range(4), repeat=4):
        total = 0.0
        for l in range(4):
            up = dG[i, j, k, l] - dG[j, i, k, l]
            up += sum(Gn[j, k, m] * Gn[i, m, l] - Gn[i, k, m] * Gn[j, m, l] for m in range(4))
            total += gn[l, h] * up
        R[i, j, k, h] = total
    return Gn, R


def lie_curvature_loops(c):
    """Curvature of a left-invariant metric that is the identity in the frame.

    nabla via the Koszul formula, then R(e_i,e_j)e_k = nabla_i nabla_j e_k
    - nabla_j nabla_i e_k - nabla_[e_i,e_j] e_k, all with explicit sums.
    """

    def bracket(i, j, k):
        return c[i][j][k]

    # 2 <nabla_i e_j, e_k> = <[e_i,e_j],e_k> - <[e_j,e_k],e_i> + <[e_k,e_i],e_j>
    nab = np.zeros((4, 4, 4))
    for i, j, k in itertools.product(range(4), repeat=3):
        nab[i, j, k] = 0.5 * (bracket(i, j, k) - bracket(j, k, i) + bracket(k, i, j))

    def nabla_vec(i, v):
        """nabla_{e_i} of the constant-coefficient field v."""
        return sum(v[j] * nab[i, j] for j in range(4))

    R = np.zeros((4, 4, 4, 4))
    for i, j, k in itertools.product(range(4), repeat=3):
        t = nabla_vec(i, nab[j, k]) - nabla_vec(j, nab[i, k])
        for m in range(4):
            t = t - c[i][j][m] * nab[m, k]
        R[i, j, k] = t
    return nab, R


def horner(coeffs, x):
    acc = 0.0
    for a in coeffs:
        acc = acc * x + a
    return acc


def rotation_planes(action):
    """Two invariant real planes of S (eigen-angles pi/4 and 3pi/4)."""
    w, V = np.linalg.eig(np.asarray(action, dtype=float))
    planes = []
    for target in (math.pi / 4, 3 * math.pi / 4):
        idx = int(np.argmin(np.abs(np.angle(w) - target)))
        planes.append((V[:, idx].real, V[:, idx].imag))
    return planes
