"""Fixed-size (n = 4) matrix and rank-4 tensor helpers.

Matrices are ``(4, 4)`` float arrays, tensors ``(4, 4, 4, 4)`` C-ordered
arrays indexed ``[i, j, k, h]`` (so the flat buffer is the row-major
256-entry layout).  Everything here is a pure function of its inputs.
"""
from __future__ import annotations

import numpy as np

from .errors import SingularMatrix

DIM = 4
IDENTITY = np.eye(DIM)


def real_array(x) -> np.ndarray:
    """``x`` as a float array, keeping extended precision (longdouble) if given."""
    a = np.asarray(x)
    if a.dtype != np.longdouble:
        a = a.astype(float, copy=False)
    return a


def as_mat4(m) -> np.ndarray:
    a = real_array(m)
    if a.shape != (DIM, DIM):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def as_vec4(v) -> np.ndarray:
    a = real_array(v)
    if a.shape != (DIM,):
        raise ValueError(f"expected a 4-vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector has non-finite entries")
    return a


def invert4(m) -> np.ndarray:
    """Inverse of a 4x4 matrix.

    Raises SingularMatrix when ``|det m| < 1e-14 * max|m_ij|**4``; the
    threshold scales with the entries so small but well-conditioned metrics
    are not rejected.
    """
    m = as_mat4(m)
    scale = np.abs(m).max()
    det = np.linalg.det(m)
    if scale == 0.0 or abs(det) < 1e-14 * scale**4:
        raise SingularMatrix(f"matrix is singular (det={det:.3e}, scale={scale:.3e})")
    return np.linalg.inv(m)


def skew_circulant_from_row(row) -> np.ndarray:
    """Right skew-circulant matrix with first row ``row``.

    Each row is the previous one shifted one place to the right, the entry
    that wraps around to the front changing sign.
    """
    r = real_array(row)
    if r.shape != (DIM,):
        raise ValueError("row must have 4 entries")
    out = np.empty((DIM, DIM), dtype=r.dtype)
    out[0] = r
    for i in range(1, DIM):
        prev = out[i - 1]
        out[i, 1:] = prev[:-1]
        out[i, 0] = -prev[-1]
    return out


def bilinear(m, x, y) -> float:
    """m(x, y) = x^i m_ij y^j."""
    return float(np.asarray(x) @ np.asarray(m) @ np.asarray(y))


def contract_ricci(R, ginv) -> np.ndarray:
    """rho_jk = ginv^{ih} R_{ijkh}."""
    return np.einsum("ih,ijkh->jk", real_array(ginv), real_array(R))


def full_contract(rho, inv) -> float:
    """Trace of a (0,2) tensor against an inverse metric: inv^{ij} rho_ij."""
    return np.sum(real_array(inv) * real_array(rho))[()]


def raise_index(t, ginv, axis: int = 0) -> np.ndarray:
    """Raise the covariant index ``axis`` of ``t`` with ``ginv``."""
    t = np.asarray(t, dtype=float)
    moved = np.tensordot(np.asarray(ginv, dtype=float), t, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


def lower_index(t, g, axis: int = 0) -> np.ndarray:
    return raise_index(t, g, axis)


def multilinear(R, *vectors) -> np.ndarray | float:
    """Evaluate a rank-4 covariant tensor on four vectors.

    Each vector may be ``(4,)`` or a batch ``(n, 4)``; batched arguments are
    evaluated elementwise along the batch axis.
    """
    if len(vectors) != 4:
        raise ValueError("need exactly four vectors")
    vs = [np.asarray(v, dtype=float) for v in vectors]
    if all(v.ndim == 1 for v in vs):
        return float(np.einsum("ijkh,i,j,k,h->", R, *vs, optimize=True))
    n = max(v.shape[0] for v in vs if v.ndim == 2)
    vs = [np.broadcast_to(v, (n, DIM)) for v in vs]
    return np.einsum("ijkh,ni,nj,nk,nh->n", R, *vs, optimize=True)


def pullback4(R, M) -> np.ndarray:
    """T_ijkh = R_abcd M_i^a M_j^b M_k^c M_h^d (``M[i, a]`` = M_i^a)."""
    return np.einsum("abcd,ia,jb,kc,hd->ijkh", R, M, M, M, M, optimize=True)


def symmetry_residual(R) -> float:
    """Largest violation of the algebraic curvature symmetries (no Bianchi)."""
    R = np.asarray(R, dtype=float)
    return float(
        max(
            np.abs(R + R.transpose(1, 0, 2, 3)).max(),
            np.abs(R + R.transpose(0, 1, 3, 2)).max(),
            np.abs(R - R.transpose(2, 3, 0, 1)).max(),
        )
    )


def bianchi_cyclic(R) -> np.ndarray:
    """R_ijkh + R_jkih + R_kijh, the cyclic sum in the first three slots."""
    R = np.asarray(R, dtype=float)
    return R + R.transpose(2, 0, 1, 3) + R.transpose(1, 2, 0, 3)
