"""Curvature classes defined by invariance under S.

A curvature tensor has property (R) when R(Sx, Sy, Sz, Su) = R(x, y, z, u)
and the stronger property (R1) when R(x, y, Sz, Su) = R(x, y, z, u).  The
(R)-invariant algebraic curvature tensors form a 6-dimensional space,
parametrised here by :class:`L2Params`.
"""
from __future__ import annotations

from dataclasses import astuple, dataclass

import numpy as np

from ..linalg4 import bianchi_cyclic, pullback4, real_array
from ..manifold import SkewStructure


@dataclass(frozen=True)
class L2Params:
    """R1 = R_1313, R2 = R_1212, R3 = R_1223, R4 = R_1234, R5 = R_1213, R6 = R_1224."""

    R1: float = 0.0
    R2: float = 0.0
    R3: float = 0.0
    R4: float = 0.0
    R5: float = 0.0
    R6: float = 0.0

    def as_array(self) -> np.ndarray:
        return real_array(astuple(self))

    @classmethod
    def from_array(cls, a) -> "L2Params":
        return cls(*real_array(a))


# (parameter slot, multiplier, 1-based components).  Each orbit of coordinate
# components under S carries one parameter.  R_2313 sits in the R6 orbit.
L2_ORBITS: tuple[tuple[int, float, tuple[str, ...]], ...] = (
    (0, 1.0, ("1313", "2424")),
    (1, 1.0, ("1212", "1414", "2323", "3434")),
    (2, 1.0, ("1223", "1214", "1434", "2334")),
    (3, 1.0, ("1234", "1423")),
    (3, 2.0, ("1324",)),
    (4, 1.0, ("1213", "2414", "2423", "1334")),
    (5, 1.0, ("1224", "1413", "2434", "2313")),
)


def _set_component(R: np.ndarray, key: str, value: float) -> None:
    """Write R_ijkh and every entry forced by the pair symmetries."""
    i, j, k, h = (int(ch) - 1 for ch in key)
    for a, b, s1 in ((i, j, 1.0), (j, i, -1.0)):
        for c, d, s2 in ((k, h, 1.0), (h, k, -1.0)):
            R[a, b, c, d] = s1 * s2 * value
            R[c, d, a, b] = s1 * s2 * value


def synth_L2(p: L2Params) -> np.ndarray:
    """The (R)-invariant curvature tensor with the given orbit values."""
    vals = p.as_array()
    R = np.zeros((4, 4, 4, 4), dtype=vals.dtype)
    for slot, mult, keys in L2_ORBITS:
        for key in keys:
            _set_component(R, key, mult * vals[slot])
    return R


def extract_L2_params(R) -> L2Params:
    R = np.asarray(R, dtype=float)
    return L2Params(R[0, 2, 0, 2], R[0, 1, 0, 1], R[0, 1, 1, 2], R[0, 1, 2, 3], R[0, 1, 0, 2], R[0, 1, 1, 3])


def check_L2_components(R) -> float:
    """Largest deviation of R from the orbit pattern.

    Compares every one of the 256 entries against the tensor rebuilt from the
    orbit representatives, so unequal orbit members, the factor-2 relation
    on R_1324 and any nonzero entry outside the pattern are all caught.
    """
    R = np.asarray(R, dtype=float)
    return float(np.abs(R - synth_L2(extract_L2_params(R))).max())


def check_R_invariance(R, S: SkewStructure) -> float:
    """max |R_abcd S_i^a S_j^b S_k^c S_h^d - R_ijkh|."""
    R = np.asarray(R, dtype=float)
    return float(np.abs(pullback4(R, S.matrix.astype(float)) - R).max())


def check_R1_invariance(R, S: SkewStructure) -> float:
    """max |R_ijcd S_k^c S_h^d - R_ijkh|."""
    R = np.asarray(R, dtype=float)
    M = S.matrix.astype(float)
    return float(np.abs(np.einsum("ijcd,kc,hd->ijkh", R, M, M, optimize=True) - R).max())


def s_symmetrize(R, S: SkewStructure) -> np.ndarray:
    """Average of R over the cyclic group generated by pulling back along S.

    Pulling back four times multiplies by (-1)^4, so the group has order 4
    and the average is a projection onto the (R)-invariant tensors.
    """
    R = np.asarray(R, dtype=float)
    M = S.matrix.astype(float)
    out = R.copy()
    cur = R
    for _ in range(3):
        cur = pullback4(cur, M)
        out = out + cur
    return out / 4.0


def project_curvature(T) -> np.ndarray:
    """Project a rank-4 array onto algebraic curvature tensors.

    Enforces the pair antisymmetries and pair swap, then removes the totally
    antisymmetric part so the first Bianchi identity holds.
    """
    T = np.asarray(T, dtype=float)
    T = T - T.transpose(1, 0, 2, 3)
    T = T - T.transpose(0, 1, 3, 2)
    T = (T + T.transpose(2, 3, 0, 1)) / 8.0
    return T - bianchi_cyclic(T) / 3.0


def random_curvature_tensor(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return project_curvature(rng.normal(scale=scale, size=(4, 4, 4, 4)))


def random_L2_params(rng: np.random.Generator, scale: float = 1.0) -> L2Params:
    return L2Params.from_array(rng.normal(scale=scale, size=6))


def r1_class_params(half: float, r56: float) -> L2Params:
    """Orbit values of the (R1) class: R1 = 2 R2 = 2 R3 = 2 R4 and R5 = R6."""
    return L2Params(2.0 * half, half, half, half, r56, r56)


def random_R1_params(rng: np.random.Generator, scale: float = 1.0) -> L2Params:
    half, r56 = rng.normal(scale=scale, size=2)
    return r1_class_params(half, r56)
