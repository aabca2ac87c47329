import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewcurv.analysis.classes import (
    L2Params,
    check_L2_components,
    check_R1_invariance,
    check_R_invariance,
    extract_L2_params,
    project_curvature,
    r1_class_params,
    random_curvature_tensor,
    random_L2_params,
    s_symmetrize,
    synth_L2,
)
from skewcurv.connection import g45_algebra, riemann_lie
from skewcurv.manifold import build_structure

IDX = list(itertools.product(range(4), repeat=4))
POS = {idx: n for n, idx in enumerate(IDX)}
params = st.lists(st.floats(-5, 5, allow_nan=False), min_size=6, max_size=6)


def signed_permutation(S):
    """S e_i = sign[i] e_perm[i] read off the rows of the structure matrix."""
    perm, sign = [], []
    for row in S.matrix:
        j = int(np.flatnonzero(row)[0])
        perm.append(j)
        sign.append(int(row[j]))
    return perm, sign


def constraint_rows(S, pairs_only=False):
    """Linear constraints (one row per equation) on flattened 4-tensors.

    Curvature symmetries, first Bianchi, and either R(Sx,Sy,Sz,Sw) = R or,
    with ``pairs_only``, R(x,y,Sz,Sw) = R.
    """
    perm, sign = signed_permutation(S)
    rows = []

    def eq(terms):
        r = np.zeros(256)
        for coeff, idx in terms:
            r[POS[idx]] += coeff
        rows.append(r)

    for i, j, k, h in IDX:
        eq([(1, (i, j, k, h)), (1, (j, i, k, h))])
        eq([(1, (i, j, k, h)), (1, (i, j, h, k))])
        eq([(1, (i, j, k, h)), (-1, (k, h, i, j))])
        eq([(1, (i, j, k, h)), (1, (j, k, i, h)), (1, (k, i, j, h))])
        if pairs_only:
            s = sign[k] * sign[h]
            eq([(s, (i, j, perm[k], perm[h])), (-1, (i, j, k, h))])
        else:
            s = sign[i] * sign[j] * sign[k] * sign[h]
            eq([(s, (perm[i], perm[j], perm[k], perm[h])), (-1, (i, j, k, h))])
    return np.array(rows)


def null_space(C, tol=1e-10):
    _, s, vt = np.linalg.svd(C)
    rank = int((s > tol).sum())
    return vt[rank:]


def test_invariant_space_is_spanned_by_orbit_table():
    S = build_structure()
    N = null_space(constraint_rows(S))
    assert N.shape[0] == 6
    basis = np.array([synth_L2(L2Params.from_array(e)).ravel() for e in np.eye(6)])
    assert np.linalg.matrix_rank(np.vstack([N, basis]), tol=1e-9) == 6
    assert np.linalg.matrix_rank(basis, tol=1e-9) == 6


def test_pair_invariant_class_is_two_dimensional():
    S = build_structure()
    N = null_space(constraint_rows(S, pairs_only=True))
    assert N.shape[0] == 2
    basis = np.array([synth_L2(r1_class_params(*e)).ravel() for e in np.eye(2)])
    assert np.linalg.matrix_rank(np.vstack([N, basis]), tol=1e-9) == 2


@given(params)
def test_synth_is_invariant_curvature_tensor(values):
    S = build_structure()
    R = synth_L2(L2Params(*values))
    assert check_R_invariance(R, S) < 1e-12
    C = constraint_rows(S)
    assert np.abs(C @ R.ravel()).max() < 1e-12
    assert extract_L2_params(R) == L2Params(*values)


def test_symmetrized_random_tensors_follow_orbit_pattern(rng):
    S = build_structure()
    for _ in range(50):
        R = random_curvature_tensor(rng)
        assert check_L2_components(R) > 1e-3
        Rs = s_symmetrize(R, S)
        assert check_L2_components(Rs) < 1e-12
        assert check_R_invariance(Rs, S) < 1e-12
        # the average is a projection
        np.testing.assert_allclose(s_symmetrize(Rs, S), Rs, atol=1e-14)


def test_R1_class(rng):
    S = build_structure()
    for _ in range(20):
        half, r56 = rng.normal(size=2)
        R = synth_L2(r1_class_params(half, r56))
        assert check_R1_invariance(R, S) < 1e-12
    generic = synth_L2(random_L2_params(rng))
    assert check_R1_invariance(generic, S) > 1e-3


def test_g45_invariance_residuals():
    m = g45_algebra(1.0, 1.0)
    R = riemann_lie(m)
    assert check_R_invariance(R, m.S) == 0.0
    assert check_R1_invariance(R, m.S) == pytest.approx(1.0)


def test_project_curvature_is_idempotent(rng):
    R = project_curvature(rng.normal(size=(4, 4, 4, 4)))
    np.testing.assert_allclose(project_curvature(R), R, atol=1e-14)
