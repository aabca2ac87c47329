import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import gauss_jordan_inverse, multilinear_loops, ricci_loops, trace_loops
from skewcurv.analysis.classes import project_curvature
from skewcurv.errors import SingularMatrix
from skewcurv.linalg4 import (
    as_mat4,
    bianchi_cyclic,
    contract_ricci,
    full_contract,
    invert4,
    lower_index,
    multilinear,
    pullback4,
    raise_index,
    skew_circulant_from_row,
    symmetry_residual,
)

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


@given(arrays(float, (4, 4), elements=finite))
def test_invert4_matches_gauss_jordan_on_spd(q):
    m = q @ q.T + 0.5 * np.eye(4)
    np.testing.assert_allclose(invert4(m), gauss_jordan_inverse(m), atol=1e-10)
    assert np.abs(m @ invert4(m) - np.eye(4)).max() < 1e-10


def test_invert4_scale_invariant_threshold():
    m = 1e-6 * np.diag([1.0, 2.0, 3.0, 4.0])
    np.testing.assert_allclose(invert4(m) @ m, np.eye(4), atol=1e-12)


@pytest.mark.parametrize(
    "m",
    [np.zeros((4, 4)), np.ones((4, 4)), np.diag([1.0, 1.0, 1.0, 0.0])],
)
def test_invert4_rejects_singular(m):
    with pytest.raises(SingularMatrix):
        invert4(m)


def test_shape_and_finiteness_validation():
    with pytest.raises(ValueError):
        as_mat4(np.eye(3))
    with pytest.raises(ValueError):
        as_mat4(np.full((4, 4), np.nan))


def test_skew_circulant_layout():
    m = skew_circulant_from_row((1.0, 2.0, 3.0, 4.0))
    expected = np.array(
        [
            [1, 2, 3, 4],
            [-4, 1, 2, 3],
            [-3, -4, 1, 2],
            [-2, -3, -4, 1],
        ],
        dtype=float,
    )
    np.testing.assert_array_equal(m, expected)


def test_contractions_against_loops(rng):
    R = project_curvature(rng.normal(size=(4, 4, 4, 4)))
    q = rng.normal(size=(4, 4))
    ginv = q @ q.T + np.eye(4)
    rho = contract_ricci(R, ginv)
    np.testing.assert_allclose(rho, ricci_loops(R, ginv), atol=1e-12)
    assert full_contract(rho, ginv) == pytest.approx(trace_loops(rho, ginv), abs=1e-12)


def test_multilinear_single_and_batched(rng):
    R = rng.normal(size=(4, 4, 4, 4))
    vs = rng.normal(size=(4, 5, 4))
    batch = multilinear(R, *vs)
    for n in range(5):
        ref = multilinear_loops(R, *(v[n] for v in vs))
        assert batch[n] == pytest.approx(ref, abs=1e-12)
        assert multilinear(R, *(v[n] for v in vs)) == pytest.approx(ref, abs=1e-12)
    # a single vector broadcasts against a batch
    mixed = multilinear(R, vs[0], vs[1][0], vs[2], vs[3][0])
    assert mixed[2] == pytest.approx(multilinear_loops(R, vs[0][2], vs[1][0], vs[2][2], vs[3][0]), abs=1e-12)


def test_pullback_is_evaluation_on_images(rng):
    R = rng.normal(size=(4, 4, 4, 4))
    M = rng.normal(size=(4, 4))
    T = pullback4(R, M)
    e = np.eye(4)
    for idx in [(0, 1, 2, 3), (3, 3, 1, 0), (2, 0, 2, 1)]:
        i, j, k, h = idx
        assert T[idx] == pytest.approx(multilinear_loops(R, M[i], M[j], M[k], M[h]), abs=1e-12)
    np.testing.assert_allclose(pullback4(R, e), R)


def test_raise_then_lower_is_identity(rng):
    t = rng.normal(size=(4, 4, 4, 4))
    q = rng.normal(size=(4, 4))
    g = q @ q.T + np.eye(4)
    back = lower_index(raise_index(t, np.linalg.inv(g), axis=2), g, axis=2)
    np.testing.assert_allclose(back, t, atol=1e-10)


def test_projected_tensor_has_curvature_symmetries(rng):
    R = project_curvature(rng.normal(size=(4, 4, 4, 4)))
    assert symmetry_residual(R) < 1e-14
    assert np.abs(bianchi_cyclic(R)).max() < 1e-14
    assert symmetry_residual(rng.normal(size=(4, 4, 4, 4))) > 0.1
