import math

import numpy as np
import pytest

from oracles import multilinear_loops, sectional_direct
from skewcurv.analysis.classes import random_curvature_tensor, random_L2_params, random_R1_params, synth_L2
from skewcurv.analysis.sectional import (
    basic_plane_curvatures,
    basis_coordinates,
    combined_expansion,
    orbit_expansions,
    r1_quartic_residual,
    random_unit_vectors,
    s_basis_components,
    sectional,
    sectional_report,
    verify_basic_plane_relations,
    verify_orthonormal_sum_theorem,
    verify_R1_interpolation,
    verify_R1_plane_relations,
    verify_three_angle_theorem,
)
from skewcurv.connection import g45_algebra, geometry_at
from skewcurv.errors import DegeneratePlane, NotOrthonormalBasis, NotUnitVector, PropertyNotSatisfied
from skewcurv.manifold import build_structure, metric_at, s_basis

S = build_structure()
I4 = np.eye(4)


def orthonormal_x(t):
    return math.cos(t) * I4[0] + math.sin(t) * I4[2]


def test_sectional_against_direct_formula(rng):
    R = random_curvature_tensor(rng)
    g = metric_at(2.0, 0.6).g
    for _ in range(10):
        x, y = rng.normal(size=(2, 4))
        assert sectional(R, g, x, y) == pytest.approx(sectional_direct(R, g, x, y), rel=1e-10)
        assert sectional(R, g, x, y) == pytest.approx(sectional(R, g, y, 3 * x - y), rel=1e-9)


def test_degenerate_plane():
    with pytest.raises(DegeneratePlane):
        sectional(np.zeros((4, 4, 4, 4)), I4, I4[0], 2 * I4[0])


def test_expansions_against_direct_contraction(rng):
    for _ in range(20):
        R = synth_L2(random_L2_params(rng))
        A = rng.uniform(1, 3)
        g = metric_at(A, rng.uniform(0.0, 0.65) * A).g
        b = s_basis(rng.normal(size=4), S, g)
        comps = s_basis_components(R, b)
        for u in rng.normal(size=(5, 4)):
            coords = basis_coordinates(b, u)
            np.testing.assert_allclose(coords[0] @ b.vectors, u, atol=1e-10)
            r_s, r_s2 = orbit_expansions(comps, coords)
            su, s2u = S.apply(u), S.apply(u, 2)
            assert r_s[0] == pytest.approx(multilinear_loops(R, u, su, u, su), abs=1e-9)
            assert r_s2[0] == pytest.approx(multilinear_loops(R, u, s2u, u, s2u), abs=1e-9)


def test_combined_expansion_in_orthonormal_basis(rng):
    for _ in range(20):
        R = synth_L2(random_L2_params(rng))
        b = s_basis(orthonormal_x(rng.uniform(0, 6)), S, I4)
        comps = s_basis_components(R, b)
        for u in rng.normal(size=(5, 4)):
            su, s2u = S.apply(u), S.apply(u, 2)
            direct = 2 * multilinear_loops(R, u, su, u, su) + multilinear_loops(R, u, s2u, u, s2u)
            assert combined_expansion(comps, basis_coordinates(b, u))[0] == pytest.approx(direct, abs=1e-9)


def test_g45_basic_planes_all_one():
    geo = geometry_at(g45_algebra(1.0, 1.0))
    k = basic_plane_curvatures(geo.R, geo.metric.g, geo.S, I4[0])
    assert all(v == pytest.approx(1.0) for v in k.values())


def test_theorems_on_invariant_instances(rng):
    for _ in range(30):
        R = synth_L2(random_L2_params(rng))
        x = orthonormal_x(rng.uniform(0, 6))
        us = random_unit_vectors(rng, I4, 50)
        assert max(verify_basic_plane_relations(R, I4, S, x).values()) < 1e-9
        assert verify_orthonormal_sum_theorem(R, I4, S, x, us) < 1e-9
        assert verify_three_angle_theorem(R, I4, S, x, us) < 1e-9


def test_basic_plane_relations_with_general_metric(rng):
    for _ in range(20):
        R = synth_L2(random_L2_params(rng))
        A = rng.uniform(1, 3)
        g = metric_at(A, rng.uniform(0.0, 0.65) * A).g
        assert max(verify_basic_plane_relations(R, g, S, rng.normal(size=4)).values()) < 1e-9


def test_R1_theorems(rng):
    for _ in range(30):
        R = synth_L2(random_R1_params(rng))
        A = rng.uniform(1, 3)
        g = metric_at(A, rng.uniform(0.0, 0.65) * A).g
        assert max(verify_R1_plane_relations(R, g, S, rng.normal(size=4)).values()) < 1e-9
        us = random_unit_vectors(rng, I4, 50)
        x = orthonormal_x(rng.uniform(0, 6))
        assert r1_quartic_residual(R, I4, S, x, us) < 1e-9
        assert verify_R1_interpolation(R, I4, S, x, us) < 1e-9


def test_identities_fail_without_hypothesis(rng):
    """The identities are not vacuous: dropping the hypothesis breaks them."""
    R = random_curvature_tensor(rng)
    x = I4[0]
    us = random_unit_vectors(rng, I4, 20)
    big = math.inf
    assert max(verify_basic_plane_relations(R, I4, S, x, hypothesis_tol=big).values()) > 1e-3
    assert verify_orthonormal_sum_theorem(R, I4, S, x, us, hypothesis_tol=big) > 1e-3
    R_inv = synth_L2(random_L2_params(rng))
    assert verify_R1_interpolation(R_inv, I4, S, x, us, hypothesis_tol=big) > 1e-3


def test_hypothesis_errors(rng):
    R = random_curvature_tensor(rng)
    us = random_unit_vectors(rng, I4, 5)
    with pytest.raises(PropertyNotSatisfied):
        verify_basic_plane_relations(R, I4, S, I4[0])
    with pytest.raises(PropertyNotSatisfied):
        verify_three_angle_theorem(R, I4, S, I4[0], us)
    with pytest.raises(PropertyNotSatisfied):
        verify_R1_plane_relations(synth_L2(random_L2_params(rng)), I4, S, I4[0])
    Rinv = synth_L2(random_L2_params(rng))
    with pytest.raises(NotOrthonormalBasis):
        verify_orthonormal_sum_theorem(Rinv, I4, S, I4[0] + 0.5 * I4[1], us)
    with pytest.raises(NotUnitVector):
        verify_orthonormal_sum_theorem(Rinv, I4, S, I4[0], 2 * us)


def test_report_skips_with_reason(rng):
    geo = geometry_at(g45_algebra(1.0, 1.0))
    us = random_unit_vectors(rng, I4, 100)
    rep = sectional_report(geo.R, geo.metric.g, geo.S, I4[0], us)
    assert set(rep.residuals) == {"basic_plane_equalities", "orthonormal_sum", "three_angle"}
    assert all(v < 1e-9 for v in rep.residuals.values())
    assert set(rep.skipped) == {"r1_plane_relations", "r1_interpolation"}
    assert "R1" in rep.skipped["r1_interpolation"]
    assert rep.phi == pytest.approx(math.pi / 2)
