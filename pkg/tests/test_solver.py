import numpy as np
import pytest

from discrete_yamabe import meshes
from discrete_yamabe.curvature import extended_curvatures
from discrete_yamabe.energy import TargetCurvature
from discrete_yamabe.errors import NonFinite, TargetGaussBonnetViolation
from discrete_yamabe.flow import integrate_flow
from discrete_yamabe.solver import (
    CONVERGED,
    GRADIENT,
    NEWTON,
    SolveParams,
    minimize_energy,
)

from conftest import FAR_START


def test_equilibrium(tet):
    res = minimize_energy(tet, np.zeros(4), TargetCurvature.constant(tet.triangulation))
    assert res.status == CONVERGED and res.iters == 0
    np.testing.assert_array_equal(res.u_star, 0)


def test_far_start(tet):
    res = minimize_energy(tet, FAR_START, TargetCurvature.constant(tet.triangulation))
    assert res.status == CONVERGED
    np.testing.assert_allclose(res.u_star, 0, atol=1e-8)
    # starts on a degenerate configuration, so it must fall back first
    assert res.step_kinds[0] == GRADIENT and NEWTON in res.step_kinds


def test_random_starts_agree(mesh, rng):
    target = TargetCurvature.constant(mesh.triangulation)
    n = mesh.triangulation.vertex_count
    sols = []
    for _ in range(5):
        res = minimize_energy(mesh, rng.uniform(-1, 1, n), target)
        assert res.status == CONVERGED
        assert res.grad_norm_final < 1e-10
        assert np.abs(extended_curvatures(mesh, res.u_star) - target.values).max() < 1e-10
        sols.append(res.u_star)
    for a in sols:
        for b in sols:
            assert np.abs(a - b).max() < 1e-6


def test_iterates_stay_on_hyperplane_and_descend(mesh, rng):
    target = TargetCurvature.constant(mesh.triangulation)
    n = mesh.triangulation.vertex_count
    for _ in range(5):
        res = minimize_energy(mesh, rng.uniform(-3, 3, n) + 7.0, target)
        assert abs(res.u_star.sum()) < 1e-10
        assert np.diff(res.energies).max() <= 1e-12
        assert len(res.energies) == res.iters + 1 == len(res.step_kinds) + 1


def test_agrees_with_flow(mesh, rng):
    target = TargetCurvature.constant(mesh.triangulation)
    u0 = rng.uniform(-2, 2, mesh.triangulation.vertex_count)
    flow = integrate_flow(mesh, u0, target)
    res = minimize_energy(mesh, u0, target)
    assert flow.converged and res.converged
    assert np.abs(res.u_star - (flow.u_final - flow.u_final.mean())).max() < 1e-6


def test_prescribed_round_trip(tet):
    u_bar = np.array([0.2, -0.2, 0.1, -0.1])
    target = TargetCurvature.prescribed(tet.triangulation, extended_curvatures(tet, u_bar))
    res = minimize_energy(tet, np.zeros(4), target)
    assert res.converged
    np.testing.assert_allclose(res.u_star, u_bar, atol=1e-6)


def test_prescribed_on_perturbed_metric(rng):
    from discrete_yamabe.surface import PLMetric

    T = meshes.double_pyramid(8)
    d = PLMetric(T, rng.uniform(0.9, 1.1, T.n_edges))
    u_bar = rng.uniform(-0.3, 0.3, T.vertex_count)
    u_bar -= u_bar.mean()
    target = TargetCurvature.prescribed(T, extended_curvatures(d, u_bar))
    res = minimize_energy(d, rng.uniform(-2, 2, T.vertex_count), target)
    assert res.converged
    np.testing.assert_allclose(res.u_star, u_bar, atol=1e-8)


def test_inadmissible_target_reported(tet):
    kbar = np.array([2 * np.pi + 0.5, np.pi, np.pi, 0.0])
    kbar[3] = 4 * np.pi - kbar[:3].sum()
    target = TargetCurvature.prescribed(tet.triangulation, kbar)
    res = minimize_energy(tet, np.zeros(4), target, SolveParams(max_iters=100))
    assert res.status != CONVERGED
    assert res.grad_norm_final >= 0.5 - 1e-12
    assert res.energies[-1] < res.energies[0]
    assert np.diff(res.energies).max() <= 1e-12


def test_obstructed_surface_reported():
    T = meshes.genus_two(4)
    res = minimize_energy(meshes.unit_metric(T), np.zeros(T.vertex_count), TargetCurvature.constant(T))
    assert res.status != CONVERGED
    assert res.grad_norm_final > 0.1


def test_errors(tet):
    with pytest.raises(TargetGaussBonnetViolation):
        minimize_energy(tet, np.zeros(4), TargetCurvature(np.zeros(4)))
    with pytest.raises(NonFinite):
        minimize_energy(tet, [np.inf, 0, 0, 0], TargetCurvature.constant(tet.triangulation))
    with pytest.raises(ValueError):
        SolveParams(armijo_c=1.5)
