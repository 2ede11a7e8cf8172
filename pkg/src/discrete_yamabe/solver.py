"""Minimize the conformal energy on the zero-mean hyperplane.

The energy is convex and C^1 everywhere but only twice differentiable
where every face is a proper triangle.  Iterations take a Newton step
when the current point is safely inside the conformal domain and a
gradient step otherwise, with Armijo backtracking in both cases.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .curvature import curvature_from_angles, face_geometry
from .energy import HESSIAN_MIN_MARGIN, _face_potentials, check_target, energy_hessian
from .errors import DimensionMismatch, NonFinite, OutsideDomain

__all__ = [
    "CONVERGED",
    "MAX_ITERS",
    "LINE_SEARCH_STALL",
    "NEWTON",
    "GRADIENT",
    "SolveParams",
    "SolveResult",
    "minimize_energy",
]

CONVERGED = "converged"
MAX_ITERS = "max_iters"
LINE_SEARCH_STALL = "line_search_stall"

NEWTON = "newton"
GRADIENT = "gradient"

RIDGE = 1e-12
MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class SolveParams:
    grad_tol: float = 1e-10
    max_iters: int = 200
    armijo_c: float = 1e-4
    backtrack: float = 0.5
    fallback_margin: float = HESSIAN_MIN_MARGIN

    def __post_init__(self):
        if not self.grad_tol > 0 or not self.fallback_margin > 0:
            raise ValueError("grad_tol and fallback_margin must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        for name in ("armijo_c", "backtrack"):
            if not 0 < getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in (0, 1)")


@dataclass(frozen=True, eq=False)
class SolveResult:
    status: str
    u_star: np.ndarray
    iters: int
    grad_norm_final: float
    step_kinds: list = field(default_factory=list)
    energies: list = field(default_factory=list, repr=False)

    @property
    def converged(self):
        return self.status == CONVERGED


def _hyperplane_basis(n):
    # Orthonormal basis of {u : sum(u) = 0}; columns 1.. of a QR of [1 | I].
    q, _ = np.linalg.qr(np.column_stack([np.ones(n), np.eye(n)[:, : n - 1]]))
    return q[:, 1:]


class _Objective:
    def __init__(self, metric, kbar):
        self.metric = metric
        self.kbar = kbar
        self.linear = 2.0 * np.pi - kbar
        self.energy0 = self._energy_geom(np.zeros(metric.triangulation.vertex_count))[0]

    def _energy_geom(self, u):
        geom = face_geometry(self.metric, u)
        e = _face_potentials(geom.log_sides, geom.angles).sum() + np.dot(self.linear, u)
        return e, geom

    def __call__(self, u):
        """(normalized energy, gradient, min relative margin)."""
        e, geom = self._energy_geom(u)
        grad = curvature_from_angles(self.metric.triangulation, geom.angles) - self.kbar
        return e - self.energy0, grad, geom.min_relative_margin


def _center(u):
    return u - u.mean()


def minimize_energy(metric, u0, target, params=None):
    """Find the zero-mean factor whose curvature equals ``target``.

    The start ``u0`` is mean-centered first.  Convergence means
    ``max|K(u) - Kbar| < grad_tol``.  If no such factor exists the result
    carries status ``"max_iters"`` or ``"line_search_stall"``; this is
    reported, not raised.
    """
    params = params or SolveParams()
    T = metric.triangulation
    kbar = check_target(T, target)
    n = T.vertex_count
    u = np.array(u0, dtype=float).reshape(-1)
    if u.shape != (n,):
        raise DimensionMismatch(n, u.size)
    if not np.all(np.isfinite(u)):
        raise NonFinite("initial factor has non-finite entries")
    u = _center(u)

    objective = _Objective(metric, kbar)
    basis = _hyperplane_basis(n)
    energy, grad, margin = objective(u)
    energies = [float(energy)]
    kinds = []
    status = MAX_ITERS
    iters = 0

    while True:
        grad_norm = float(np.abs(grad).max())
        if grad_norm < params.grad_tol:
            status = CONVERGED
            break
        if iters >= params.max_iters:
            break

        g = _center(grad)
        kind = GRADIENT
        direction = -g
        if margin > params.fallback_margin:
            try:
                H = energy_hessian(metric, u).matrix
                reduced = basis.T @ H @ basis
                reduced[np.diag_indices_from(reduced)] += RIDGE
                y = cho_solve(cho_factor(reduced), -(basis.T @ g))
                direction = _center(basis @ y)
                kind = NEWTON
            except (LinAlgError, OutsideDomain):
                pass

        slope = float(np.dot(g, direction))
        if not slope < 0:
            direction, kind = -g, GRADIENT
            slope = -float(np.dot(g, g))

        alpha = 1.0
        accepted = False
        noise = 64 * np.finfo(float).eps * (1.0 + abs(energy))
        for _ in range(MAX_BACKTRACKS):
            trial = _center(u + alpha * direction)
            t_energy, t_grad, t_margin = objective(trial)
            if not np.isfinite(t_energy):
                raise NonFinite("energy became non-finite during line search")
            if t_energy <= energy + params.armijo_c * alpha * slope:
                accepted = True
            elif (
                kind == NEWTON
                and alpha == 1.0
                and t_energy <= energy + noise
                and np.abs(t_grad).max() < grad_norm
            ):
                # Near the minimum the predicted decrease drops below
                # rounding of the energy; accept a full Newton step that
                # reduces the gradient.
                accepted = True
            if accepted:
                break
            alpha *= params.backtrack

        if not accepted:
            status = LINE_SEARCH_STALL
            break

        u, energy, grad, margin = trial, t_energy, t_grad, t_margin
        energies.append(float(energy))
        kinds.append(kind)
        iters += 1

    return SolveResult(
        status=status,
        u_star=u,
        iters=iters,
        grad_norm_final=float(np.abs(grad).max()),
        step_kinds=kinds,
        energies=energies,
    )
