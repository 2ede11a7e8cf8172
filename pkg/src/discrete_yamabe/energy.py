"""Convex conformal energy in closed form, its gradient and Hessian.

With ``x_ij = log((u*d)_ij)`` the energy is

    E(u) = sum_faces [2 f(x_ij, x_jk, x_ik) - pi (x_ij + x_jk + x_ik)]
           + sum_i (2 pi - Kbar_i) u_i

where ``f(x, y, z) = a x + b y + c z + L(a) + L(b) + L(c)`` and
``(a, b, c)`` are the generalized angles facing sides ``e^x, e^y, e^z``.
``E`` is convex and C^1 on all of R^N, with gradient ``K(u) - Kbar``.
Reported values are shifted so that the energy at ``u = 0`` is zero.
"""

from dataclasses import dataclass

import numpy as np

from .angles import generalized_angles
from .curvature import TWO_PI, average_curvature, curvature_from_angles, face_geometry
from .errors import DimensionMismatch, NonFinite, OutsideDomain, TargetGaussBonnetViolation
from .lobachevsky import lobachevsky

__all__ = [
    "HESSIAN_MIN_MARGIN",
    "TargetCurvature",
    "EnergyValue",
    "HessianMatrix",
    "triangle_potential",
    "total_energy",
    "energy_gradient",
    "energy_hessian",
    "check_target",
]

# Minimum relative face margin for Hessian assembly; cotangents blow up
# as a face degenerates.
HESSIAN_MIN_MARGIN = 1e-8

GAUSS_BONNET_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class TargetCurvature:
    """Curvature the energy's critical point should realize.

    Build with :meth:`constant` or :meth:`prescribed`.
    """

    values: np.ndarray
    kind: str = "prescribed"

    @classmethod
    def constant(cls, triangulation):
        n = triangulation.vertex_count
        return cls(np.full(n, average_curvature(triangulation)), "constant")

    @classmethod
    def prescribed(cls, triangulation, values):
        target = cls(np.asarray(values, dtype=float).reshape(-1), "prescribed")
        check_target(triangulation, target)
        return target


def check_target(triangulation, target):
    """Raise unless ``target`` has length N and sums to ``2*pi*chi``."""
    values = np.asarray(target.values, dtype=float)
    n = triangulation.vertex_count
    if values.shape != (n,):
        raise DimensionMismatch(n, values.size)
    if not np.all(np.isfinite(values)):
        raise NonFinite("target curvature has non-finite entries")
    expected = TWO_PI * triangulation.euler_characteristic
    total = float(values.sum())
    if abs(total - expected) > GAUSS_BONNET_TOL:
        raise TargetGaussBonnetViolation(total, expected)
    return values


@dataclass(frozen=True)
class EnergyValue:
    value: float
    base_normalized: bool = True

    def __float__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class HessianMatrix:
    """Cotangent Laplacian.

    ``matrix[i, j] = -weights[e]`` for the edge ``e = (i, j)``; diagonal
    entries are the row sums of the weights.
    """

    matrix: np.ndarray
    weights: np.ndarray


def _finite_factor(metric, u):
    u = np.asarray(u, dtype=float).reshape(-1)
    n = metric.triangulation.vertex_count
    if u.shape != (n,):
        raise DimensionMismatch(n, u.size)
    if not np.all(np.isfinite(u)):
        raise NonFinite("conformal factor has non-finite entries")
    return u


def _face_potentials(log_sides, angles):
    # 2 f(x, y, z) - pi (x + y + z), one value per face.
    f = (angles * log_sides).sum(axis=1) + lobachevsky(angles).sum(axis=1)
    return 2.0 * f - np.pi * log_sides.sum(axis=1)


def triangle_potential(x, y, z):
    """``f(x, y, z)`` for log side lengths; convex and C^1 on R^3."""
    log_sides = np.array([[x, y, z]], dtype=float)
    if not np.all(np.isfinite(log_sides)):
        raise NonFinite("triangle potential needs finite arguments")
    sides = np.exp(log_sides - log_sides.max())
    angles, _ = generalized_angles(sides)
    return float((angles * log_sides).sum() + lobachevsky(angles).sum())


def _raw_energy(metric, u, kbar):
    geom = face_geometry(metric, u)
    faces = _face_potentials(geom.log_sides, geom.angles)
    return faces.sum() + np.dot(TWO_PI - kbar, u)


def total_energy(metric, u, target):
    """Energy at ``u`` relative to its value at ``u = 0``.

    Returns an :class:`EnergyValue`.  The linear part uses ``2*pi - Kbar_i``
    per vertex, so a prescribed target gives the prescribed-curvature
    functional and a constant target the constant-curvature one.
    """
    u = _finite_factor(metric, u)
    kbar = check_target(metric.triangulation, target)
    value = _raw_energy(metric, u, kbar) - _raw_energy(metric, np.zeros_like(u), kbar)
    return EnergyValue(float(value), True)


def energy_gradient(metric, u, target):
    """``K(u) - Kbar``, the gradient of :func:`total_energy`."""
    u = _finite_factor(metric, u)
    kbar = check_target(metric.triangulation, target)
    geom = face_geometry(metric, u)
    return curvature_from_angles(metric.triangulation, geom.angles) - kbar


def cotangent_weights(triangulation, angles):
    """Per-edge weights ``(cot a + cot b) / 2`` over the two opposite angles."""
    cot = 1.0 / np.tan(angles)
    return 0.5 * np.bincount(
        triangulation.face_edges.ravel(),
        weights=cot.ravel(),
        minlength=triangulation.n_edges,
    )


def energy_hessian(metric, u):
    """Cotangent-Laplacian Hessian at a point well inside the conformal domain.

    Raises
    ------
    OutsideDomain
        If some face has relative margin at most ``HESSIAN_MIN_MARGIN``;
        the energy is only C^1 across the domain boundary.
    """
    u = _finite_factor(metric, u)
    T = metric.triangulation
    geom = face_geometry(metric, u)
    if geom.min_relative_margin <= HESSIAN_MIN_MARGIN:
        raise OutsideDomain(geom.min_relative_margin)
    w = cotangent_weights(T, geom.angles)
    n = T.vertex_count
    i, j = T.edges[:, 0], T.edges[:, 1]
    H = np.zeros((n, n))
    H[i, j] = -w
    H[j, i] = -w
    H[np.diag_indices(n)] = np.bincount(
        np.concatenate([i, j]), weights=np.concatenate([w, w]), minlength=n
    )
    return HessianMatrix(H, w)
