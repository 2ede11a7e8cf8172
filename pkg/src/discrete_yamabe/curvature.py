"""Extended discrete Gaussian curvature.

``K_i = 2*pi - (sum of generalized angles at i)`` evaluated on the scaled
metric ``u * d``.  It is defined for every real factor ``u``, agrees with
the classical angle defect wherever all triangle inequalities hold, and
always satisfies ``sum(K) == 2*pi*chi``.
"""

from dataclasses import dataclass

import numpy as np

from .angles import generalized_angles
from .surface import conformal_log_lengths

__all__ = [
    "FaceGeometry",
    "face_geometry",
    "extended_curvatures",
    "average_curvature",
    "curvature_from_angles",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class FaceGeometry:
    """Per-face quantities of a scaled metric.

    Attributes
    ----------
    log_sides : (F, 3) array
        Log side lengths; column ``k`` is opposite corner ``k``.
    angles : (F, 3) array
        Generalized angles at the face corners.
    degenerate : (F,) bool array
    relative_margins : (F,) array
        ``(sum of two shorter sides - longest) / longest``.
    """

    log_sides: np.ndarray
    angles: np.ndarray
    degenerate: np.ndarray
    relative_margins: np.ndarray

    @property
    def min_relative_margin(self):
        return float(self.relative_margins.min())


def face_geometry(metric, u):
    T = metric.triangulation
    log_sides = conformal_log_lengths(metric, u)[T.face_edges]
    # Shift each face so its longest side is 1; avoids overflow for large |u|.
    sides = np.exp(log_sides - log_sides.max(axis=1, keepdims=True))
    angles, degenerate = generalized_angles(sides)
    margins = sides.sum(axis=1) - 2.0
    return FaceGeometry(log_sides, angles, degenerate, margins)


def curvature_from_angles(triangulation, angles):
    # bincount accumulates in a fixed order, so results are reproducible.
    total = np.bincount(
        triangulation.faces.ravel(),
        weights=np.asarray(angles).ravel(),
        minlength=triangulation.vertex_count,
    )
    return TWO_PI - total


def extended_curvatures(metric, u):
    """Curvature vector of ``u * d`` using generalized angles.

    Parameters
    ----------
    metric : PLMetric
    u : array_like, shape (N,)

    Returns
    -------
    ndarray, shape (N,)
    """
    geom = face_geometry(metric, u)
    return curvature_from_angles(metric.triangulation, geom.angles)


def average_curvature(triangulation):
    """``2*pi*chi / N``, the value of a constant-curvature target."""
    return TWO_PI * triangulation.euler_characteristic / triangulation.vertex_count
