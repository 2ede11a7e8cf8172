"""Inner angles of generalized Euclidean triangles.

A triple of positive side lengths that violates a triangle inequality is
still assigned angles: the side that is too long faces an angle of pi and
the other two angles vanish.  This makes the angle map continuous on all
positive triples with angle sum pi.
"""

from typing import NamedTuple

import numpy as np

from .errors import NonPositiveLength

__all__ = ["GeneralizedAngles", "extended_angles", "generalized_angles"]


class GeneralizedAngles(NamedTuple):
    angles: tuple
    degenerate: bool


def generalized_angles(sides):
    """Vectorized angles for an ``(n, 3)`` array of side lengths.

    Column ``k`` of the result is the angle opposite side ``k``.  Returns
    ``(angles, degenerate)`` where ``degenerate`` flags rows in which one
    side is at least the sum of the other two.

    Uses the half-angle form
    ``tan(A/2) = sqrt((a-b+c)(a+b-c) / ((a+b+c)(b+c-a)))`` evaluated with
    ``atan2``, which keeps full relative accuracy for needle triangles.
    """
    sides = np.asarray(sides, dtype=float)
    # Normalizing by the longest side keeps the result independent of scale.
    x = sides / sides.max(axis=-1, keepdims=True)
    a, b, c = x[..., 0], x[..., 1], x[..., 2]

    da = b + c - a
    db = a + c - b
    dc = a + b - c
    degenerate = (da <= 0) | (db <= 0) | (dc <= 0)

    p = a + b + c
    with np.errstate(invalid="ignore"):
        ta = 2.0 * np.arctan2(np.sqrt(db * dc), np.sqrt(p * da))
        tb = 2.0 * np.arctan2(np.sqrt(da * dc), np.sqrt(p * db))
        tc = 2.0 * np.arctan2(np.sqrt(da * db), np.sqrt(p * dc))
    angles = np.stack([ta, tb, tc], axis=-1)

    if np.any(degenerate):
        long_side = np.argmax(x, axis=-1)
        fixed = np.zeros_like(angles)
        np.put_along_axis(fixed, long_side[..., None], np.pi, axis=-1)
        angles = np.where(degenerate[..., None], fixed, angles)
    return angles, degenerate


def extended_angles(x1, x2, x3):
    """Angles of the generalized triangle with sides ``x1, x2, x3``.

    ``angles[i]`` faces side ``x_i``.  When ``x_i >= x_j + x_k`` (equality
    included) the result is ``pi`` at ``i`` and ``0`` elsewhere.

    >>> extended_angles(5.0, 2.0, 1.0)
    GeneralizedAngles(angles=(3.141592653589793, 0.0, 0.0), degenerate=True)
    """
    sides = np.array([x1, x2, x3], dtype=float)
    for i, s in enumerate(sides):
        if not (np.isfinite(s) and s > 0):
            raise NonPositiveLength(f"x{i + 1}", float(s))
    angles, degenerate = generalized_angles(sides[None, :])
    return GeneralizedAngles(tuple(float(t) for t in angles[0]), bool(degenerate[0]))
