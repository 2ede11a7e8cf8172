"""Combinatorial test for existence of a constant-curvature PL-metric.

A triangulation carries such a metric iff every proper nonempty vertex
subset ``I`` satisfies ``|F_I| / |I| > |F| / |V|``, where ``F_I`` is the
set of faces with at least one vertex in ``I``.  All subsets are
enumerated.  ``|F_I|`` is ``|F|`` minus the number of faces inside the
complement of ``I``, and the latter is tabulated for every vertex set at
once with a subset-sum transform over bitmasks.  Ratios are compared in
exact integer arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import TooManyVertices

__all__ = ["MAX_VERTICES", "ObstructionReport", "check_luo_condition", "faces_meeting"]

MAX_VERTICES = 22


@dataclass(frozen=True)
class ObstructionReport:
    passes: bool
    global_ratio: Fraction
    worst_subset: tuple
    worst_ratio: Fraction
    subsets_checked: int


def faces_meeting(triangulation, subset):
    """Number of faces with at least one vertex in ``subset``."""
    s = set(subset)
    return sum(1 for f in triangulation.faces if s.intersection(int(v) for v in f))


def _faces_inside(face_masks, n):
    counts = np.zeros(1 << n, dtype=np.int32)
    np.add.at(counts, np.asarray(face_masks, dtype=np.int64), 1)
    # Zeta transform: counts[S] becomes the number of faces contained in S.
    for bit in range(n):
        view = counts.reshape(-1, 2, 1 << bit)
        view[:, 1, :] += view[:, 0, :]
    return counts


def _popcounts(n):
    pc = np.zeros(1 << n, dtype=np.int32)
    for bit in range(n):
        view = pc.reshape(-1, 2, 1 << bit)
        view[:, 1, :] += 1
    return pc


def check_luo_condition(triangulation):
    """Enumerate all proper vertex subsets and report the worst ratio.

    ``worst_subset`` is the lexicographically smallest sorted vertex tuple
    among the minimizers.  Raises :class:`TooManyVertices` above
    ``MAX_VERTICES`` vertices.
    """
    n = triangulation.vertex_count
    if n > MAX_VERTICES:
        raise TooManyVertices(n, MAX_VERTICES)
    n_faces = triangulation.n_faces
    full = (1 << n) - 1

    inside = _faces_inside(triangulation.face_masks, n)
    masks = np.arange(1, full, dtype=np.int64)
    meeting = n_faces - inside[full ^ masks].astype(np.int64)
    sizes = _popcounts(n)[1:full].astype(np.int64)

    # Exact minimum of meeting/size: per subset size, the smallest count.
    best = None
    for k in range(1, n):
        sel = sizes == k
        m = int(meeting[sel].min())
        ratio = Fraction(m, k)
        if best is None or ratio < best:
            best = ratio

    ties = masks[meeting * best.denominator == sizes * best.numerator]
    witness = min(tuple(v for v in range(n) if (int(m) >> v) & 1) for m in ties)

    global_ratio = Fraction(n_faces, n)
    return ObstructionReport(
        passes=best > global_ratio,
        global_ratio=global_ratio,
        worst_subset=witness,
        worst_ratio=best,
        subsets_checked=int(full - 1),
    )
