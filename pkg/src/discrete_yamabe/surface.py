"""Closed triangulated surfaces, PL-metrics and conformal scaling.

Vertices are 0-based.  Edges are stored as canonical ``(i, j)`` pairs with
``i < j`` and sorted lexicographically, so edge ``k`` of a triangulation
always means the same thing regardless of how the faces were listed.
Edge lengths are primary data; there are no embedded coordinates.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    BadVertexLink,
    DimensionMismatch,
    DuplicateFace,
    EdgeNotTwoFaces,
    IndexOutOfRange,
    InvalidFace,
    NonPositiveLength,
    TriangleInequalityViolation,
)

__all__ = [
    "Triangulation",
    "PLMetric",
    "DomainReport",
    "build_triangulation",
    "conformal_scale",
    "conformal_log_lengths",
    "in_conformal_domain",
    "face_side_lengths",
]


def _readonly(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class Triangulation:
    """Combinatorial closed surface.

    Use :func:`build_triangulation` to construct one; it validates that
    the complex is a closed 2-manifold.

    Attributes
    ----------
    vertex_count : int
    faces : ndarray, shape (F, 3)
        Faces as given (vertex order within a face is kept).
    edges : ndarray, shape (E, 2)
        Canonical edges, lexicographically sorted.
    face_edges : ndarray, shape (F, 3)
        ``face_edges[f, k]`` is the index of the edge opposite corner ``k``
        of face ``f``.
    """

    def __init__(self, vertex_count, faces, edges, face_edges):
        self.vertex_count = int(vertex_count)
        self.faces = _readonly(faces)
        self.edges = _readonly(edges)
        self.face_edges = _readonly(face_edges)

    @property
    def n_faces(self):
        return len(self.faces)

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def euler_characteristic(self):
        return self.vertex_count - self.n_edges + self.n_faces

    @cached_property
    def edge_index(self):
        """Map from canonical edge tuple to edge index."""
        return {(int(i), int(j)): k for k, (i, j) in enumerate(self.edges)}

    @cached_property
    def vertex_degrees(self):
        """Number of faces incident to each vertex."""
        return _readonly(np.bincount(self.faces.ravel(), minlength=self.vertex_count))

    @cached_property
    def face_masks(self):
        """Faces as vertex bitmasks (python ints, any vertex count)."""
        return tuple((1 << int(a)) | (1 << int(b)) | (1 << int(c)) for a, b, c in self.faces)

    def __repr__(self):
        return (
            f"Triangulation(N={self.vertex_count}, |E|={self.n_edges}, "
            f"|F|={self.n_faces}, chi={self.euler_characteristic})"
        )


def build_triangulation(faces, vertex_count):
    """Validate a face list and return the closed surface it describes.

    Raises
    ------
    IndexOutOfRange, InvalidFace, DuplicateFace
        Malformed face list.
    EdgeNotTwoFaces
        Some edge is not shared by exactly two faces (open or
        non-manifold complex).  The first offending edge in canonical
        order is reported.
    BadVertexLink
        A vertex is unused or its link is not a single cycle.
    """
    vertex_count = int(vertex_count)
    if vertex_count <= 0:
        raise IndexOutOfRange(f"vertex_count must be positive, got {vertex_count}")
    faces = [tuple(int(v) for v in f) for f in faces]
    if not faces:
        raise InvalidFace("face list is empty")

    seen = set()
    for f in faces:
        if len(f) != 3:
            raise InvalidFace(f"face {f} does not have three vertices")
        for v in f:
            if not 0 <= v < vertex_count:
                raise IndexOutOfRange(f"vertex {v} of face {f} not in [0, {vertex_count})")
        if len(set(f)) != 3:
            raise InvalidFace(f"face {f} repeats a vertex")
        key = frozenset(f)
        if key in seen:
            raise DuplicateFace(f"face {f} listed more than once")
        seen.add(key)

    counts = {}
    for a, b, c in faces:
        for i, j in ((a, b), (b, c), (a, c)):
            e = (i, j) if i < j else (j, i)
            counts[e] = counts.get(e, 0) + 1
    edges = sorted(counts)
    for e in edges:
        if counts[e] != 2:
            raise EdgeNotTwoFaces(e, counts[e])

    index = {e: k for k, e in enumerate(edges)}
    face_edges = np.empty((len(faces), 3), dtype=np.int64)
    for f, (a, b, c) in enumerate(faces):
        face_edges[f] = (
            index[(min(b, c), max(b, c))],
            index[(min(a, c), max(a, c))],
            index[(min(a, b), max(a, b))],
        )

    _check_vertex_links(faces, vertex_count)

    return Triangulation(
        vertex_count,
        np.asarray(faces, dtype=np.int64),
        np.asarray(edges, dtype=np.int64).reshape(-1, 2),
        face_edges,
    )


def _check_vertex_links(faces, n):
    # Each edge lies in two faces, so every link vertex already has link
    # degree two; the link is a single cycle iff it is connected.
    link = [dict() for _ in range(n)]
    for a, b, c in faces:
        for v, p, q in ((a, b, c), (b, a, c), (c, a, b)):
            link[v].setdefault(p, []).append(q)
            link[v].setdefault(q, []).append(p)
    for v in range(n):
        adj = link[v]
        if not adj:
            raise BadVertexLink(v, "vertex is not used by any face")
        start = next(iter(adj))
        stack, reached = [start], {start}
        while stack:
            w = stack.pop()
            for x in adj[w]:
                if x not in reached:
                    reached.add(x)
                    stack.append(x)
        if len(reached) != len(adj) or len(adj) < 3:
            raise BadVertexLink(v)


@dataclass(frozen=True, eq=False)
class PLMetric:
    """Edge lengths of a triangulation satisfying every triangle inequality.

    ``lengths[k]`` is the length of ``triangulation.edges[k]``.
    """

    triangulation: Triangulation
    lengths: np.ndarray = field(repr=False)

    def __post_init__(self):
        T = self.triangulation
        lengths = np.array(self.lengths, dtype=float).reshape(-1)
        if lengths.shape != (T.n_edges,):
            raise DimensionMismatch(T.n_edges, lengths.size)
        bad = np.flatnonzero(~(np.isfinite(lengths) & (lengths > 0)))
        if bad.size:
            k = int(bad[0])
            raise NonPositiveLength(tuple(int(v) for v in T.edges[k]), float(lengths[k]))
        sides = lengths[T.face_edges]
        margins = _margins(sides)
        bad = np.flatnonzero(margins <= 0)
        if bad.size:
            f = int(bad[0])
            raise TriangleInequalityViolation(T.faces[f].tolist(), float(margins[f]))
        object.__setattr__(self, "lengths", _readonly(lengths))

    @classmethod
    def from_edge_map(cls, triangulation, lengths):
        """Build from a mapping ``{(i, j): length}``; keys may be in either order."""
        values = np.empty(triangulation.n_edges)
        filled = np.zeros(triangulation.n_edges, dtype=bool)
        index = triangulation.edge_index
        for (i, j), length in lengths.items():
            k = index[(min(i, j), max(i, j))]
            values[k] = length
            filled[k] = True
        if not filled.all():
            missing = triangulation.edges[np.flatnonzero(~filled)[0]]
            raise KeyError(f"no length for edge {tuple(int(v) for v in missing)}")
        return cls(triangulation, values)

    @classmethod
    def uniform(cls, triangulation, length=1.0):
        return cls(triangulation, np.full(triangulation.n_edges, float(length)))

    def as_edge_map(self):
        return {
            (int(i), int(j)): float(x)
            for (i, j), x in zip(self.triangulation.edges, self.lengths)
        }

    @cached_property
    def log_lengths(self):
        return _readonly(np.log(self.lengths))


def _margins(sides):
    """Sum of the two shorter sides minus the longest, per row."""
    return sides.sum(axis=1) - 2.0 * sides.max(axis=1)


def _as_factor(metric, u):
    u = np.asarray(u, dtype=float).reshape(-1)
    n = metric.triangulation.vertex_count
    if u.shape != (n,):
        raise DimensionMismatch(n, u.size)
    return u


def conformal_log_lengths(metric, u):
    """Logarithms of the scaled edge lengths, ``log d_ij + (u_i + u_j) / 2``."""
    u = _as_factor(metric, u)
    edges = metric.triangulation.edges
    return metric.log_lengths + 0.5 * (u[edges[:, 0]] + u[edges[:, 1]])


def conformal_scale(metric, u):
    """Edge lengths ``exp(u_i/2) exp(u_j/2) d_ij`` of the scaled metric.

    The result is indexed like ``metric.lengths``.  No triangle
    inequality check is made; see :func:`in_conformal_domain`.
    """
    u = _as_factor(metric, u)
    edges = metric.triangulation.edges
    half = np.exp(0.5 * u)
    return half[edges[:, 0]] * half[edges[:, 1]] * metric.lengths


def face_side_lengths(triangulation, edge_lengths):
    """Per-face side lengths, column ``k`` opposite corner ``k``."""
    return np.asarray(edge_lengths)[triangulation.face_edges]


@dataclass(frozen=True)
class DomainReport:
    """Triangle-inequality status of a scaled metric.

    ``violations`` holds ``(face, longest_edge, margin)`` for every face
    whose margin (sum of the two shorter sides minus the longest) is not
    positive; ``face`` is the vertex triple and ``longest_edge`` the
    canonical edge index of its longest side.
    """

    in_domain: bool
    violations: list
    min_margin: float


def in_conformal_domain(metric, u):
    """Check whether ``u`` lies in the conformal domain of ``metric``."""
    T = metric.triangulation
    sides = face_side_lengths(T, conformal_scale(metric, u))
    margins = _margins(sides)
    longest = np.argmax(sides, axis=1)
    violations = [
        (
            tuple(int(v) for v in T.faces[f]),
            int(T.face_edges[f, longest[f]]),
            float(margins[f]),
        )
        for f in np.flatnonzero(margins <= 0)
    ]
    return DomainReport(
        in_domain=not violations,
        violations=violations,
        min_margin=float(margins.min()),
    )
