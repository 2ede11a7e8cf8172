"""Small closed triangulations used in examples and tests."""

from .surface import PLMetric, build_triangulation

__all__ = [
    "tetrahedron",
    "octahedron",
    "double_pyramid",
    "seven_vertex_torus",
    "genus_two",
    "unit_metric",
]


def tetrahedron():
    return build_triangulation([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], 4)


def octahedron():
    # Vertices 0/1, 2/3, 4/5 are antipodal pairs.
    faces = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return build_triangulation(faces, 6)


def double_pyramid(ring=8):
    """Suspension of a ``ring``-cycle: ``ring + 2`` vertices, apexes last."""
    if ring < 3:
        raise ValueError("ring needs at least 3 vertices")
    top, bottom = ring, ring + 1
    faces = []
    for k in range(ring):
        nxt = (k + 1) % ring
        faces.append((k, nxt, top))
        faces.append((k, nxt, bottom))
    return build_triangulation(faces, ring + 2)


def unit_metric(triangulation):
    """All edges of length one (every face equilateral)."""
    return PLMetric.uniform(triangulation, 1.0)


def seven_vertex_torus():
    """The 7-vertex torus (complete graph K7 embedded in the torus)."""
    faces = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    faces += [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    return build_triangulation(faces, 7)


def _genus_two_faces():
    # Connected sum of two 7-vertex tori along the face (0, 1, 3).
    torus = [tuple(int(v) for v in f) for f in seven_vertex_torus().faces]
    glued = {0, 1, 3}
    other = {v: v for v in glued}
    other.update({v: 7 + k for k, v in enumerate(v for v in range(7) if v not in glued)})
    faces = [f for f in torus if set(f) != glued]
    faces += [tuple(other[v] for v in f) for f in torus if set(f) != glued]
    return faces, 11


def genus_two(subdivisions=0):
    """Genus-2 surface on 11 vertices, optionally refined inside one face.

    Each subdivision inserts a vertex into the most recently created face
    ``(a, c, v)``, so ``subdivisions`` new vertices crowd into what was a
    single triangle.  With four or more the triangulation fails the
    constant-curvature subset condition.
    """
    faces, n = _genus_two_faces()
    face = faces.pop(0)
    for k in range(subdivisions):
        v = n + k
        a, b, c = face
        faces += [(a, b, v), (b, c, v)]
        face = (a, c, v)
    faces.append(face)
    return build_triangulation(faces, n + subdivisions)
