import itertools
from fractions import Fraction

import numpy as np
import pytest

from discrete_yamabe import meshes
from discrete_yamabe.errors import TooManyVertices
from discrete_yamabe.obstruction import MAX_VERTICES, check_luo_condition, faces_meeting
from discrete_yamabe.surface import build_triangulation


def brute_force(T):
    """Enumerate subsets with sets and Fractions; returns (min ratio, first witness)."""
    n = T.vertex_count
    faces = [set(f.tolist()) for f in T.faces]
    best, witness = None, None
    for k in range(1, n):
        for subset in itertools.combinations(range(n), k):
            s = set(subset)
            ratio = Fraction(sum(1 for f in faces if f & s), k)
            if best is None or ratio < best or (ratio == best and subset < witness):
                best, witness = ratio, subset
    return best, witness


SURFACES = {
    "tetrahedron": meshes.tetrahedron(),
    "octahedron": meshes.octahedron(),
    "double_pyramid": meshes.double_pyramid(8),
    "torus": meshes.seven_vertex_torus(),
    "genus_two": meshes.genus_two(),
    "genus_two_3": meshes.genus_two(3),
    "genus_two_4": meshes.genus_two(4),
}


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_matches_brute_force(name):
    T = SURFACES[name]
    report = check_luo_condition(T)
    best, witness = brute_force(T)
    assert report.worst_ratio == best
    assert report.worst_subset == witness
    assert report.global_ratio == Fraction(T.n_faces, T.vertex_count)
    assert report.passes == (best > report.global_ratio)
    assert report.subsets_checked == 2**T.vertex_count - 2


def test_tetrahedron():
    report = check_luo_condition(meshes.tetrahedron())
    assert report.passes
    assert report.global_ratio == 1
    assert report.worst_ratio == Fraction(4, 3)
    assert report.worst_subset == (0, 1, 2)
    assert report.subsets_checked == 14


def test_octahedron():
    report = check_luo_condition(meshes.octahedron())
    assert report.passes
    assert report.global_ratio == Fraction(4, 3)
    # by enumeration: complements of single vertices, 8/5
    assert report.worst_ratio == Fraction(8, 5)
    assert report.worst_subset == (0, 1, 2, 3, 4)


def test_crowded_genus_two_fails():
    # Four vertices packed into one triangle of a genus-2 surface: those
    # vertices meet 9 faces, 9/4 < 34/15.
    report = check_luo_condition(meshes.genus_two(4))
    assert not report.passes
    assert report.worst_subset == (11, 12, 13, 14)
    assert report.worst_ratio == Fraction(9, 4)
    assert report.global_ratio == Fraction(34, 15)


def test_equality_counts_as_failure():
    # One more vertex inserted in an untouched face raises the global
    # ratio to 36/16 = 9/4, exactly the ratio of the crowded subset.
    base = meshes.genus_two(4)
    faces = [tuple(f) for f in base.faces.tolist()]
    a, b, c = faces.pop(1)
    v = base.vertex_count
    faces += [(a, b, v), (b, c, v), (a, c, v)]
    T = build_triangulation(faces, v + 1)
    report = check_luo_condition(T)
    assert report.global_ratio == Fraction(9, 4) == report.worst_ratio
    assert not report.passes
    assert brute_force(T)[0] == Fraction(9, 4)


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_complement_of_singleton(name):
    T = SURFACES[name]
    n = T.vertex_count
    for v in range(n):
        rest = [w for w in range(n) if w != v]
        assert faces_meeting(T, rest) == T.n_faces
        assert Fraction(T.n_faces, n - 1) > Fraction(T.n_faces, n)


def test_subadditivity(rng):
    T = meshes.genus_two(4)
    n = T.vertex_count
    for _ in range(200):
        a = set(np.flatnonzero(rng.random(n) < 0.4).tolist())
        b = set(np.flatnonzero(rng.random(n) < 0.4).tolist())
        assert faces_meeting(T, a | b) <= faces_meeting(T, a) + faces_meeting(T, b)


def test_vertex_limit():
    # 28-vertex double pyramid; the guard trips before any enumeration.
    T = meshes.double_pyramid(28)
    assert T.vertex_count == 30
    with pytest.raises(TooManyVertices) as info:
        check_luo_condition(T)
    assert info.value.n == 30


def test_at_limit_runs():
    T = meshes.double_pyramid(MAX_VERTICES - 2)
    report = check_luo_condition(T)
    assert report.passes
    assert report.subsets_checked == 2**MAX_VERTICES - 2
