import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discrete_yamabe.angles import extended_angles, generalized_angles
from discrete_yamabe.errors import NonPositiveLength


def test_equilateral():
    ang = extended_angles(1, 1, 1)
    np.testing.assert_allclose(ang.angles, [np.pi / 3] * 3, atol=1e-15)
    assert not ang.degenerate


def test_right_triangle():
    ang = extended_angles(5, 3, 4)
    np.testing.assert_allclose(
        ang.angles, [np.pi / 2, np.arcsin(0.6), np.arcsin(0.8)], atol=1e-15
    )
    assert ang.angles[1] == pytest.approx(0.643501, abs=1e-6)
    assert ang.angles[2] == pytest.approx(0.927295, abs=1e-6)


@pytest.mark.parametrize("sides", [(5, 2, 1), (2, 1, 1)])
def test_degenerate(sides):
    ang = extended_angles(*sides)
    assert ang.angles == (np.pi, 0.0, 0.0)
    assert ang.degenerate


def test_degenerate_other_position():
    assert extended_angles(1, 3, 1).angles == (0.0, np.pi, 0.0)
    assert extended_angles(1, 1, 2).angles == (0.0, 0.0, np.pi)


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, -2, 1), (1, 1, np.nan), (np.inf, 1, 1)])
def test_rejects_bad_lengths(bad):
    with pytest.raises(NonPositiveLength):
        extended_angles(*bad)


def test_law_of_cosines_agreement(rng):
    # Independent check on well-shaped triangles where arccos is accurate.
    sides = rng.uniform(1, 2, size=(2000, 3))
    a, b, c = sides.T
    expected = np.arccos((b**2 + c**2 - a**2) / (2 * b * c))
    angles, degenerate = generalized_angles(sides)
    assert not degenerate.any()
    np.testing.assert_allclose(angles[:, 0], expected, atol=1e-12)


def test_needle_triangle_accuracy():
    # Apex angle of an isoceles triangle with base eps and legs 1 is
    # 2 asin(eps/2); arccos of the law of cosines loses most digits here.
    eps = 1e-9
    ang = extended_angles(eps, 1.0, 1.0).angles
    assert ang[0] == pytest.approx(2 * np.arcsin(eps / 2), rel=1e-12)


def test_angle_sum_bulk(rng):
    # 10^5 triples spanning both regimes.
    sides = np.exp(rng.uniform(-3, 3, size=(100_000, 3)))
    angles, degenerate = generalized_angles(sides)
    assert 0.1 < degenerate.mean() < 0.9
    assert np.abs(angles.sum(axis=1) - np.pi).max() < 1e-12
    assert angles.min() >= 0 and angles.max() <= np.pi
    # degenerate iff one angle is pi and the others 0
    flagged = (angles.max(axis=1) == np.pi) & (np.sort(angles, axis=1)[:, :2] == 0).all(axis=1)
    np.testing.assert_array_equal(flagged, degenerate)


positive = st.floats(1e-3, 1e3)


@settings(max_examples=200, deadline=None)
@given(positive, positive, positive)
def test_permutation_equivariance(x1, x2, x3):
    sides = (x1, x2, x3)
    base = extended_angles(*sides).angles
    for perm in itertools.permutations(range(3)):
        permuted = extended_angles(*(sides[p] for p in perm)).angles
        np.testing.assert_allclose(permuted, [base[p] for p in perm], atol=1e-14)


@settings(max_examples=200, deadline=None)
@given(positive, positive, positive, st.floats(1e-6, 1e6))
def test_scale_invariance(x1, x2, x3, lam):
    base = extended_angles(x1, x2, x3)
    scaled = extended_angles(lam * x1, lam * x2, lam * x3)
    np.testing.assert_allclose(scaled.angles, base.angles, atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(positive, positive, positive, st.integers(-30, 30))
def test_power_of_two_scaling_exact(x1, x2, x3, k):
    lam = 2.0**k
    assert extended_angles(lam * x1, lam * x2, lam * x3) == extended_angles(x1, x2, x3)


def _max_jump(step, half_width=0.1):
    half_width = min(half_width, 1000 * step)
    x1 = 2.0 + np.arange(-half_width, half_width + step / 2, step)
    sides = np.column_stack([x1, np.ones_like(x1), np.ones_like(x1)])
    angles, degenerate = generalized_angles(sides)
    assert degenerate.any() and not degenerate.all()
    return np.abs(np.diff(angles, axis=0)).max()


@pytest.mark.parametrize("step", [1e-4, 1e-6, 1e-8])
def test_continuity_across_boundary(step):
    # For sides (2 - delta, 1, 1) the small angles are acos(1 - delta/2),
    # about sqrt(delta), so a sample step h moves the large angle by at
    # most about 2 sqrt(h).  Jumps shrink with the step: no discontinuity.
    assert _max_jump(step) <= 2.05 * np.sqrt(step)


@pytest.mark.xfail(strict=True, reason="sqrt(h) modulus of continuity: jump ~0.02 at h=1e-4")
def test_continuity_bound_one_percent_at_step_1e4():
    assert _max_jump(1e-4) < 1e-2
