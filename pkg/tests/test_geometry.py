import math

import numpy as np
import pytest

from frechet_moe import (
    CurvatureBound,
    InvalidArgumentError,
    NoUniqueGeodesicError,
    distance,
    interpolate,
    validate_support_radius,
)
from frechet_moe.spaces import (
    DiskPoint,
    Euclidean,
    EuclideanPoint,
    PoincareDisk,
    Sphere,
    SpherePoint,
    Spider,
    SpiderPoint,
)


class TestCurvatureBound:
    def test_diameter_filled_for_positive_kappa(self):
        for kappa in (0.25, 1.0, 4.0):
            cb = CurvatureBound(kappa)
            assert cb.diameter_bound == pytest.approx(math.pi / math.sqrt(kappa), rel=1e-12)
            assert not cb.is_npc

    def test_absent_for_nonpositive(self):
        assert CurvatureBound(0.0).diameter_bound is None
        assert CurvatureBound(-1.0).is_npc

    def test_diameter_rejected_when_npc(self):
        with pytest.raises(InvalidArgumentError):
            CurvatureBound(0.0, diameter_bound=1.0)

    def test_inconsistent_diameter_rejected(self):
        with pytest.raises(InvalidArgumentError):
            CurvatureBound(1.0, diameter_bound=3.0)


def test_distance_examples():
    e2 = Euclidean(2)
    assert distance(e2, e2.point(0, 0), e2.point(3, 4)) == pytest.approx(5.0)
    assert distance(Spider(), SpiderPoint(1, 2), SpiderPoint(3, 5)) == 7.0
    x = SpherePoint.from_angles(0.7, 1.1)
    assert distance(Sphere(), x, x) == 0.0


def test_distance_rejects_mismatched_points():
    with pytest.raises(InvalidArgumentError):
        distance(Spider(), SpiderPoint(1, 1.0), DiskPoint(0.1, 0.2))
    with pytest.raises(InvalidArgumentError):
        distance(Euclidean(2), EuclideanPoint([0, 0]), EuclideanPoint([0, 0, 1]))


def test_interpolate_examples():
    e2 = Euclidean(2)
    m = interpolate(e2, e2.point(0, 0), e2.point(2, 0), 0.5)
    np.testing.assert_allclose(m.v, [1, 0])
    assert interpolate(Spider(), SpiderPoint(1, 4), SpiderPoint(2, 2), 0.5) == SpiderPoint(1, 1)
    north, eq = SpherePoint.from_angles(0, 0), SpherePoint.from_angles(math.pi / 2, 0)
    mid = interpolate(Sphere(), north, eq, 0.5)
    np.testing.assert_allclose(mid.v, SpherePoint.from_angles(math.pi / 4, 0).v, atol=1e-15)


@pytest.mark.parametrize("t", [-0.1, 1.5, float("nan")])
def test_interpolate_rejects_t_outside_unit_interval(t):
    e = Euclidean(1)
    with pytest.raises(InvalidArgumentError):
        interpolate(e, e.point(0), e.point(1), t)


def test_interpolate_antipodal_has_no_unique_geodesic():
    with pytest.raises(NoUniqueGeodesicError):
        interpolate(Sphere(), SpherePoint.from_vector([0, 0, 1]), SpherePoint.from_vector([0, 0, -1]), 0.3)


class TestSupportRadius:
    def test_inside(self):
        c = SpherePoint.from_angles(0, 0)
        pts = [SpherePoint.from_angles(a, b) for a, b in [(0.1, 0), (0.7, 2), (math.pi / 4, 4)]]
        assert validate_support_radius(Sphere(), pts, c)

    def test_antipode(self):
        c = SpherePoint.from_angles(0, 0)
        assert not validate_support_radius(Sphere(), [SpherePoint.from_vector([0, 0, -1])], c)

    def test_boundary_is_excluded(self):
        c = SpherePoint.from_vector([0, 0, 1])
        assert not validate_support_radius(Sphere(), [SpherePoint.from_vector([1, 0, 0])], c)

    def test_npc_space_rejected(self):
        with pytest.raises(InvalidArgumentError):
            validate_support_radius(Spider(), [SpiderPoint(1, 1)], SpiderPoint(1, 0))

    def test_disk_rejected(self):
        with pytest.raises(InvalidArgumentError):
            validate_support_radius(PoincareDisk(), [DiskPoint(0, 0)], DiskPoint(0, 0))
