"""Relative-center and certificate tests.

The certificate checker is itself exercised against hand-made failures,
so a passing certificate in the property runs means something.
"""

import math

import numpy as np
import pytest

from supfix.boxes import bounding_box, box_center
from supfix.centers import center_radius, urns_center, verify_urns_certificate
from supfix.instances import certificate_samples, random_cloud
from supfix.spaces import (
    FIBER_URNS_CONSTANT,
    PointCloud,
    SupPoint,
    cloud_diameter,
    sup_distance,
)


class TestUrnsCenter:
    def test_k1_equals_bounding_box_midpoint(self, rng):
        for _ in range(20):
            cloud = PointCloud.from_array(rng.standard_normal((7, 4, 1)))
            z = urns_center(cloud)
            mid = box_center(bounding_box(cloud))
            assert sup_distance(z, mid) <= 1e-9

    def test_radius_at_most_diameter_over_sqrt2(self, rng):
        """Per-fiber enclosing balls give the Jung-type bound in every fiber."""
        for _ in range(50):
            cloud = PointCloud.from_array(rng.standard_normal((9, 3, 3)))
            z = urns_center(cloud)
            assert center_radius(cloud, z) <= cloud_diameter(cloud) / math.sqrt(2) + 1e-9

    def test_single_point_cloud(self):
        cloud = PointCloud.from_iter([SupPoint(np.ones((2, 3)))])
        z = urns_center(cloud)
        assert sup_distance(z, cloud.points[0]) == 0.0

    def test_translation_equivariance(self, rng):
        arr = rng.standard_normal((6, 3, 2))
        shift = rng.standard_normal((3, 2))
        z1 = urns_center(PointCloud.from_array(arr))
        z2 = urns_center(PointCloud.from_array(arr + shift))
        assert np.allclose(z1.fibers + shift, z2.fibers, atol=1e-9)


class TestCertificate:
    def test_valid_center_passes(self, rng):
        for seed in range(30):
            cloud = random_cloud(seed, fibers=int(rng.integers(1, 7)), fiber_dim=3)
            z = urns_center(cloud)
            ys = certificate_samples(cloud, z, FIBER_URNS_CONSTANT, 20, rng)
            rep = verify_urns_certificate(cloud, z, FIBER_URNS_CONSTANT, ys)
            assert rep.ok
            assert rep.checked_samples == 20 and rep.rejected_samples == 0
            assert rep.radius <= FIBER_URNS_CONSTANT * rep.diameter + 1e-10

    def test_far_candidate_fails_radius_condition(self, rng):
        cloud = random_cloud(3)
        z = urns_center(cloud)
        far = SupPoint(z.fibers + 10.0)
        rep = verify_urns_certificate(cloud, far, FIBER_URNS_CONSTANT, [])
        assert not rep.ok

    def test_distant_valid_ball_center_fails_second_condition(self):
        """A z that encloses the cloud but sits far from a legitimate ball
        center y must be rejected by the pairing condition.  Two antipodal
        points of the lens of valid centers around a two-point cloud are
        farther apart than the bound, so this genuinely discriminates."""
        a = 0.1
        cloud = PointCloud.from_array(np.array([[[-a, 0.0]], [[a, 0.0]]]))
        bound = FIBER_URNS_CONSTANT * cloud_diameter(cloud)
        height = 0.99 * math.sqrt(2.0) * a
        z = SupPoint(np.array([[0.0, height]]))
        y = SupPoint(np.array([[0.0, -height]]))
        assert center_radius(cloud, z) <= bound
        assert center_radius(cloud, y) <= bound
        assert sup_distance(z, y) > bound
        rep = verify_urns_certificate(cloud, z, FIBER_URNS_CONSTANT, [y])
        assert not rep.ok

    def test_invalid_samples_counted_not_failed(self, rng):
        cloud = random_cloud(5)
        z = urns_center(cloud)
        bad_y = SupPoint(z.fibers + 100.0)
        rep = verify_urns_certificate(cloud, z, FIBER_URNS_CONSTANT, [bad_y])
        assert rep.ok
        assert rep.rejected_samples == 1 and rep.checked_samples == 0

    def test_certificate_scales_with_constant(self, rng):
        """The same center passes at any constant at or above 1/sqrt(2)."""
        cloud = random_cloud(11)
        z = urns_center(cloud)
        for c in (1 / math.sqrt(2) + 1e-6, 0.8, FIBER_URNS_CONSTANT, 0.95):
            ys = certificate_samples(cloud, z, c, 10, rng)
            assert verify_urns_certificate(cloud, z, c, ys).ok


class TestCertificateSamples:
    def test_samples_are_valid_ball_centers(self, rng):
        for seed in range(10):
            cloud = random_cloud(seed, fibers=5, fiber_dim=3, points=8)
            z = urns_center(cloud)
            bound = FIBER_URNS_CONSTANT * cloud_diameter(cloud)
            for y in certificate_samples(cloud, z, FIBER_URNS_CONSTANT, 15, rng):
                assert center_radius(cloud, y) <= bound
