"""Relative centers of point clouds and certificate checking.

For a bounded set M in the sup-norm space, the center built here is the
fiberwise smallest-enclosing-ball center.  It has two properties, both
with a constant c < 1 relative to diam(M):

  (i)  every point of M is within c * diam(M) of the center;
  (ii) the center is within c * diam(M) of any point y whose
       c * diam(M)-ball contains M.

Property (ii) follows from a Hilbert-space identity: if B(z, r) is the
smallest ball enclosing a fiber of M and B(y, R) also encloses it, then
|y - z|^2 <= R^2 - r^2.  `verify_urns_certificate` checks both properties
numerically against sampled ball centers y.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyDomainError
from .seb import seb_center
from .spaces import PointCloud, SupPoint, cloud_diameter, sup_distance


def urns_center(cloud: PointCloud) -> SupPoint:
    """Fiberwise smallest-enclosing-ball center of the cloud.

    For k = 1 this reduces to the bounding-box midpoint.
    """
    if len(cloud) == 0:
        raise EmptyDomainError("cannot center an empty cloud")
    pts = cloud.stack()  # (N, m, k)
    fibers = np.empty((pts.shape[1], pts.shape[2]))
    for g in range(pts.shape[1]):
        fibers[g], _ = seb_center(pts[:, g, :])
    return SupPoint(fibers)


def center_radius(cloud: PointCloud, z: SupPoint) -> float:
    """max over x in the cloud of d_sup(z, x)."""
    return max(sup_distance(z, x) for x in cloud.points)


@dataclass(frozen=True)
class CertificateReport:
    ok: bool
    constant: float
    diameter: float
    radius: float
    worst_center_gap: float
    checked_samples: int
    rejected_samples: int

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "constant": self.constant,
            "diameter": self.diameter,
            "radius": self.radius,
            "worst_center_gap": self.worst_center_gap,
            "checked_samples": self.checked_samples,
            "rejected_samples": self.rejected_samples,
        }


def verify_urns_certificate(
    cloud: PointCloud,
    z: SupPoint,
    c: float,
    y_samples: Sequence[SupPoint] = (),
    tol: float = 1e-10,
) -> CertificateReport:
    """Check the two relative-center properties of z for the cloud at constant c.

    Samples whose ball of radius c * diam does not actually contain the
    cloud are counted as rejected rather than failing the certificate;
    they do not witness anything.
    """
    diam = cloud_diameter(cloud)
    bound = c * diam + tol
    radius = center_radius(cloud, z)
    ok = radius <= bound

    worst_gap = 0.0
    checked = 0
    rejected = 0
    for y in y_samples:
        if center_radius(cloud, y) > bound:
            rejected += 1
            continue
        checked += 1
        gap = sup_distance(z, y)
        worst_gap = max(worst_gap, gap)
        if gap > bound:
            ok = False
    return CertificateReport(
        ok=ok,
        constant=c,
        diameter=diam,
        radius=radius,
        worst_center_gap=worst_gap,
        checked_samples=checked,
        rejected_samples=rejected,
    )
