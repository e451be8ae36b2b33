"""Points, clouds and descriptors for the two sup-norm model spaces.

The working spaces are finite models: real l-infinity^n (every point a vector
of n reals, distance = max coordinate difference) and l-infinity(Gamma, H)
with a finite index set Gamma of size m and Euclidean fibers H = R^k
(distance = max over Gamma of the Euclidean fiber distance).  Setting k = 1
recovers the box space, so a single point type covers both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyDomainError, SpaceMismatchError

# Jung-type constants certifying uniform relative normal structure for the
# two model spaces: 1/2 on the box space, sqrt(3)/2 for Euclidean fibers.
BOX_URNS_CONSTANT = 0.5
FIBER_URNS_CONSTANT = math.sqrt(3.0) / 2.0


@dataclass(frozen=True)
class SupPoint:
    """A point of l-infinity(Gamma, R^k): an (m, k) array of fiber vectors."""

    fibers: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.fibers, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, np.newaxis]
        if arr.ndim != 2 or arr.size == 0:
            raise SpaceMismatchError(f"fibers must be a nonempty (m, k) array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("fiber coordinates must be finite")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "fibers", arr)

    @property
    def m(self) -> int:
        return self.fibers.shape[0]

    @property
    def k(self) -> int:
        return self.fibers.shape[1]

    def flat(self) -> np.ndarray:
        """The point as a vector of length n = m for k = 1 (box space view)."""
        if self.k != 1:
            raise SpaceMismatchError(f"flat() requires k=1 fibers, got k={self.k}")
        return self.fibers[:, 0]

    @classmethod
    def of(cls, coords: Sequence[float]) -> "SupPoint":
        """Box-space point from a plain coordinate sequence."""
        return cls(np.asarray(coords, dtype=float)[:, np.newaxis])


def sup_distance(x: SupPoint, y: SupPoint) -> float:
    """Sup-norm distance: max over Gamma of the Euclidean fiber distance."""
    if x.fibers.shape != y.fibers.shape:
        raise SpaceMismatchError(
            f"points live in different spaces: {x.fibers.shape} vs {y.fibers.shape}"
        )
    diff = x.fibers - y.fibers
    return float(np.max(np.sqrt(np.sum(diff * diff, axis=1))))


@dataclass(frozen=True)
class PointCloud:
    """A finite set of points of a common space, e.g. a group orbit."""

    points: tuple[SupPoint, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        if pts:
            shape = pts[0].fibers.shape
            for p in pts[1:]:
                if p.fibers.shape != shape:
                    raise SpaceMismatchError("cloud mixes points from different spaces")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_iter(cls, points: Iterable[SupPoint]) -> "PointCloud":
        return cls(tuple(points))

    @classmethod
    def from_array(cls, stacked: np.ndarray) -> "PointCloud":
        """Cloud from an (N, m, k) array."""
        return cls(tuple(SupPoint(stacked[i]) for i in range(stacked.shape[0])))

    def __len__(self) -> int:
        return len(self.points)

    def stack(self) -> np.ndarray:
        """All points as one (N, m, k) array."""
        if not self.points:
            raise EmptyDomainError("empty cloud has no stacked form")
        return np.stack([p.fibers for p in self.points])


def cloud_diameter(cloud: PointCloud) -> float:
    """Largest pairwise sup-distance within the cloud."""
    if len(cloud) == 0:
        raise EmptyDomainError("diameter of an empty cloud is undefined")
    pts = cloud.stack()
    # (N, N, m) matrix of fiber distances, then sup over fibers, max over pairs.
    diff = pts[:, np.newaxis, :, :] - pts[np.newaxis, :, :, :]
    fiber_d = np.sqrt(np.sum(diff * diff, axis=3))
    return float(np.max(np.max(fiber_d, axis=2)))


@dataclass(frozen=True)
class SpaceDescriptor:
    """Which model space we are in, plus its certified structure constant."""

    kind: str  # "box_real" | "fiber_hilbert"
    m: int
    k: int

    _KINDS = ("box_real", "fiber_hilbert")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.m < 1 or self.k < 1:
            raise ValueError("space dimensions must be positive")
        if self.kind == "box_real" and self.k != 1:
            raise ValueError("box_real requires one-dimensional fibers")

    @classmethod
    def box_real(cls, n: int) -> "SpaceDescriptor":
        return cls("box_real", n, 1)

    @classmethod
    def fiber_hilbert(cls, m: int, k: int) -> "SpaceDescriptor":
        return cls("fiber_hilbert", m, k)

    @property
    def urns_constant(self) -> float:
        """The constant c < 1 for which admissible sets admit relative centers."""
        if self.kind == "box_real":
            return BOX_URNS_CONSTANT
        return FIBER_URNS_CONSTANT

    def matches(self, p: SupPoint) -> bool:
        return p.m == self.m and p.k == self.k

    def require(self, p: SupPoint) -> None:
        if not self.matches(p):
            raise SpaceMismatchError(
                f"point of shape {p.fibers.shape} does not live in {self.kind}({self.m},{self.k})"
            )
