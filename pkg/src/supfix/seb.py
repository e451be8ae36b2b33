"""Smallest enclosing Euclidean ball in arbitrary (small) dimension.

Welzl's move-to-front recursion with an explicit support set.  The ball of
a support set of size s <= k + 1 is the circumball of those points: its
center is the affine combination solving 2 (r_i - r_0) . (c - r_0) =
|r_i - r_0|^2, a (s-1) x (s-1) Gram system.  Points are carried as plain
tuples; profiling showed tuple arithmetic beats small-ndarray arithmetic
by a wide margin at these sizes.

The recursion is randomized only through a fresh, seeded generator, so
results are deterministic for a given input.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import EmptyDomainError

_SHUFFLE_SEED = 0x5EB


def _dist2(a, b) -> float:
    return sum((x - y) ** 2 for x, y in zip(a, b))


def _circumball(support: list[tuple]) -> tuple[tuple, float]:
    """Center and squared radius of the unique smallest ball with the
    support points on its boundary (affinely independent input assumed)."""
    r0 = support[0]
    if len(support) == 1:
        return r0, 0.0
    rows = [tuple(x - y for x, y in zip(p, r0)) for p in support[1:]]
    G = np.array([[2.0 * sum(u * v for u, v in zip(a, b)) for b in rows] for a in rows])
    rhs = np.array([sum(u * u for u in a) for a in rows])
    try:
        lam = np.linalg.solve(G, rhs)
    except np.linalg.LinAlgError:
        lam = np.linalg.lstsq(G, rhs, rcond=None)[0]
    center = tuple(x0 + sum(l * a[i] for l, a in zip(lam, rows)) for i, x0 in enumerate(r0))
    return center, _dist2(center, r0)


def _welzl(points: list[tuple], support: list[tuple], k: int) -> tuple[tuple, float]:
    if not points or len(support) == k + 1:
        if not support:
            return None, -1.0
        return _circumball(support)
    p = points[-1]
    center, rad2 = _welzl(points[:-1], support, k)
    if center is not None and _dist2(p, center) <= rad2 * (1.0 + 1e-13):
        return center, rad2
    return _welzl(points[:-1], support + [p], k)


def seb_center(points: Sequence[Sequence[float]] | np.ndarray) -> tuple[np.ndarray, float]:
    """Center and radius of the smallest Euclidean ball enclosing the points.

    The returned radius is recomputed as the exact (float) maximum distance
    from the center, so `all(dist(p, c) <= r)` holds without slack.
    """
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.size == 0:
        raise EmptyDomainError("smallest enclosing ball of no points")
    n, k = arr.shape
    uniq = list(dict.fromkeys(tuple(row) for row in arr))
    if len(uniq) == 1:
        return np.array(uniq[0]), 0.0
    rng = np.random.default_rng(_SHUFFLE_SEED)
    order = rng.permutation(len(uniq))
    shuffled = [uniq[i] for i in order]
    center, _ = _welzl(shuffled, [], k)
    c = np.array(center)
    radius = max(math.dist(tuple(row), center) for row in uniq)
    return c, radius


def enclosing_radius(points: Sequence[Sequence[float]] | np.ndarray) -> float:
    return seb_center(points)[1]
