"""Seeded random instances for tests, benchmarks and scenario files.

Box and fiber group data is drawn on the dyadic grid of multiples of
2^-16 inside [-2, 2].  Signed-permutation matrices map grid vectors to
grid vectors and differences of grid numbers are exact in double
precision, so the generated affine maps compose without rounding and
closures, orbits and invariance checks all hold exactly.  Group order is
kept small by drawing signed permutations, whose order is read off the
signed cycle structure, and rejecting draws that are too large.

Everything is driven by numpy's default_rng, so a seed pins the instance.
"""

from __future__ import annotations

import math

import numpy as np

from .centers import urns_center
from .cocycles import CayleyGroup, DerivationData, inner_derivation, translation_cocycle
from .errors import GroupNotClosedError
from .isometries import FiberPermIsometry, GroupSpec, group_closure
from .spaces import FIBER_URNS_CONSTANT, PointCloud, SupPoint, cloud_diameter
from .unitary import UnitaryGroup, unitary_closure

GRID_STEP = 2.0 ** -16
GRID_RANGE = 2.0  # grid points live in [-GRID_RANGE, GRID_RANGE]


def grid_point(rng: np.random.Generator, shape) -> np.ndarray:
    n = int(GRID_RANGE / GRID_STEP)
    return rng.integers(-n, n + 1, size=shape).astype(float) * GRID_STEP


def _signed_perm_order(perm: np.ndarray, signs: np.ndarray) -> int:
    order = 1
    seen = np.zeros(len(perm), dtype=bool)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, sign, i = 0, 1, start
        while not seen[i]:
            seen[i] = True
            sign *= int(signs[i])
            length += 1
            i = perm[i]
        order = math.lcm(order, length if sign > 0 else 2 * length)
    return order


def _signed_perm_matrix(rng: np.random.Generator, k: int) -> np.ndarray:
    perm = rng.permutation(k)
    signs = rng.choice([-1.0, 1.0], size=k)
    mat = np.zeros((k, k))
    mat[np.arange(k), perm] = signs
    return mat


def _conjugate_by_translation(lin: FiberPermIsometry, p: np.ndarray) -> FiberPermIsometry:
    """x -> L(x - p) + p for a linear L; fixes p by construction."""
    trans = p - np.einsum("gij,gj->gi", lin.maps, p[lin.perm])
    return FiberPermIsometry(lin.perm, lin.maps, trans)


def random_box_group(
    seed: int, dim: int = 8, max_order: int = 48
) -> tuple[GroupSpec, SupPoint]:
    """A finite signed-permutation affine group on the dim-box, plus a seed point.

    The group is a linear signed-permutation group conjugated by a grid
    translation, so a common fixed point exists and all arithmetic in the
    descent is exact.
    """
    rng = np.random.default_rng(seed)
    add_flip = bool(rng.random() < 0.5)
    budget = max_order // 2 if add_flip else max_order
    while True:
        perm = rng.permutation(dim)
        signs = rng.choice([-1.0, 1.0], size=dim)
        if _signed_perm_order(perm, signs) <= budget:
            break
    maps = signs.reshape(dim, 1, 1)
    lin_gens = [FiberPermIsometry(perm, maps, np.zeros((dim, 1)))]
    if add_flip:
        lin_gens.append(
            FiberPermIsometry(np.arange(dim), -np.ones((dim, 1, 1)), np.zeros((dim, 1)))
        )
    p = grid_point(rng, (dim, 1))
    gens = [_conjugate_by_translation(g, p) for g in lin_gens]
    group = group_closure(gens, cap=max_order + 1)
    x0 = SupPoint(grid_point(rng, (dim, 1)))
    return group, x0


def random_fiber_group(
    seed: int, fibers: int = 5, fiber_dim: int = 3, max_order: int = 48
) -> tuple[GroupSpec, SupPoint]:
    """Like random_box_group but with R^k fibers and signed-permutation fiber maps."""
    rng = np.random.default_rng(seed)
    add_flip = bool(rng.random() < 0.5)
    budget = max_order // 2 if add_flip else max_order
    while True:
        perm = rng.permutation(fibers)
        maps = np.stack([_signed_perm_matrix(rng, fiber_dim) for _ in range(fibers)])
        cand = FiberPermIsometry(perm, maps, np.zeros((fibers, fiber_dim)))
        try:
            closure = group_closure([cand], cap=budget + 1)
        except GroupNotClosedError:
            continue
        if len(closure) <= budget:
            break
    lin_gens = [cand]
    if add_flip:
        eye_flip = np.broadcast_to(-np.eye(fiber_dim), (fibers, fiber_dim, fiber_dim)).copy()
        lin_gens.append(
            FiberPermIsometry(np.arange(fibers), eye_flip, np.zeros((fibers, fiber_dim)))
        )
    p = grid_point(rng, (fibers, fiber_dim))
    gens = [_conjugate_by_translation(g, p) for g in lin_gens]
    group = group_closure(gens, cap=max_order + 1)
    x0 = SupPoint(grid_point(rng, (fibers, fiber_dim)))
    return group, x0


def random_cloud(
    seed: int, fibers: int = 4, fiber_dim: int = 3, points: int = 10
) -> PointCloud:
    rng = np.random.default_rng(seed)
    arr = rng.standard_normal((points, fibers, fiber_dim))
    if points > 1 and cloud_diameter(PointCloud.from_array(arr)) < 1e-6:
        arr[0] += 1.0  # degenerate draw; force a nonzero diameter
    return PointCloud.from_array(arr)


def certificate_samples(
    cloud: PointCloud,
    z: SupPoint,
    constant: float,
    count: int,
    rng: np.random.Generator,
    margin: float = 0.95,
) -> list[SupPoint]:
    """Centers y of radius constant * diam balls containing the cloud.

    Each sample moves away from the enclosing-ball center by at most
    `margin` of the per-fiber slack, so containment holds with room to
    spare and no rejection loop is needed.
    """
    pts = cloud.stack()
    bound = constant * cloud_diameter(cloud)
    fiber_radii = np.linalg.norm(pts - z.fibers, axis=2).max(axis=0)  # (m,)
    slack = bound - fiber_radii
    samples = []
    for _ in range(count):
        dirs = rng.standard_normal(z.fibers.shape)
        norms = np.linalg.norm(dirs, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        u = rng.uniform(0.0, margin, size=(pts.shape[1], 1))
        samples.append(SupPoint(z.fibers + dirs / norms * (u * slack[:, None])))
    return samples


def random_certificate_instance(
    seed: int, fibers: int = 4, fiber_dim: int = 3, points: int = 10, samples: int = 50,
    constant: float | None = None,
) -> tuple[PointCloud, SupPoint, float, list[SupPoint]]:
    if constant is None:
        constant = FIBER_URNS_CONSTANT
    rng = np.random.default_rng(seed)
    cloud = random_cloud(seed, fibers, fiber_dim, points)
    z = urns_center(cloud)
    ys = certificate_samples(cloud, z, constant, samples, rng)
    return cloud, z, constant, ys


_NAMED_GENERATORS = {
    "q8": (np.array([[1j, 0], [0, -1j]]), np.array([[0, 1], [-1, 0]])),
    "s3": (
        np.array([[0.0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        np.array([[0.0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    ),
    "c12": (np.diag([np.exp(1j * np.pi / 6), np.exp(-1j * np.pi / 6)]),),
}


def unitary_group(name: str) -> UnitaryGroup:
    """Named finite unitary groups used throughout the derivation tests."""
    try:
        gens = _NAMED_GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown group name {name!r}; choose from {sorted(_NAMED_GENERATORS)}")
    return unitary_closure(gens, cap=64)


def random_inner_derivation(
    group: UnitaryGroup, seed: int, scale: float = 1.0
) -> tuple[DerivationData, np.ndarray]:
    rng = np.random.default_rng(seed)
    d = group.d
    t0 = scale * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    return inner_derivation(group, t0), t0


def corrupt_derivation(data: DerivationData, seed: int, scale: float = 1e-2) -> DerivationData:
    """Perturb one non-identity value; the law then fails at about `scale`."""
    rng = np.random.default_rng(seed)
    idx = int(rng.integers(1, len(data.group)))
    d = data.d
    bump = scale * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    values = data.values.copy()
    values[idx] += bump
    return DerivationData(data.group, values)


def cayley_group(name: str) -> CayleyGroup:
    """'cyclic:n' or 'symmetric:n' (n small)."""
    kind, _, arg = name.partition(":")
    n = int(arg)
    if kind == "cyclic":
        return CayleyGroup.cyclic(n)
    if kind == "symmetric":
        if n > 5:
            raise ValueError("symmetric groups beyond n=5 are not sensible here")
        return CayleyGroup.symmetric(n)
    raise ValueError(f"unknown group family {kind!r}")


def random_translation_cocycle(group: CayleyGroup, seed: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    t = rng.standard_normal(len(group))
    return translation_cocycle(group, t), t


def corrupt_cocycle_table(c: np.ndarray, seed: int, scale: float = 1e-2) -> np.ndarray:
    rng = np.random.default_rng(seed)
    n = c.shape[0]
    out = np.array(c, dtype=float)
    g = int(rng.integers(1, n))
    s = int(rng.integers(0, n))
    out[g, s] += scale * (1.0 + rng.random())
    return out
