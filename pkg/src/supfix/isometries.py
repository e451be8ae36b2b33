"""Surjective affine isometries of the sup-norm model space.

Every map handled here permutes the index set, applies an orthogonal map
in each fiber, and translates:

    (phi x)_g = maps[g] @ x[perm[g]] + trans[g]

This family is closed under composition and inversion, which is all the
group machinery needs.  Finite groups are produced by breadth-first
closure over right multiplication by the generators; elements are
deduplicated by their images of a fixed probe cloud, so no canonical form
of the matrix data is required.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .boxes import Box
from .errors import GroupNotClosedError, SpaceMismatchError
from .spaces import PointCloud, SupPoint, cloud_diameter

_ORTHO_TOL = 1e-8


@dataclass(frozen=True)
class FiberPermIsometry:
    perm: np.ndarray  # (m,) permutation of range(m)
    maps: np.ndarray  # (m, k, k) orthogonal fiber maps
    trans: np.ndarray  # (m, k)

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=int)
        maps = np.asarray(self.maps, dtype=float)
        trans = np.asarray(self.trans, dtype=float)
        m = perm.shape[0]
        if sorted(perm.tolist()) != list(range(m)):
            raise ValueError("perm is not a permutation")
        if maps.shape != (m, trans.shape[1], trans.shape[1]) or trans.shape[0] != m:
            raise SpaceMismatchError("inconsistent isometry data shapes")
        k = trans.shape[1]
        gram = np.einsum("gij,gil->gjl", maps, maps)
        if not np.allclose(gram, np.eye(k), atol=_ORTHO_TOL):
            raise ValueError("fiber maps must be orthogonal")
        for name, arr in (("perm", perm), ("maps", maps), ("trans", trans)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def m(self) -> int:
        return self.perm.shape[0]

    @property
    def k(self) -> int:
        return self.trans.shape[1]

    @classmethod
    def identity(cls, m: int, k: int) -> "FiberPermIsometry":
        return cls(np.arange(m), np.broadcast_to(np.eye(k), (m, k, k)).copy(), np.zeros((m, k)))

    def __call__(self, x: SupPoint) -> SupPoint:
        if x.m != self.m or x.k != self.k:
            raise SpaceMismatchError("point shape does not match isometry")
        out = np.einsum("gij,gj->gi", self.maps, x.fibers[self.perm]) + self.trans
        return SupPoint(out)

    def is_linear(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.trans) <= tol))


def compose(a: FiberPermIsometry, b: FiberPermIsometry) -> FiberPermIsometry:
    """The isometry x -> a(b(x))."""
    if a.m != b.m or a.k != b.k:
        raise SpaceMismatchError("cannot compose isometries of different spaces")
    perm = b.perm[a.perm]
    maps = np.einsum("gij,gjl->gil", a.maps, b.maps[a.perm])
    trans = np.einsum("gij,gj->gi", a.maps, b.trans[a.perm]) + a.trans
    return FiberPermIsometry(perm, maps, trans)


def invert(a: FiberPermIsometry) -> FiberPermIsometry:
    q = np.argsort(a.perm)  # q[g] is the index sent to g
    maps = np.swapaxes(a.maps[q], 1, 2)
    trans = -np.einsum("gij,gj->gi", maps, a.trans[q])
    return FiberPermIsometry(q, maps, trans)


def _probe_cloud(m: int, k: int) -> np.ndarray:
    """Fixed probe points whose images identify an isometry: the origin,
    one-hot points, and one generic point to split symmetric cases."""
    probes = [np.zeros((m, k))]
    one = np.zeros((m, k))
    one[0, 0] = 1.0
    probes.append(one)
    if m > 1 or k > 1:
        rng = np.random.default_rng(20240)
        probes.append(rng.standard_normal((m, k)))
    return np.stack(probes)


def _signature(iso: FiberPermIsometry, probes: np.ndarray) -> np.ndarray:
    out = np.einsum("gij,pgj->pgi", iso.maps, probes[:, iso.perm, :]) + iso.trans
    return out


@dataclass(frozen=True)
class GroupSpec:
    """A finite isometry group: closed element list with generator words.

    words[i] is the tuple of generator indices whose left-to-right product
    equals elements[i]; the identity has the empty word.
    """

    generators: tuple[FiberPermIsometry, ...]
    elements: tuple[FiberPermIsometry, ...]
    words: tuple[tuple[int, ...], ...]
    tol: float = 1e-10

    @property
    def m(self) -> int:
        return self.elements[0].m

    @property
    def k(self) -> int:
        return self.elements[0].k

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(
            "e" if not w else "*".join(f"g{i}" for i in w) for w in self.words
        )

    def element_index(self, iso: FiberPermIsometry) -> int:
        probes = _probe_cloud(self.m, self.k)
        sig = _signature(iso, probes)
        for i, e in enumerate(self.elements):
            if np.allclose(_signature(e, probes), sig, atol=self.tol, rtol=0.0):
                return i
        raise KeyError("isometry is not an element of the group")


def group_closure(
    generators: list[FiberPermIsometry] | tuple[FiberPermIsometry, ...],
    cap: int = 512,
    tol: float = 1e-10,
) -> GroupSpec:
    """Close the generators under composition, breadth first.

    Raises GroupNotClosedError when more than `cap` distinct elements
    appear, so a typo in the generator data fails fast instead of looping.
    """
    if not generators:
        raise ValueError("need at least one generator")
    m, k = generators[0].m, generators[0].k
    for g in generators:
        if g.m != m or g.k != k:
            raise SpaceMismatchError("generators act on different spaces")
    probes = _probe_cloud(m, k)

    elements: list[FiberPermIsometry] = [FiberPermIsometry.identity(m, k)]
    words: list[tuple[int, ...]] = [()]
    sigs: list[np.ndarray] = [_signature(elements[0], probes)]

    def known(sig: np.ndarray) -> bool:
        return any(np.allclose(s, sig, atol=tol, rtol=0.0) for s in sigs)

    frontier = [0]
    while frontier:
        next_frontier = []
        for idx in frontier:
            for gi, g in enumerate(generators):
                cand = compose(elements[idx], g)
                sig = _signature(cand, probes)
                if known(sig):
                    continue
                if len(elements) >= cap:
                    raise GroupNotClosedError(
                        f"closure exceeded {cap} elements; generators look non-terminating"
                    )
                elements.append(cand)
                words.append(words[idx] + (gi,))
                sigs.append(sig)
                next_frontier.append(len(elements) - 1)
        frontier = next_frontier
    return GroupSpec(tuple(generators), tuple(elements), tuple(words), tol)


def orbit(group: GroupSpec, x: SupPoint) -> PointCloud:
    """The images of x under every group element, in element order."""
    return PointCloud.from_iter(g(x) for g in group.elements)


def orbit_diameter(group: GroupSpec, x: SupPoint) -> float:
    return cloud_diameter(orbit(group, x))


def box_image(iso: FiberPermIsometry, box: Box) -> Box:
    """Exact image of a k = 1 box under a signed-permutation isometry.

    Fiber maps must be exactly +-1 (as floats); translations are floats and
    hence dyadic, so the image bounds are computed without rounding.
    """
    if iso.k != 1:
        raise SpaceMismatchError("exact box images are defined for k=1")
    if box.is_empty:
        return Box.empty(box.dim)
    if iso.m != box.dim:
        raise SpaceMismatchError("box dimension does not match isometry")
    lo_out: list[Fraction] = []
    hi_out: list[Fraction] = []
    for g in range(iso.m):
        s = float(iso.maps[g, 0, 0])
        if s not in (1.0, -1.0):
            raise ValueError("fiber map entries must be exactly +1 or -1")
        t = Fraction(float(iso.trans[g, 0]))
        a, b = box.lo[iso.perm[g]], box.hi[iso.perm[g]]
        if s > 0:
            lo_out.append(a + t)
            hi_out.append(b + t)
        else:
            lo_out.append(-b + t)
            hi_out.append(-a + t)
    return Box(box.dim, tuple(lo_out), tuple(hi_out))
