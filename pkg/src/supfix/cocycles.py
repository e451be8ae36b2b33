"""Derivation-style cocycles on finite groups, matrix and scalar flavor.

A map g -> delta(g) into d x d matrices satisfies the multiplicative
Leibniz law

    delta(g h) = delta(g) h + g delta(h)

exactly when it extends consistently from generator values along group
words.  `extend_cocycle` performs that extension and, on request, checks
the law on the full multiplication table, raising on any defect above
tolerance; corrupted inputs are detected here rather than miles later as
a mysteriously bad least-squares fit.

The scalar flavor lives on the function space over an abstract finite
group: c(g)(s) = t(g s) - t(s g) for a fixed function t, with the law
c(g h)(s) = c(g)(h s) + c(h)(s g).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CocycleInconsistencyError, SpaceMismatchError
from .unitary import UnitaryGroup


@dataclass(frozen=True)
class DerivationData:
    """Cocycle values on every group element, aligned with group.elements."""

    group: UnitaryGroup
    values: np.ndarray  # (|G|, d, d) complex

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (len(self.group), self.group.d, self.group.d):
            raise SpaceMismatchError("derivation values do not match the group")
        object.__setattr__(self, "values", vals)

    @property
    def d(self) -> int:
        return self.group.d

    def generator_values(self) -> np.ndarray:
        idx = [self.group.words.index((i,)) for i in range(len(self.group.generators))]
        return self.values[idx]


def inner_derivation(group: UnitaryGroup, t0: np.ndarray) -> DerivationData:
    """delta(g) = t0 g - g t0 for every element; always satisfies the law."""
    t0 = np.asarray(t0, dtype=complex)
    vals = np.einsum("ij,njl->nil", t0, group.elements) - np.einsum(
        "nij,jl->nil", group.elements, t0
    )
    return DerivationData(group, vals)


def cocycle_defect(data: DerivationData) -> tuple[float, int, int]:
    """Worst violation of the Leibniz law over all element pairs.

    Returns (defect, i, j) for the worst pair of element indices.
    """
    g = data.group
    worst, wi, wj = 0.0, 0, 0
    for i in range(len(g)):
        gi = g.elements[i]
        di = data.values[i]
        for j in range(len(g)):
            expect = di @ g.elements[j] + gi @ data.values[j]
            defect = float(np.abs(data.values[g.cayley[i, j]] - expect).max())
            if defect > worst:
                worst, wi, wj = defect, i, j
    return worst, wi, wj


def check_cocycle(data: DerivationData, tol: float = 1e-8) -> float:
    defect, i, j = cocycle_defect(data)
    if defect > tol:
        labels = data.group.labels
        raise CocycleInconsistencyError(labels[i], labels[j], defect)
    return defect


def extend_cocycle(
    group: UnitaryGroup,
    generator_values: np.ndarray,
    check: bool = True,
    tol: float = 1e-8,
) -> DerivationData:
    """Extend generator values to the whole group along its BFS words.

    delta(identity) = 0 is forced by the law.  With check=True the full
    multiplication table is verified afterwards, which is what separates
    genuine cocycles from arbitrary generator data.
    """
    gen_vals = np.asarray(generator_values, dtype=complex)
    if gen_vals.shape != (len(group.generators), group.d, group.d):
        raise SpaceMismatchError("need one value per generator")
    vals = np.zeros((len(group), group.d, group.d), dtype=complex)
    for idx in range(1, len(group)):
        parent, gi = group.parents[idx]
        # delta(u g) = delta(u) g + u delta(g), u the BFS parent
        vals[idx] = vals[parent] @ group.generators[gi] + group.elements[parent] @ gen_vals[gi]
    data = DerivationData(group, vals)
    if check:
        check_cocycle(data, tol)
    return data


@dataclass(frozen=True)
class CayleyGroup:
    """Abstract finite group as labels plus a multiplication table.

    table[i, j] is the index of the product of elements i and j; index 0
    is the identity.
    """

    labels: tuple[str, ...]
    table: np.ndarray  # (n, n) int

    def __post_init__(self):
        table = np.asarray(self.table, dtype=int)
        n = len(self.labels)
        if table.shape != (n, n):
            raise SpaceMismatchError("multiplication table shape mismatch")
        if not (np.all(table[0] == np.arange(n)) and np.all(table[:, 0] == np.arange(n))):
            raise ValueError("index 0 must be the identity")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def inverse(self) -> np.ndarray:
        n = len(self)
        inv = np.empty(n, dtype=int)
        for i in range(n):
            (hits,) = np.nonzero(self.table[i] == 0)
            inv[i] = hits[0]
        return inv

    @classmethod
    def cyclic(cls, n: int) -> "CayleyGroup":
        labels = tuple(f"r{i}" for i in range(n))
        i = np.arange(n)
        return cls(labels, (i[:, None] + i[None, :]) % n)

    @classmethod
    def symmetric(cls, n: int) -> "CayleyGroup":
        perms = list(itertools.permutations(range(n)))  # identity comes first
        index = {p: i for i, p in enumerate(perms)}
        size = len(perms)
        table = np.empty((size, size), dtype=int)
        for i, p in enumerate(perms):
            for j, q in enumerate(perms):
                table[i, j] = index[tuple(p[q[x]] for x in range(n))]
        labels = tuple("".join(str(x) for x in p) for p in perms)
        return cls(labels, table)


def translation_cocycle(group: CayleyGroup, t: np.ndarray) -> np.ndarray:
    """c[g, s] = t[g s] - t[s g]; the scalar analog of an inner derivation."""
    t = np.asarray(t, dtype=float)
    if t.shape != (len(group),):
        raise SpaceMismatchError("t must be one scalar per group element")
    return t[group.table] - t[group.table.T]


def translation_law_worst_pair(group: CayleyGroup, c: np.ndarray) -> tuple[float, int, int]:
    """Worst violation of c[g h, s] = c[g, h s] + c[h, s g], with the pair."""
    c = np.asarray(c, dtype=float)
    n = len(group)
    if c.shape != (n, n):
        raise SpaceMismatchError("cocycle table must be |G| x |G|")
    worst, wg, wh = 0.0, 0, 0
    for g in range(n):
        for h in range(n):
            lhs = c[group.table[g, h]]
            rhs = c[g, group.table[h]] + c[h, group.table[:, g]]
            defect = float(np.abs(lhs - rhs).max())
            if defect > worst:
                worst, wg, wh = defect, g, h
    return worst, wg, wh


def translation_cocycle_defect(group: CayleyGroup, c: np.ndarray) -> float:
    return translation_law_worst_pair(group, c)[0]
