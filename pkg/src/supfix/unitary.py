"""Finite unitary matrix groups and their sup-norm model embedding.

A finite group G of d x d unitaries acts on the model space l-infinity
over a finite norming set Gamma of unit vectors, chosen here as the orbit
of the standard basis under G.  The embedding

    E(a)[i, :] = gamma_i^H a        (a any d x d matrix)

is injective (Gamma spans) and translates the two one-sided
multiplications into model-space operations:

    E(g a) = P_g E(a)      row permutation, gamma_{sigma_g(i)} = g^H gamma_i
    E(a g) = E(a) g        right matrix action, an isometry of each row

so matrix identities can be checked or solved entirely inside the model.
Realification helpers turn complex fibers into real ones of twice the
dimension, which is what the generic isometry machinery consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import GroupNotClosedError, SpaceMismatchError

_UNITARY_TOL = 1e-9


def _check_unitary(g: np.ndarray, tol: float = _UNITARY_TOL) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise SpaceMismatchError("group elements must be square matrices")
    if not np.allclose(g.conj().T @ g, np.eye(g.shape[0]), atol=tol):
        raise ValueError("matrix is not unitary")
    return g


@dataclass(frozen=True)
class UnitaryGroup:
    """Closed finite list of unitaries with generator words and parent links."""

    generators: np.ndarray  # (n_gen, d, d)
    elements: np.ndarray  # (n, d, d), identity first
    words: tuple[tuple[int, ...], ...]
    parents: tuple[tuple[int, int] | None, ...]  # (parent index, generator index)
    tol: float = 1e-9

    @property
    def d(self) -> int:
        return self.elements.shape[1]

    def __len__(self) -> int:
        return self.elements.shape[0]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple("e" if not w else "*".join(f"g{i}" for i in w) for w in self.words)

    def index_of(self, mat: np.ndarray) -> int:
        diffs = np.abs(self.elements - np.asarray(mat, dtype=complex)).max(axis=(1, 2))
        idx = int(np.argmin(diffs))
        if diffs[idx] > self.tol:
            raise KeyError("matrix is not an element of the group")
        return idx

    @cached_property
    def cayley(self) -> np.ndarray:
        """cayley[i, j] = index of elements[i] @ elements[j]."""
        n = len(self)
        table = np.empty((n, n), dtype=int)
        for i in range(n):
            for j in range(n):
                table[i, j] = self.index_of(self.elements[i] @ self.elements[j])
        return table

    @cached_property
    def inverse(self) -> np.ndarray:
        return np.array([self.index_of(g.conj().T) for g in self.elements])


def unitary_closure(
    generators: Sequence[np.ndarray], cap: int = 256, tol: float = 1e-9
) -> UnitaryGroup:
    gens = np.stack([_check_unitary(g) for g in generators])
    d = gens.shape[1]
    elements = [np.eye(d, dtype=complex)]
    words: list[tuple[int, ...]] = [()]
    parents: list[tuple[int, int] | None] = [None]

    def find(mat: np.ndarray) -> int | None:
        diffs = [np.abs(e - mat).max() for e in elements]
        idx = int(np.argmin(diffs))
        return idx if diffs[idx] <= tol else None

    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            for gi in range(gens.shape[0]):
                cand = elements[idx] @ gens[gi]
                if find(cand) is not None:
                    continue
                if len(elements) >= cap:
                    raise GroupNotClosedError(
                        f"unitary closure exceeded {cap} elements"
                    )
                elements.append(cand)
                words.append(words[idx] + (gi,))
                parents.append((idx, gi))
                nxt.append(len(elements) - 1)
        frontier = nxt
    return UnitaryGroup(gens, np.stack(elements), tuple(words), tuple(parents), tol)


@dataclass(frozen=True)
class NormingSet:
    """G-stable spanning set of unit vectors indexing the model fibers."""

    vectors: np.ndarray  # (size, d) complex, rows are the norming vectors
    tol: float = 1e-9

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    def index_of(self, v: np.ndarray) -> int:
        diffs = np.abs(self.vectors - v).max(axis=1)
        idx = int(np.argmin(diffs))
        if diffs[idx] > self.tol:
            raise KeyError("vector is not in the norming set")
        return idx


def basis_orbit_norming_set(group: UnitaryGroup, tol: float = 1e-9) -> NormingSet:
    """Orbit of the standard basis under the group, deduplicated.

    Seeding with the full basis guarantees the set spans C^d, and closing
    under every group element makes it exactly G-stable.
    """
    d = group.d
    vectors: list[np.ndarray] = []
    for j in range(d):
        for g in group.elements:
            v = g[:, j]  # g @ e_j
            if not any(np.abs(v - w).max() <= tol for w in vectors):
                vectors.append(v)
    return NormingSet(np.stack(vectors), tol)


def embed(norming: NormingSet, a: np.ndarray) -> np.ndarray:
    """E(a): row i is gamma_i^H a.  Shape (size, d)."""
    return norming.vectors.conj() @ np.asarray(a, dtype=complex)


def tilde_permutation(norming: NormingSet, g: np.ndarray) -> np.ndarray:
    """sigma with gamma_{sigma(i)} = g^H gamma_i, so E(g a) = E(a)[sigma]."""
    pulled = norming.vectors @ g.conj()  # row i is (g^H gamma_i)^T
    try:
        return np.array([norming.index_of(v) for v in pulled])
    except KeyError:
        raise SpaceMismatchError("norming set is not stable under the group") from None


def perm_matrix(sigma: np.ndarray) -> np.ndarray:
    """P with (P M)[i] = M[sigma(i)]."""
    return np.eye(sigma.shape[0])[sigma]


def realify_vector(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.concatenate([v.real, v.imag])


def derealify_vector(v: np.ndarray) -> np.ndarray:
    d = v.shape[0] // 2
    return v[:d] + 1j * v[d:]


def realify_matrix(b: np.ndarray) -> np.ndarray:
    """The real (2d, 2d) form acting on [Re; Im] stacks; orthogonal iff b is unitary."""
    b = np.asarray(b, dtype=complex)
    return np.block([[b.real, -b.imag], [b.imag, b.real]])
