"""Dense unitary linear algebra and permutation utilities.

Matrices and state vectors are plain complex ``numpy`` arrays. Everything
here is pure: inputs are never mutated and results are read-only where that
is cheap to enforce.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import NoConvergence, NotUnitary

TWO_PI = 2.0 * np.pi

# Two eigenangles closer than this (circular distance) are treated as equal.
DEGENERACY_TOL = 1e-8


def unitarity_defect(U: np.ndarray) -> float:
    """Return ``max |U^dagger U - 1|`` entrywise."""
    U = np.asarray(U)
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


def is_unitary(U: np.ndarray, tol: float = 1e-10) -> bool:
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    return unitarity_defect(U) <= tol


def require_unitary(U: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise NotUnitary(f"expected a square matrix, got shape {U.shape}")
    defect = unitarity_defect(U)
    if defect > tol:
        raise NotUnitary(f"unitarity defect {defect:.3e} exceeds {tol:.1e}")
    return U


def unitary_power(U: np.ndarray, k: int) -> np.ndarray:
    """``U**k`` for any integer ``k``; negative powers go through ``U^dagger``."""
    k = int(k)
    if k < 0:
        return np.linalg.matrix_power(np.asarray(U).conj().T, -k)
    return np.linalg.matrix_power(np.asarray(U), k)


def circular_distance(a, b):
    """Distance between angles on the circle, in ``[0, pi]``."""
    d = np.mod(np.asarray(a) - np.asarray(b), TWO_PI)
    return np.minimum(d, TWO_PI - d)


def circular_gap(angles: Sequence[float]) -> float:
    """Smallest circular distance between any two angles (``inf`` for one)."""
    a = np.sort(np.mod(np.asarray(angles, dtype=float), TWO_PI))
    if a.size < 2:
        return float("inf")
    gaps = np.diff(np.append(a, a[0] + TWO_PI))
    return float(np.min(np.minimum(gaps, TWO_PI - gaps)))


@dataclass(frozen=True, eq=False)
class EigenFrame:
    """Eigenangles in ``[0, 2pi)`` with matching normalized eigenvectors.

    ``vectors[:, k]`` belongs to ``angles[k]``. Angles are sorted ascending.
    """

    angles: np.ndarray
    vectors: np.ndarray
    tol: float
    residual: float
    degenerate: bool

    @property
    def dim(self) -> int:
        return self.angles.size

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    def reconstruct(self) -> np.ndarray:
        V = self.vectors
        return (V * self.eigenvalues) @ V.conj().T

    def min_gap(self) -> float:
        return circular_gap(self.angles)


def eig_unitary(U: np.ndarray, tol: float = 1e-10) -> EigenFrame:
    """Diagonalize a unitary matrix.

    Uses the complex Schur form: for a normal matrix the triangular factor is
    diagonal, so the Schur vectors are an orthonormal eigenbasis even when
    eigenvalues (nearly) coincide.

    Raises
    ------
    NotUnitary
        If ``U`` fails the unitarity check at ``tol``.
    NoConvergence
        If an eigen-residual exceeds ``tol``.
    """
    U = require_unitary(U, tol)
    T, Q = scipy.linalg.schur(U, output="complex")
    lam = np.diag(T)
    angles = np.mod(np.angle(lam), TWO_PI)
    # angle() can land exactly on 2pi after the mod for tiny negative inputs
    angles[angles >= TWO_PI] -= TWO_PI
    order = np.argsort(angles, kind="stable")
    angles = angles[order]
    Q = Q[:, order]
    Q = Q / np.linalg.norm(Q, axis=0)
    residual = float(np.max(np.linalg.norm(U @ Q - Q * np.exp(1j * angles), axis=0)))
    if residual > tol:
        raise NoConvergence(f"eigen-residual {residual:.3e} exceeds {tol:.1e}", residual)
    angles.setflags(write=False)
    Q.setflags(write=False)
    return EigenFrame(
        angles=angles,
        vectors=Q,
        tol=tol,
        residual=residual,
        degenerate=circular_gap(angles) < DEGENERACY_TOL,
    )


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{0, ..., size-1}``; ``image[k]`` is the successor of ``k``."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation: {image}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)))

    @classmethod
    def shift(cls, size: int, step: int) -> "Permutation":
        return cls(tuple((k + step) % size for k in range(size)))

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, k: int) -> int:
        return self.image[k]

    def __len__(self) -> int:
        return len(self.image)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for k, j in enumerate(self.image):
            inv[j] = k
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``(self o other)(k) = self(other(k))``."""
        return Permutation(tuple(self.image[j] for j in other.image))

    def matrix(self) -> np.ndarray:
        """Permutation matrix with ``P[image[k], k] = 1``."""
        P = np.zeros((self.size, self.size), dtype=int)
        P[list(self.image), list(range(self.size))] = 1
        return P

    def cycles(self) -> list[list[int]]:
        return cycle_decompose(self)


def cycle_decompose(p: Permutation) -> list[list[int]]:
    """Disjoint cycles of ``p``, each starting at its smallest element, sorted."""
    seen = [False] * p.size
    cycles = []
    for start in range(p.size):
        if seen[start]:
            continue
        cycle = []
        k = start
        while not seen[k]:
            seen[k] = True
            cycle.append(k)
            k = p.image[k]
        cycles.append(cycle)
    return cycles
