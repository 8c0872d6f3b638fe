"""Single-qubit circuit, the controlled super-operator and the hierarchical family.

Basis convention: the newest qubit (qubit ``N``) is the leftmost tensor factor,
so computational index ``sum_j n_j 2**(j-1)`` has ``n_N`` as its most
significant bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .core import TWO_PI, require_unitary, unitary_power
from .errors import DimensionOverflow

DEFAULT_MAX_QUBITS = 8

KET_Y = np.array([1.0, -1.0j]) / np.sqrt(2.0)
PAULI_Z = np.diag([1.0 + 0j, -1.0])
PAULI_Y = np.array([[0, -1j], [1j, 0]])


@dataclass(frozen=True)
class QubitAxes:
    """The control axis ``|y>`` and the reflection ``Z`` used by every gate.

    The default is ``|y> = (|0> - i|1>)/sqrt(2)`` and ``Z = diag(1, -1)``.
    Other choices deform the loop without changing the construction.
    """

    y: np.ndarray = field(default_factory=lambda: KET_Y.copy())
    z: np.ndarray = field(default_factory=lambda: PAULI_Z.copy())

    def __post_init__(self):
        y = np.asarray(self.y, dtype=complex).reshape(2)
        nrm = np.linalg.norm(y)
        if not np.isclose(nrm, 1.0, atol=1e-12):
            raise ValueError(f"|y> must be normalized, got norm {nrm}")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", require_unitary(self.z))

    @cached_property
    def projector(self) -> np.ndarray:
        return np.outer(self.y, self.y.conj())

    @classmethod
    def from_pair(cls, a: Sequence[complex], b: Sequence[complex]) -> "QubitAxes":
        """Axes built from an orthonormal pair ``(a, b)`` playing ``(|0>, |1>)``.

        ``Z = |a><a| - |b><b|`` and ``|y> = (a - i b)/sqrt(2)``.
        """
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if abs(np.vdot(a, b)) > 1e-12 or not np.isclose(np.linalg.norm(a), 1) \
                or not np.isclose(np.linalg.norm(b), 1):
            raise ValueError("(a, b) must be orthonormal")
        z = np.outer(a, a.conj()) - np.outer(b, b.conj())
        return cls(y=(a - 1j * b) / np.sqrt(2.0), z=z)

    @classmethod
    def perturbed(cls, angle_y: float, angle_z: float, axis_y=(1, 0, 0),
                  axis_z=(0, 0, 1)) -> "QubitAxes":
        """Default axes with ``|y>`` and ``Z`` rotated independently.

        Each rotation is ``exp(-i angle n.sigma / 2)`` about the given axis.
        """
        return cls(y=_rotation(angle_y, axis_y) @ KET_Y,
                   z=_conjugate(PAULI_Z, _rotation(angle_z, axis_z)))

    @property
    def y_reflection(self) -> np.ndarray:
        """``1 - 2|y><y|``, the replacement for ``Z`` on the crossing path."""
        return np.eye(2) - 2 * self.projector


DEFAULT_AXES = QubitAxes()


def _rotation(angle: float, axis) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    gen = n[0] * sx + n[1] * PAULI_Y + n[2] * PAULI_Z
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * gen


def _conjugate(A, R):
    return R @ A @ R.conj().T


@dataclass(frozen=True)
class CircuitParams:
    """The integer sequence ``p_1 ... p_N`` that defines the hierarchy."""

    p: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        if len(p) < 1:
            raise ValueError("need at least one qubit")
        object.__setattr__(self, "p", p)

    @classmethod
    def of(cls, *p: int) -> "CircuitParams":
        return cls(tuple(p))

    @property
    def N(self) -> int:
        return len(self.p)

    @property
    def dim(self) -> int:
        return 2 ** self.N

    @property
    def degenerate_spectrum(self) -> bool:
        return any(pj % 2 == 0 for pj in self.p[1:])

    @property
    def all_odd(self) -> bool:
        return all(pj % 2 == 1 for pj in self.p)

    @property
    def single_cycle(self) -> bool:
        return self.slope % 2 == 1

    @property
    def slope(self) -> int:
        d = 1
        for pj in self.p:
            d *= pj
        return d

    def truncated(self, n: int) -> "CircuitParams":
        return CircuitParams(self.p[:n])


@dataclass(frozen=True)
class CycleSpec:
    """Uniform grid ``lambda_k = 2 pi k / steps`` for ``k = 0 .. steps``."""

    steps: int = 1024

    def __post_init__(self):
        if int(self.steps) < 2:
            raise ValueError("steps must be >= 2")

    @property
    def grid(self) -> np.ndarray:
        return TWO_PI * np.arange(self.steps + 1) / self.steps


def build_u(lam: float, p: int, axes: QubitAxes = DEFAULT_AXES) -> np.ndarray:
    """Single-qubit circuit ``[e^{i(p-1)lam}(1-P_y) + e^{i lam} P_y] Z``."""
    P = axes.projector
    phase = np.exp(1j * (p - 1) * lam) * (np.eye(2) - P) + np.exp(1j * lam) * P
    return phase @ axes.z


def build_uY(lam: float, p: int, axes: QubitAxes = DEFAULT_AXES) -> np.ndarray:
    """The single-qubit circuit with ``Z`` replaced by ``1 - 2|y><y|``."""
    P = axes.projector
    phase = np.exp(1j * (p - 1) * lam) * (np.eye(2) - P) + np.exp(1j * lam) * P
    return phase @ axes.y_reflection


def _kron2(a: np.ndarray, B: np.ndarray) -> np.ndarray:
    # np.kron for a 2x2 left factor, without its per-call overhead
    n = B.shape[0]
    return (a[:, None, :, None] * B[None, :, None, :]).reshape(2 * n, 2 * n)


def _controlled(U: np.ndarray, p: int, axes: QubitAxes) -> np.ndarray:
    P = axes.projector
    return _kron2(np.eye(2) - P, unitary_power(U, p - 1)) + _kron2(P, U)


def controlled_gate(U: np.ndarray, p: int, axes: QubitAxes = DEFAULT_AXES) -> np.ndarray:
    """``(1 - P_y) (x) U^{p-1} + P_y (x) U`` with the control as the left factor."""
    return _controlled(require_unitary(U), p, axes)


def _apply_d(U: np.ndarray, p: int, axes: QubitAxes) -> np.ndarray:
    C = _controlled(U, p, axes)
    # right-multiplying by (Z (x) 1) mixes the two column blocks
    n = U.shape[0]
    z = axes.z
    left, right = C[:, :n], C[:, n:]
    return np.hstack([left * z[0, 0] + right * z[1, 0], left * z[0, 1] + right * z[1, 1]])


def apply_d(U: np.ndarray, p: int, axes: QubitAxes = DEFAULT_AXES) -> np.ndarray:
    """The super-operator ``D_p[U] = C_p[U] (Z (x) 1)``."""
    return _apply_d(require_unitary(U), p, axes)


def build_UN(lam: float, params: CircuitParams, axes: QubitAxes = DEFAULT_AXES,
             max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """The ``2**N`` dimensional hierarchical circuit at parameter ``lam``."""
    if params.N > max_qubits:
        raise DimensionOverflow(f"N = {params.N} exceeds the numeric cap {max_qubits}")
    U = build_u(lam, params.p[0], axes)
    for pj in params.p[1:]:
        U = _apply_d(U, pj, axes)
    return U


def family_UN(params: CircuitParams, axes: QubitAxes = DEFAULT_AXES,
              max_qubits: int = DEFAULT_MAX_QUBITS) -> Callable[[float], np.ndarray]:
    """``lam -> build_UN(lam, params)`` with the cap checked once up front."""
    if params.N > max_qubits:
        raise DimensionOverflow(f"N = {params.N} exceeds the numeric cap {max_qubits}")
    return lambda lam: build_UN(lam, params, axes, max_qubits)


def family_u(p: int, axes: QubitAxes = DEFAULT_AXES) -> Callable[[float], np.ndarray]:
    return lambda lam: build_u(lam, p, axes)


def family_uY(p: int, axes: QubitAxes = DEFAULT_AXES) -> Callable[[float], np.ndarray]:
    return lambda lam: build_uY(lam, p, axes)


def uY_crossings(p: int) -> list[float]:
    """Parameters in ``[0, 2pi)`` where the two eigenvalues of ``build_uY`` meet.

    The eigenvalues are ``e^{i(p-1)lam}`` and ``-e^{i lam}``; they coincide
    when ``(p - 2) lam = pi (mod 2pi)``. For ``p = 2`` they never do.
    """
    k = p - 2
    if k == 0:
        return []
    n = abs(k)
    sols = [((2 * j + 1) * np.pi / n) % TWO_PI for j in range(n)]
    return sorted(sols)
