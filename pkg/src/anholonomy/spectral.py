"""Exact spectra, quantum-number bookkeeping and the s/r anholonomy integers.

Quantum numbers are tuples of bits ordered most-significant first,
``(n_N, ..., n_1)``. Their computational index is ``int("n_N...n_1", 2)``,
which is also the row of the corresponding basis state in ``build_UN``.
All integer arithmetic uses Python ints, so nothing overflows.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence

import numpy as np

from .circuits import CircuitParams
from .core import TWO_PI, Permutation
from .errors import DegenerateSpectrum, FamilyMismatch

QuantumNumbers = tuple[int, ...]


def _check_bits(params: CircuitParams, n: Sequence[int]) -> QuantumNumbers:
    n = tuple(int(b) for b in n)
    if len(n) != params.N:
        raise ValueError(f"expected {params.N} quantum numbers, got {len(n)}")
    if any(b not in (0, 1) for b in n):
        raise ValueError(f"quantum numbers must be 0 or 1: {n}")
    return n


def bits_to_index(n: Sequence[int]) -> int:
    idx = 0
    for b in n:
        idx = 2 * idx + int(b)
    return idx


def index_to_bits(index: int, N: int) -> QuantumNumbers:
    return tuple((index >> (N - 1 - k)) & 1 for k in range(N))


def bits_str(n: Sequence[int]) -> str:
    return "".join(str(b) for b in n)


def all_states(N: int) -> Iterator[QuantumNumbers]:
    """Every ``(n_N, ..., n_1)`` in computational-index order."""
    return product((0, 1), repeat=N)


def slope(params: CircuitParams) -> int:
    """``d_N``, the product of all ``p_j``."""
    return params.slope


def principal_number(params: CircuitParams, n: Sequence[int]) -> int:
    """``m_N`` from the recursion ``m_j = 2**(j-1) n_j + p_j m_{j-1}``, ``m_1 = n_1``.

    Not reduced modulo ``2**N``.
    """
    n = _check_bits(params, n)
    bits = n[::-1]  # bits[j-1] = n_j
    m = bits[0]
    for j in range(2, params.N + 1):
        m = 2 ** (j - 1) * bits[j - 1] + params.p[j - 1] * m
    return m


def principal_numbers(params: CircuitParams) -> list[int]:
    """``m_N`` for every state, indexed by computational index."""
    return [principal_number(params, n) for n in all_states(params.N)]


def is_bijective(params: CircuitParams) -> bool:
    """Whether ``n -> m_N mod 2**N`` is one-to-one, checked by enumeration."""
    residues = {m % params.dim for m in principal_numbers(params)}
    return len(residues) == params.dim


def eigenangle_N(params: CircuitParams, n: Sequence[int], lam: float) -> float:
    """Unreduced eigenangle ``(2 pi m_N + d_N lam) / 2**N``."""
    m = principal_number(params, n)
    return (TWO_PI * m + params.slope * lam) / params.dim


def _eigenangle_prefix(params: CircuitParams, n_low: Sequence[int], lam: float) -> float:
    # eigenangle of the (len(n_low))-qubit truncation; n_low is MSB first
    if len(n_low) == 0:
        return lam
    return eigenangle_N(params.truncated(len(n_low)), n_low, lam)


def qubit_eigenvector(n: int, lam: float, p: int) -> np.ndarray:
    """Parallel-transported eigenvector of ``build_u(lam, p)`` for eigenangle ``n pi + p lam/2``."""
    c = np.cos((2 - p) * lam / 4)
    s = np.sin((2 - p) * lam / 4)
    if n == 0:
        return np.array([c, s], dtype=complex)
    return np.array([-s, c], dtype=complex)


def qubit_eigenangle(n: int, lam: float, p: int) -> float:
    return n * np.pi + p * lam / 2


def eigenvector_N(params: CircuitParams, n: Sequence[int], lam: float) -> np.ndarray:
    """Product eigenvector; qubit ``j`` sees the eigenangle of the first ``j-1`` qubits."""
    n = _check_bits(params, n)
    N = params.N
    vec = np.ones(1, dtype=complex)
    for j in range(1, N + 1):
        low = n[N - j + 1:]  # (n_{j-1}, ..., n_1)
        arg = _eigenangle_prefix(params, low, lam)
        vec = np.kron(qubit_eigenvector(n[N - j], arg, params.p[j - 1]), vec)
    return vec


def eigenframe_N(params: CircuitParams, lam: float) -> np.ndarray:
    """Matrix whose column ``k`` is ``eigenvector_N`` of the state with index ``k``."""
    return np.column_stack([eigenvector_N(params, n, lam) for n in all_states(params.N)])


def sr_single(n: int, p: int) -> tuple[int, int]:
    """``s = (n + p) mod 2`` and ``r = floor((n + p) / 2)``."""
    return (n + p) % 2, (n + p) // 2


def sr_levels(params: CircuitParams, n: Sequence[int]) -> tuple[QuantumNumbers, list[int]]:
    """Successor bits and ``[r^(1), ..., r^(N)]`` from the level recursion."""
    n = _check_bits(params, n)
    bits = n[::-1]
    s_bits = []
    rs = []
    carry = None
    for j in range(1, params.N + 1):
        drive = params.p[j - 1] if carry is None else params.p[j - 1] * carry
        s_j, carry = sr_single(bits[j - 1], drive)
        s_bits.append(s_j)
        rs.append(carry)
    return tuple(s_bits[::-1]), rs


def sr_full(params: CircuitParams, n: Sequence[int]) -> tuple[QuantumNumbers, int]:
    """Successor quantum numbers after one cycle and the winding integer ``r^(N)``."""
    s, rs = sr_levels(params, n)
    return s, rs[-1]


@dataclass(frozen=True)
class AnholonomyData:
    """Permutation of eigenstates induced by one cycle, plus the winding integers.

    ``m_perm`` acts on ``m_N mod 2**N`` and always exists. ``n_perm`` acts on
    computational indices and is ``None`` when the two labelings are not in
    bijection. ``r`` is indexed by computational index.
    """

    params: CircuitParams
    m_perm: Permutation
    n_perm: Optional[Permutation]
    r: tuple[int, ...]

    @property
    def cycles(self) -> list[list[int]]:
        return self.m_perm.cycles()


def permutation_matrix(params: CircuitParams, representation: str = "m") -> AnholonomyData:
    """The cycle permutation, as an m-shift by ``d_N`` and (when valid) over ``n``.

    Raises ``DegenerateSpectrum`` if ``representation == "n"`` and some
    ``p_j`` with ``j >= 2`` is even.
    """
    if representation not in ("m", "n"):
        raise ValueError(f"unknown representation {representation!r}")
    m_perm = Permutation.shift(params.dim, params.slope)
    succ = []
    rs = []
    for n in all_states(params.N):
        s, r = sr_full(params, n)
        succ.append(bits_to_index(s))
        rs.append(r)
    n_perm = None
    if params.degenerate_spectrum:
        if representation == "n":
            raise DegenerateSpectrum(
                f"p = {list(params.p)}: an even p_j (j >= 2) breaks the n <-> m bijection")
    else:
        n_perm = Permutation(tuple(succ))
    return AnholonomyData(params=params, m_perm=m_perm, n_perm=n_perm, r=tuple(rs))


def itinerary(params: CircuitParams, start: Sequence[int], count: int) -> list[QuantumNumbers]:
    """``start`` followed by ``count`` successive images under one cycle."""
    if params.degenerate_spectrum:
        raise DegenerateSpectrum(
            f"p = {list(params.p)}: itineraries need all p_j (j >= 2) odd")
    if count < 1:
        raise ValueError("count must be positive")
    state = _check_bits(params, start)
    out = [state]
    for _ in range(count):
        state, _ = sr_full(params, state)
        out.append(state)
    return out


# Closed forms for the three worked parameter families. These never call the
# recursion above; they exist to be compared against it.

def _prod(bits: dict[int, int], hi: int, lo: int) -> int:
    """``n_hi ... n_lo`` with the empty product (``hi < lo``) equal to 1."""
    out = 1
    for j in range(lo, hi + 1):
        out *= bits[j]
    return out


def _family_params_ok(params: CircuitParams, family: str, J: int, K: int) -> bool:
    p = params.p
    if family == "simplest":
        return all(x == 1 for x in p)
    if family == "even_p1":
        return p[0] == 2 and all(x == 1 for x in p[1:])
    if family == "impurity":
        if J < 1 or K < 1:
            return False
        return all(x == (1 + 2 ** K if j == J else 1) for j, x in enumerate(p, start=1))
    raise FamilyMismatch(f"unknown family {family!r}")


def _cf_simplest(b: dict[int, int], N: int) -> tuple[list[int], int]:
    s = [b[j] ^ _prod(b, j - 1, 1) for j in range(1, N + 1)]
    return s, _prod(b, N, 1)


def _cf_even_p1(b: dict[int, int], N: int) -> tuple[list[int], int]:
    s = [b[1]]
    for j in range(2, N + 1):
        s.append(b[j] ^ _prod(b, j - 1, 2))
    r = 1 if N == 1 else _prod(b, N, 2)
    return s, r


def _cf_impurity(b: dict[int, int], N: int, J: int, K: int) -> tuple[list[int], int]:
    def t():
        return b[J + K] + (1 - b[J + K]) * _prod(b, J + K - 1, J)

    def s_top(j):
        if j < J + K:
            return b[j] ^ _prod(b, j - 1, 1)
        if j == J + K:
            flip = int(_prod(b, J + K - 1, J) == 0 and _prod(b, J - 1, 1) == 1)
            return b[j] ^ flip
        return b[j] ^ (_prod(b, j - 1, J + K + 1) * t() * _prod(b, J - 1, 1))

    s = [s_top(j) for j in range(1, N + 1)]
    if N < J:
        r = _prod(b, N, 1)
    elif N < J + K:
        r = (_prod(b, N, J) + 2 ** (K - (N - J) - 1)) * _prod(b, J - 1, 1)
    else:
        r = _prod(b, N, J + K + 1) * t() * _prod(b, J - 1, 1)
    return s, r


def closed_form_sr(params: CircuitParams, n: Sequence[int], family: str,
                   J: int = 1, K: int = 1) -> tuple[QuantumNumbers, int]:
    """Explicit ``(s, r)`` for ``family`` in ``{"simplest", "even_p1", "impurity"}``.

    ``impurity`` means ``p_J = 1 + 2**K`` and every other ``p_j = 1``.
    Raises ``FamilyMismatch`` if ``params`` is not a member of the family.
    """
    if not _family_params_ok(params, family, J, K):
        raise FamilyMismatch(f"p = {list(params.p)} is not in family {family!r}"
                             + (f" (J={J}, K={K})" if family == "impurity" else ""))
    n = _check_bits(params, n)
    N = params.N
    b = {j: n[N - j] for j in range(1, N + 1)}
    if family == "simplest":
        s, r = _cf_simplest(b, N)
    elif family == "even_p1":
        s, r = _cf_even_p1(b, N)
    else:
        s, r = _cf_impurity(b, N, J, K)
    return tuple(s[::-1]), r
