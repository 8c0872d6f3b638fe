"""Decoding ``m_N`` back into quantum numbers is a subset-sum problem.

``m_N = sum_j w_j n_j`` with ``w_j = (p_{j+1} ... p_N) 2**(j-1)`` and
``w_N = 2**(N-1)``. Weight lists are ordered ``[w_1, ..., w_N]``; quantum
numbers stay most-significant first, ``(n_N, ..., n_1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .circuits import CircuitParams
from .core import TWO_PI
from .errors import DegenerateSpectrum, InstanceTooLarge, NonPositiveParams
from .spectral import QuantumNumbers

BRUTE_MAX_ITEMS = 24
DP_MAX_CELLS = 2 ** 30


def weights(params: CircuitParams) -> list[int]:
    """``[w_1, ..., w_N]``; every ``p_j`` must be positive."""
    if any(pj <= 0 for pj in params.p):
        raise NonPositiveParams(f"p = {list(params.p)}: weights need every p_j > 0")
    N = params.N
    out = []
    for j in range(1, N + 1):
        w = 2 ** (j - 1)
        for k in range(j + 1, N + 1):
            w *= params.p[k - 1]
        out.append(w)
    return out


@dataclass(frozen=True)
class SubsetSumInstance:
    weights: tuple[int, ...]
    target: int
    modulus: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if self.target < 0:
            raise ValueError("target must be nonnegative")

    @classmethod
    def from_params(cls, params: CircuitParams, target: int,
                    modular: bool = False) -> "SubsetSumInstance":
        return cls(tuple(weights(params)), target, params.dim if modular else None)


def _subset_sums(ws: Sequence[int]) -> np.ndarray:
    """Sum of every subset; entry ``mask`` has item ``i`` iff bit ``i`` of ``mask`` is set."""
    dtype = np.int64 if sum(ws) < 2 ** 62 else object
    sums = np.zeros(1, dtype=dtype)
    for w in ws:
        sums = np.concatenate([sums, sums + w])
    return sums


def _mask_to_subset(mask: int, size: int) -> tuple[int, ...]:
    return tuple(i for i in range(size) if mask >> i & 1)


def _brute(inst: SubsetSumInstance) -> list[tuple[int, ...]]:
    if len(inst.weights) > BRUTE_MAX_ITEMS:
        raise InstanceTooLarge(f"brute force is limited to {BRUTE_MAX_ITEMS} items")
    sums = _subset_sums(inst.weights)
    if inst.modulus is None:
        hits = np.flatnonzero(sums == inst.target)
    else:
        hits = np.flatnonzero(sums % inst.modulus == inst.target % inst.modulus)
    return [_mask_to_subset(int(m), len(inst.weights)) for m in hits]


@lru_cache(maxsize=16)
def _reach_table(ws: tuple[int, ...]) -> tuple[bytes, ...]:
    """Row ``i`` is a little-endian bitset of the sums reachable with the first ``i`` items."""
    total = sum(ws)
    if (len(ws) + 1) * (total + 1) > DP_MAX_CELLS:
        raise InstanceTooLarge(f"DP table of {(len(ws) + 1) * (total + 1)} cells exceeds the guard")
    nbytes = total // 8 + 1
    reach = 1
    rows = [reach.to_bytes(nbytes, "little")]
    for w in ws:
        reach |= reach << w
        rows.append(reach.to_bytes(nbytes, "little"))
    return tuple(rows)


def _bit(row: bytes, t: int) -> bool:
    return bool(row[t >> 3] >> (t & 7) & 1)


@lru_cache(maxsize=16)
def _reachable(ws: tuple[int, ...]) -> np.ndarray:
    row = np.frombuffer(_reach_table(ws)[-1], dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(row, bitorder="little"))


def _dp_one(ws: tuple[int, ...], target: int) -> Optional[tuple[int, ...]]:
    table = _reach_table(ws)
    if target > sum(ws) or not _bit(table[-1], target):
        return None
    chosen = []
    t = target
    for i in range(len(ws), 0, -1):
        if not _bit(table[i - 1], t):
            chosen.append(i - 1)
            t -= ws[i - 1]
    return tuple(sorted(chosen))


def _dp(inst: SubsetSumInstance) -> list[tuple[int, ...]]:
    if inst.modulus is None:
        sol = _dp_one(inst.weights, inst.target)
        return [] if sol is None else [sol]
    # targets t = r, r + M, r + 2M, ... that are reachable at all
    sums = _reachable(inst.weights)
    hits = sums[sums % inst.modulus == inst.target % inst.modulus]
    return [_dp_one(inst.weights, int(t)) for t in hits]


def solve_subset_sum(inst: SubsetSumInstance, method: str = "dp") -> list[tuple[int, ...]]:
    """Subsets (as sorted index tuples into ``inst.weights``) hitting the target.

    ``brute`` lists every solution. ``dp`` returns one solution per reachable
    sum (so at most one without a modulus) from a reachability table.
    An empty list means infeasible.
    """
    if method == "brute":
        return _brute(inst)
    if method == "dp":
        return _dp(inst)
    raise ValueError(f"unknown method {method!r}")


def subset_to_bits(subset: Sequence[int], N: int) -> QuantumNumbers:
    """Weight indices ``j-1`` to quantum numbers ``(n_N, ..., n_1)``."""
    bits = [0] * N
    for i in subset:
        bits[N - 1 - i] = 1
    return tuple(bits)


def decode(params: CircuitParams, m: int, modular: bool = False) -> list[QuantumNumbers]:
    """Every ``(n_N, ..., n_1)`` with ``sum_j w_j n_j = m`` (or ``= m mod 2**N``).

    Exhaustive; results are in computational-index order.
    """
    ws = weights(params)
    sums = _subset_sums(ws)
    if modular:
        hits = np.flatnonzero(sums % params.dim == m % params.dim)
    else:
        hits = np.flatnonzero(sums == m)
    out = [subset_to_bits(_mask_to_subset(int(mask), params.N), params.N) for mask in hits]
    return sorted(out)


def spectral_gap(params: CircuitParams) -> float:
    """Spacing ``2 pi / 2**N`` of the eigenangle ladder (independent of ``lam``)."""
    if params.degenerate_spectrum:
        raise DegenerateSpectrum(f"p = {list(params.p)}: the ladder has coincident rungs")
    return TWO_PI / params.dim


def adiabatic_time_scale(params: CircuitParams) -> float:
    """``1 / gap**2``, the usual adiabatic-runtime heuristic."""
    return 1.0 / spectral_gap(params) ** 2


def decode_table(params: CircuitParams) -> list[QuantumNumbers]:
    """``table[k]`` is the unique state with ``m_N = k mod 2**N`` (all ``p_j`` odd)."""
    table: list[Optional[QuantumNumbers]] = [None] * params.dim
    ws = weights(params)
    sums = _subset_sums(ws)
    for mask, total in enumerate(sums):
        k = int(total) % params.dim
        if table[k] is not None:
            raise DegenerateSpectrum(f"residue {k} has more than one decoding")
        table[k] = subset_to_bits(_mask_to_subset(mask, params.N), params.N)
    return table  # type: ignore[return-value]
