"""Holonomy matrices, off-diagonal geometric phases and the winding number.

Two independent routes are provided throughout: closed-form integer
recursions for the hierarchical circuits (``holonomy_analytic``,
``sigma_N``, ``winding_number_analytic``) and generic numerics that only see
a callback ``lam -> U(lam)`` (``holonomy_numeric``,
``berry_phase_extended_cycle``, ``winding_number``). Numerics are used as
oracles for the closed forms and for families with no closed form.

Holonomy matrices of the hierarchical circuits are indexed in the
m-representation: row/column ``k`` is the eigenstate whose eigenangle at
``lam = 0`` is ``2 pi k / 2**N``, i.e. ``m_N = k (mod 2**N)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.optimize

from .circuits import CircuitParams, PAULI_Y, family_UN
from .core import TWO_PI, EigenFrame, Permutation, circular_gap, cycle_decompose, eig_unitary
from .errors import (
    DegeneracyOnPath,
    NotClosed,
    NotPeriodic,
    OddParamsRequired,
    QuadratureNotConverged,
    UnderResolved,
)
from .spectral import (
    all_states,
    bits_to_index,
    eigenframe_N,
    principal_numbers,
    sr_full,
    sr_levels,
    sr_single,
)

Family = Callable[[float], np.ndarray]

MATCH_THRESHOLD = 1.0 / np.sqrt(2.0)
PATH_GAP_TOL = 1e-6
PERIODICITY_TOL = 1e-10
TRANSPORT_GAUGE = "parallel-transport"


@dataclass(frozen=True, eq=False)
class HolonomyMatrix:
    """A monomial unitary ``M = S sigma``: permutation times diagonal phases."""

    entries: np.ndarray
    gauge_tag: str = ""

    def __post_init__(self):
        M = np.array(self.entries, dtype=complex)
        M.setflags(write=False)
        object.__setattr__(self, "entries", M)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def permutation(self, tol: float = 1e-8) -> Permutation:
        """Column ``n`` maps to the row holding its unimodular entry."""
        M = self.entries
        image = np.argmax(np.abs(M), axis=0)
        perm = Permutation(tuple(int(i) for i in image))
        self.check_monomial(tol)
        return perm

    def check_monomial(self, tol: float = 1e-8) -> None:
        M = np.abs(self.entries)
        big = M > 0.5
        if not (np.all(big.sum(axis=0) == 1) and np.all(big.sum(axis=1) == 1)):
            raise ValueError("holonomy matrix is not a permutation times a phase")
        if np.max(np.abs(M[big] - 1.0)) > tol or np.max(M[~big], initial=0.0) > tol:
            raise ValueError("holonomy entries deviate from the monomial pattern")

    def sigma(self) -> np.ndarray:
        """``sigma[n] = M[s(n), n]``."""
        image = np.argmax(np.abs(self.entries), axis=0)
        return self.entries[image, np.arange(self.dim)]

    def factor(self) -> tuple[Permutation, np.ndarray]:
        return self.permutation(), self.sigma()

    def cycles(self) -> list[list[int]]:
        return cycle_decompose(self.permutation())


@dataclass(frozen=True)
class HolonomyReport:
    """Gauge invariants of one cycle.

    ``sigma`` and ``gamma_per_cycle`` are empty when the spectrum is
    degenerate along the path.
    """

    p: tuple[int, ...]
    d_N: int
    permutation: Permutation
    sigma: tuple[complex, ...]
    cycles: tuple[tuple[int, ...], ...]
    gamma_per_cycle: tuple[float, ...]
    nu: int
    degenerate: bool

    @property
    def n(self) -> int:
        return len(self.p)


@dataclass(frozen=True, eq=False)
class SweepTrace:
    """Eigenframes along the loop and how consecutive frames were matched.

    ``matching[k][j]`` is the index, in frame ``k+1``, of the path that sits
    at index ``j`` in frame ``k``. ``phases[j]`` is the accumulated discrete
    Berry phase ``-sum arg <v_k|v_{k+1}>`` of tracked path ``j``.
    """

    lambdas: np.ndarray
    frames: list[EigenFrame]
    matching: list[np.ndarray]
    worst_overlap: float
    phases: np.ndarray = field(default_factory=lambda: np.zeros(0))


# ----------------------------------------------------------------------------
# closed forms

def holonomy_single(p: int) -> HolonomyMatrix:
    """``cos(pi(2-p)/2) - i Y sin(pi(2-p)/2)``, rounded to exact integers."""
    phi = np.pi * (2 - p) / 2
    M = np.cos(phi) * np.eye(2) - 1j * np.sin(phi) * PAULI_Y
    return HolonomyMatrix(np.round(M.real) + 0j, gauge_tag=TRANSPORT_GAUGE)


def sigma_N(params: CircuitParams, n: Sequence[int]) -> int:
    """``(-1) ** (r^(1) + ... + r^(N))`` for all-odd parameters."""
    _require_odd(params)
    _, rs = sr_levels(params, n)
    return -1 if sum(rs) % 2 else 1


def _require_odd(params: CircuitParams) -> None:
    if not params.all_odd:
        raise OddParamsRequired(f"p = {list(params.p)}: every p_j must be odd")


def m_order(params: CircuitParams) -> np.ndarray:
    """``m_order[idx]`` = ``m_N mod 2**N`` of the state with computational index ``idx``."""
    return np.array([m % params.dim for m in principal_numbers(params)])


def to_m_representation(M_n: np.ndarray, params: CircuitParams) -> np.ndarray:
    """Relabel rows and columns from computational index to ``m_N mod 2**N``."""
    order = m_order(params)
    if len(set(order.tolist())) != params.dim:
        raise ValueError("n -> m is not a bijection for these parameters")
    M = np.zeros_like(M_n)
    M[np.ix_(order, order)] = M_n
    return M


def holonomy_product_n(params: CircuitParams) -> np.ndarray:
    """Integer ``M`` in the n-representation from ``{S}_{s(n),n} = 1`` and ``sigma_N``."""
    _require_odd(params)
    M = np.zeros((params.dim, params.dim), dtype=int)
    for n in all_states(params.N):
        s, _ = sr_full(params, n)
        M[bits_to_index(s), bits_to_index(n)] = sigma_N(params, n)
    return M


def holonomy_recursion_n(params: CircuitParams) -> np.ndarray:
    """Integer ``M`` in the n-representation from the level-by-level element recursion.

    ``M^(N)[(n'_N, rest'), (n_N, rest)] = delta(n'_N, s(n_N, p_N r)) (-1)**r(n_N, p_N r)
    M^(N-1)[rest', rest]`` with ``r = r^(N-1)(rest)``.
    """
    _require_odd(params)
    M = holonomy_single(params.p[0]).entries.real.astype(int)
    for level in range(2, params.N + 1):
        sub = params.truncated(level - 1)
        p = params.p[level - 1]
        half = 2 ** (level - 1)
        r_prev = [sr_full(sub, rest)[1] for rest in all_states(level - 1)]
        new = np.zeros((2 * half, 2 * half), dtype=int)
        for n_top in (0, 1):
            for col in range(half):
                s_top, r_top = sr_single(n_top, p * r_prev[col])
                sign = -1 if r_top % 2 else 1
                new[s_top * half:(s_top + 1) * half, n_top * half + col] = sign * M[:, col]
        M = new
    return M


def holonomy_matrix_recursion(params: CircuitParams) -> np.ndarray:
    """Float ``M`` in the n-representation from the block recursion with ``Y`` and ``J_D``.

    Each level applies ``(1+Y)/2 (x) e^{i a J} M e^{-i a (J + d)} + (1-Y)/2 (x)
    (conjugate phases)`` with ``a = pi (2 - p_N) / 2**N`` and ``J`` the diagonal of
    unreduced ``m_{N-1}`` values. Used only as a cross-check of the integer routes.
    """
    _require_odd(params)
    M = holonomy_single(params.p[0]).entries
    plus = (np.eye(2) + PAULI_Y) / 2
    minus = (np.eye(2) - PAULI_Y) / 2
    for level in range(2, params.N + 1):
        sub = params.truncated(level - 1)
        J = np.array(principal_numbers(sub), dtype=float)
        a = np.pi * (2 - params.p[level - 1]) / 2 ** level
        d = sub.slope
        left = np.exp(1j * a * J)
        right = np.exp(-1j * a * (J + d))
        M = np.kron(plus, left[:, None] * M * right[None, :]) + \
            np.kron(minus, left.conj()[:, None] * M * right.conj()[None, :])
    return M


def holonomy_analytic(params: CircuitParams) -> HolonomyMatrix:
    """Holonomy matrix of the hierarchical circuit in the m-representation.

    Assembled twice, from the permutation-times-sign product and from the
    element recursion; the two integer matrices must agree exactly.
    """
    _require_odd(params)
    a = holonomy_product_n(params)
    b = holonomy_recursion_n(params)
    if not np.array_equal(a, b):
        raise AssertionError("product and recursion assemblies disagree")
    return HolonomyMatrix(to_m_representation(a.astype(complex), params), gauge_tag=TRANSPORT_GAUGE)


def commutator_defect(params: CircuitParams) -> int:
    """Max ``|[J_D, M] - M (d_N - 2**N r)|`` entrywise, in exact integers (n-representation)."""
    _require_odd(params)
    M = holonomy_product_n(params).astype(object)
    J = np.array(principal_numbers(params), dtype=object)
    r = np.array([sr_full(params, n)[1] for n in all_states(params.N)], dtype=object)
    comm = J[:, None] * M - M * J[None, :]
    rhs = M * (params.slope - params.dim * r)[None, :]
    return int(max(abs(x) for x in (comm - rhs).ravel()))


def balance_defect(params: CircuitParams) -> int:
    """Max ``|m(s) - m(n) - d_N + 2**N r|`` over all states, exact."""
    ms = principal_numbers(params)
    worst = 0
    for idx, n in enumerate(all_states(params.N)):
        s, r = sr_full(params, n)
        worst = max(worst, abs(ms[bits_to_index(s)] - ms[idx] - params.slope + params.dim * r))
    return worst


def gauge_connection(params: CircuitParams, lam: float, h: float = 1e-5) -> np.ndarray:
    """``A = F^dagger i dF/dlam`` for the closed-form eigenvectors, central differences.

    Indexed by computational index.
    """
    F = eigenframe_N(params, lam)
    dF = (eigenframe_N(params, lam + h) - eigenframe_N(params, lam - h)) / (2 * h)
    return F.conj().T @ (1j * dF)


# ----------------------------------------------------------------------------
# gauge structure

def gauge_transform(M: HolonomyMatrix, phases: Sequence[float]) -> HolonomyMatrix:
    """``G^dagger M G`` with ``G = diag(exp(i phases))``."""
    g = np.exp(1j * np.asarray(phases, dtype=float))
    if g.size != M.dim:
        raise ValueError(f"need {M.dim} phases, got {g.size}")
    return HolonomyMatrix(g.conj()[:, None] * M.entries * g[None, :], gauge_tag=M.gauge_tag + "+G")


def _wrap(angle: float) -> float:
    a = float(np.mod(angle, TWO_PI))
    return 0.0 if a >= TWO_PI else a


def gamma_from_matrix(M: HolonomyMatrix) -> list[float]:
    """Off-diagonal geometric phase of each cycle block, in ``[0, 2pi)``."""
    sig = M.sigma()
    return [_wrap(np.angle(np.prod(sig[c]))) for c in M.cycles()]


def gamma(target) -> list[float]:
    """Per-block phase for a ``HolonomyMatrix`` or for all-odd ``CircuitParams``.

    For parameters the blocks come from the exact signs, so the result is
    exactly ``[pi]`` whenever the single cycle's sign product is ``-1``.
    """
    if isinstance(target, HolonomyMatrix):
        return gamma_from_matrix(target)
    params = target
    _require_odd(params)
    prod = 1
    for n in all_states(params.N):
        prod *= sigma_N(params, n)
    return [np.pi if prod < 0 else 0.0]


def gamma_from_winding(params: CircuitParams) -> float:
    """``gamma`` from ``e^{i gamma} = (-1)**d_N``."""
    return np.pi if params.slope % 2 else 0.0


def canonical_gauge(M: HolonomyMatrix) -> tuple[np.ndarray, HolonomyMatrix]:
    """Diagonal ``U_d`` with ``U_d^dagger M U_d = S e^{i gamma_b / L_b}`` on each block.

    Along each cycle ``c_0 -> c_1 -> ...`` the ladder is ``U_d[c_0] = 1`` and
    ``U_d[c_{k+1}] = U_d[c_k] sigma[c_k] e^{-i gamma_b / L_b}``.
    """
    sig = M.sigma()
    perm = M.permutation()
    ud = np.ones(M.dim, dtype=complex)
    for cyc in M.cycles():
        L = len(cyc)
        g = _wrap(np.angle(np.prod(sig[cyc])))
        step = np.exp(-1j * g / L)
        for k in range(L - 1):
            ud[cyc[k + 1]] = ud[cyc[k]] * sig[cyc[k]] * step
    canon = HolonomyMatrix(ud.conj()[:, None] * M.entries * ud[None, :], gauge_tag="canonical")
    # the permutation must survive the conjugation
    assert canon.permutation() == perm
    return np.diag(ud), canon


# ----------------------------------------------------------------------------
# numerics

def _check_periodic(family: Family) -> None:
    dev = float(np.max(np.abs(family(TWO_PI) - family(0.0))))
    if dev > PERIODICITY_TOL:
        raise NotPeriodic(f"U(2pi) differs from U(0) by {dev:.3e}")


def _frames(family: Family, lambdas: np.ndarray) -> list[EigenFrame]:
    return [eig_unitary(family(lam)) for lam in lambdas]


def _check_path_gaps(frames: list[EigenFrame], lambdas: np.ndarray) -> None:
    gaps = np.array([f.min_gap() for f in frames])
    bad = np.flatnonzero(gaps <= PATH_GAP_TOL)
    if bad.size:
        lo = lambdas[max(bad[0] - 1, 0)]
        hi = lambdas[min(bad[-1] + 1, lambdas.size - 1)]
        raise DegeneracyOnPath(
            f"eigenangle gap {gaps[bad].min():.3e} on lambda in [{lo:.6g}, {hi:.6g}]", (lo, hi))


def _match(prev: np.ndarray, cur: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Assignment of columns of ``prev`` to columns of ``cur`` and their overlaps."""
    O = prev.conj().T @ cur
    absO = np.abs(O)
    idx = np.argmax(absO, axis=1)
    if np.unique(idx).size != idx.size:
        rows, idx = scipy.optimize.linear_sum_assignment(-absO)
    return idx, O[np.arange(O.shape[0]), idx]


def _align(frame: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Reorder and rephase ``frame`` so column ``k`` has real positive overlap with ``reference[:, k]``."""
    idx, ov = _match(reference, frame)
    if np.min(np.abs(ov)) < MATCH_THRESHOLD:
        raise ValueError("reference frame does not match the eigenbasis at lam = 0")
    return frame[:, idx] * (ov.conj() / np.abs(ov))[None, :]


def _transport(family: Family, steps: int, reference: Optional[np.ndarray]):
    lambdas = TWO_PI * np.arange(steps + 1) / steps
    frames = _frames(family, lambdas[:-1])
    frames.append(frames[0])
    _check_path_gaps(frames, lambdas)
    V0 = frames[0].vectors.copy()
    if reference is not None:
        V0 = _align(V0, np.asarray(reference, dtype=complex))
    V = V0
    matching = []
    phases = np.zeros(V0.shape[1])
    worst = 1.0
    for k in range(1, steps + 1):
        W = frames[k].vectors
        idx, ov = _match(V, W)
        worst = min(worst, float(np.min(np.abs(ov))))
        if worst < MATCH_THRESHOLD:
            return None, worst, (lambdas, frames, matching, phases)
        matching.append(idx)
        phases -= np.angle(ov)
        V = W[:, idx] * (ov.conj() / np.abs(ov))[None, :]
    return (V0, V), worst, (lambdas, frames, matching, phases)


def holonomy_numeric(family: Family, dim: Optional[int] = None, steps: int = 4096,
                     reference: Optional[np.ndarray] = None,
                     max_steps: int = 2 ** 16) -> tuple[HolonomyMatrix, SweepTrace]:
    """Holonomy matrix ``<n'(0)|n(2pi)>`` by discrete parallel transport.

    Frames are matched step to step by maximal overlap and each matched
    vector is rephased so the step overlap is real and positive. Columns are
    ordered by eigenangle at ``lam = 0`` unless ``reference`` (columns =
    vectors at ``lam = 0``) fixes both order and phases. If some overlap
    falls below ``1/sqrt(2)`` the step count is doubled, up to ``max_steps``.
    """
    _check_periodic(family)
    if dim is not None and family(0.0).shape != (dim, dim):
        raise ValueError(f"family does not produce {dim}x{dim} matrices")
    while True:
        ends, worst, (lambdas, frames, matching, phases) = _transport(family, steps, reference)
        if ends is not None:
            break
        if steps * 2 > max_steps:
            raise UnderResolved(f"overlap {worst:.3f} below 1/sqrt(2) at {steps} steps", worst)
        steps *= 2
    V0, V = ends
    M = HolonomyMatrix(V0.conj().T @ V, gauge_tag="numeric")
    trace = SweepTrace(lambdas=lambdas, frames=frames, matching=matching,
                       worst_overlap=worst, phases=phases)
    return M, trace


def holonomy_numeric_N(params: CircuitParams, steps: int = 4096, **kw) -> tuple[HolonomyMatrix, SweepTrace]:
    """Numeric holonomy of ``build_UN`` with the closed-form frame fixing the gauge at ``lam = 0``.

    The result is in the m-representation, so it is directly comparable to
    ``holonomy_analytic``.
    """
    F0 = eigenframe_N(params, 0.0)
    order = m_order(params)
    ref = np.zeros_like(F0)
    ref[:, order] = F0
    return holonomy_numeric(family_UN(params, **kw), params.dim, steps, reference=ref)


def berry_phase_extended_cycle(family: Family, dim: Optional[int] = None, steps: int = 1024,
                               start: int = 0, cycles: Optional[int] = None) -> float:
    """Berry phase of one eigenvector followed through repeated cycles until it closes.

    Returns ``-sum_k arg <v_k|v_{k+1}>`` over the closed loop, reduced to
    ``[0, 2pi)``. ``start`` indexes the eigenangle-sorted frame at ``lam = 0``.
    If ``cycles`` is given the path must close after exactly that many.
    """
    _check_periodic(family)
    lambdas = TWO_PI * np.arange(steps) / steps
    frames = _frames(family, lambdas)
    _check_path_gaps(frames + [frames[0]], np.append(lambdas, TWO_PI))
    n = frames[0].dim
    if dim is not None and n != dim:
        raise ValueError(f"family does not produce {dim}x{dim} matrices")
    limit = cycles if cycles is not None else n
    j = start
    total = 0.0
    for c in range(1, limit + 1):
        for k in range(steps):
            cur = frames[k].vectors[:, j]
            nxt = frames[(k + 1) % steps].vectors
            ov = cur.conj() @ nxt
            j_next = int(np.argmax(np.abs(ov)))
            if abs(ov[j_next]) < MATCH_THRESHOLD:
                raise UnderResolved(f"overlap {abs(ov[j_next]):.3f} below 1/sqrt(2)", abs(ov[j_next]))
            total -= np.angle(ov[j_next])
            j = j_next
        if j == start:
            if cycles is not None and c != cycles:
                raise NotClosed(f"path closed after {c} cycles, expected {cycles}")
            return _wrap(total)
    raise NotClosed(f"path did not return to eigenstate {start} within {limit} cycles")


def winding_quadrature(family: Family, steps: int = 2048, h: Optional[float] = None) -> float:
    """``(1/2 pi i) * integral Tr[U^-1 dU/dlam]`` by the periodic trapezoid rule.

    ``dU/dlam`` is a central difference with spacing ``h``. With the default
    spacing (one grid step) the neighbours are grid points and are reused.
    """
    lambdas = TWO_PI * np.arange(steps) / steps
    total = 0.0 + 0.0j
    if h is None:
        h = TWO_PI / steps
        Us = [family(lam) for lam in lambdas]
        for k in range(steps):
            dU = (Us[(k + 1) % steps] - Us[k - 1]) / (2 * h)
            total += np.trace(Us[k].conj().T @ dU)
    else:
        for lam in lambdas:
            dU = (family(lam + h) - family(lam - h)) / (2 * h)
            total += np.trace(family(lam).conj().T @ dU)
    return float((total * (TWO_PI / steps) / (2j * np.pi)).real)


def winding_number(family: Family, dim: Optional[int] = None, steps: int = 2048,
                   tol: float = 0.1) -> int:
    """Integer winding number; raises if the quadrature is not within ``tol`` of an integer."""
    _check_periodic(family)
    value = winding_quadrature(family, steps)
    nearest = int(round(value))
    if abs(value - nearest) > tol:
        raise QuadratureNotConverged(f"quadrature gave {value:.6f}", value)
    return nearest


def winding_number_analytic(params: CircuitParams) -> int:
    """``nu = d_N``. For all-odd parameters this also equals ``sum_n r^(N)(n)``."""
    return params.slope


def winding_sum_r(params: CircuitParams) -> int:
    return sum(sr_full(params, n)[1] for n in all_states(params.N))


def degeneracy_scan(family: Family, dim: Optional[int] = None, grid=256,
                    tol: float = PATH_GAP_TOL) -> list[tuple[tuple[float, float], float]]:
    """Windows of ``lam`` in ``[0, 2pi)`` where the circular eigenangle gap drops below ``tol``.

    ``grid`` is a step count or an explicit array of parameters. Local minima
    of the gap between grid points are refined with a bounded scalar search,
    so crossings that fall between grid points are still found. Returns
    ``((lam_lo, lam_hi), min_gap)`` per window.
    """
    lambdas = np.asarray(grid, dtype=float) if np.ndim(grid) else TWO_PI * np.arange(int(grid)) / int(grid)
    lambdas = np.sort(lambdas)

    def gap(lam):
        return circular_gap(np.angle(np.linalg.eigvals(family(lam))))

    gaps = np.array([gap(lam) for lam in lambdas])
    npts = lambdas.size
    below = gaps < tol
    refined = {}
    if npts >= 3:
        for k in range(npts):
            if below[k]:
                continue
            left, right = gaps[k - 1], gaps[(k + 1) % npts]
            if gaps[k] <= left and gaps[k] <= right:
                lo = lambdas[k - 1] if k > 0 else lambdas[-1] - TWO_PI
                hi = lambdas[k + 1] if k + 1 < npts else lambdas[0] + TWO_PI
                res = scipy.optimize.minimize_scalar(gap, bounds=(lo, hi), method="bounded",
                                                     options={"xatol": 1e-13})
                if res.fun < tol:
                    refined[k] = (float(np.mod(res.x, TWO_PI)), float(res.fun))
    windows = []
    k = 0
    while k < npts:
        if below[k]:
            j = k
            while j + 1 < npts and below[j + 1]:
                j += 1
            windows.append(((float(lambdas[k]), float(lambdas[j])), float(gaps[k:j + 1].min())))
            k = j + 1
        elif k in refined:
            lam, g = refined[k]
            windows.append(((lam, lam), g))
            k += 1
        else:
            k += 1
    # a window touching both ends of a periodic grid is one window
    if len(windows) > 1 and below[0] and below[-1]:
        (lo0, hi0), g0 = windows[0]
        (lo1, hi1), g1 = windows.pop()
        windows[0] = ((lo1, hi0), min(g0, g1))
    return windows


# ----------------------------------------------------------------------------
# reports

def invariants(params: CircuitParams, steps: int = 1024, max_qubits: int = 8) -> HolonomyReport:
    """All gauge invariants of one cycle of ``build_UN``.

    All-odd parameters use the exact closed forms. A nondegenerate spectrum
    with even ``p_1`` falls back to numeric transport. With a degenerate
    spectrum only the m-shift and ``nu`` are reported.
    """
    d = params.slope
    perm = Permutation.shift(params.dim, d)
    cycles = tuple(tuple(c) for c in perm.cycles())
    if params.degenerate_spectrum:
        return HolonomyReport(params.p, d, perm, (), cycles, (), d, True)
    if params.all_odd:
        M = holonomy_analytic(params)
    else:
        M, _ = holonomy_numeric_N(params, steps, max_qubits=max_qubits)
    if M.permutation() != perm:
        raise AssertionError("holonomy permutation disagrees with the m-shift")
    sig = tuple(complex(x) for x in M.sigma())
    gam = tuple(gamma_from_matrix(M))
    return HolonomyReport(params.p, d, perm, sig, cycles, gam, d, False)
