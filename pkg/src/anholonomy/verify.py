"""Invariant checks run by ``anholonomy verify``.

Each check is cheap enough to run from the command line; the exhaustive
sweeps live in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import circuits, holonomy, spectral, subsetsum
from .circuits import CircuitParams
from .core import TWO_PI, circular_gap, eig_unitary, unitarity_defect
from .errors import AnholonomyError, FamilyMismatch


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _families(params: CircuitParams) -> Iterator[tuple[str, int, int]]:
    yield "simplest", 1, 1
    yield "even_p1", 1, 1
    for J, pj in enumerate(params.p, start=1):
        if pj > 1 and (pj - 1) & (pj - 2) == 0:
            yield "impurity", J, (pj - 1).bit_length() - 1


def _direct_UN(lam: float, params: CircuitParams) -> np.ndarray:
    # np.kron assembly, independent of the block-structured builder
    P = circuits.DEFAULT_AXES.projector
    Z = circuits.PAULI_Z
    U = circuits.build_u(lam, params.p[0])
    for pj in params.p[1:]:
        I = np.eye(U.shape[0])
        Upow = np.linalg.matrix_power(U if pj - 1 >= 0 else U.conj().T, abs(pj - 1))
        U = (np.kron(np.eye(2) - P, Upow) + np.kron(P, U)) @ np.kron(Z, I)
    return U


def run_checks(params: CircuitParams, steps: int = 1024, max_qubits: int = 8,
               seed: int = 0) -> list[CheckResult]:
    """Run every applicable check; exceptions become failed checks."""
    results: list[CheckResult] = []
    rng = np.random.default_rng(seed)
    numeric = params.N <= max_qubits

    def check(name: str, fn: Callable[[], tuple[bool, str]]):
        try:
            ok, detail = fn()
        except AnholonomyError as exc:
            ok, detail = False, f"{exc.code}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))

    lams = [0.0, 0.37, 2.1, 4.9]

    if numeric:
        def unitary_periodic():
            worst_u = max(unitarity_defect(circuits.build_UN(l, params, max_qubits=max_qubits)) for l in lams)
            worst_p = max(np.abs(circuits.build_UN(l + TWO_PI, params, max_qubits=max_qubits)
                                 - circuits.build_UN(l, params, max_qubits=max_qubits)).max() for l in lams)
            return worst_u <= 1e-10 and worst_p <= 1e-10, f"unitarity {worst_u:.2e}, periodicity {worst_p:.2e}"
        check("circuit unitary and 2pi-periodic", unitary_periodic)

        def recursion():
            dev = max(np.abs(circuits.build_UN(l, params, max_qubits=max_qubits) - _direct_UN(l, params)).max()
                      for l in lams)
            return dev <= 1e-10, f"max deviation {dev:.2e}"
        check("recursive build matches direct tensor assembly", recursion)

        def ladder():
            lam = 0.37
            frame = eig_unitary(circuits.build_UN(lam, params, max_qubits=max_qubits))
            exact = np.sort(np.mod([spectral.eigenangle_N(params, n, lam)
                                    for n in spectral.all_states(params.N)], TWO_PI))
            dev = float(np.max(np.abs(np.exp(1j * frame.angles) - np.exp(1j * exact))))
            return dev <= 1e-10, f"max deviation {dev:.2e}"
        check("numeric eigenangles match the exact ladder", ladder)

        def eigvecs():
            worst = 0.0
            for lam in lams:
                U = circuits.build_UN(lam, params, max_qubits=max_qubits)
                for n in spectral.all_states(params.N):
                    v = spectral.eigenvector_N(params, n, lam)
                    th = spectral.eigenangle_N(params, n, lam)
                    worst = max(worst, float(np.linalg.norm(U @ v - np.exp(1j * th) * v)))
            return worst <= 1e-10, f"max residual {worst:.2e}"
        check("closed-form eigenvectors solve the eigenproblem", eigvecs)

        def degeneracy():
            gap = min(circular_gap(eig_unitary(circuits.build_UN(l, params, max_qubits=max_qubits)).angles)
                      for l in lams)
            return (gap < 1e-8) == params.degenerate_spectrum, \
                f"min gap {gap:.3e}, expected degenerate={params.degenerate_spectrum}"
        check("degeneracy iff some p_j (j>=2) even", degeneracy)

    def balance():
        d = holonomy.balance_defect(params)
        return d == 0, f"max defect {d}"
    check("m balance m(s) = m(n) + d_N - 2^N r", balance)

    def bijection():
        b = spectral.is_bijective(params)
        return b == (not params.degenerate_spectrum), f"bijective={b}"
    check("n <-> m mod 2^N bijective iff no degeneracy", bijection)

    def sum_rule():
        s = holonomy.winding_sum_r(params)
        return s == params.slope, f"sum r = {s}, d_N = {params.slope}"
    check("sum rule sum_n r(n) = d_N", sum_rule)

    for family, J, K in _families(params):
        try:
            spectral.closed_form_sr(params, (0,) * params.N, family, J, K)
        except FamilyMismatch:
            continue

        def closed(family=family, J=J, K=K):
            bad = sum(spectral.closed_form_sr(params, n, family, J, K) != spectral.sr_full(params, n)
                      for n in spectral.all_states(params.N))
            return bad == 0, f"{bad} mismatches"
        check(f"closed form ({family}) equals recursion", closed)

    if not params.degenerate_spectrum:
        def perm_consistency():
            data = spectral.permutation_matrix(params, "n")
            order = holonomy.m_order(params)
            ok = all(order[data.n_perm(i)] == (order[i] + params.slope) % params.dim
                     for i in range(params.dim))
            return ok, "n-permutation maps to the m-shift"
        check("n-representation permutation equals m-shift", perm_consistency)

    if params.all_odd:
        M = holonomy.holonomy_analytic(params)

        def commutator():
            d = holonomy.commutator_defect(params)
            return d == 0, f"max defect {d}"
        check("commutator [J_D, M] = M (d_N - 2^N r)", commutator)

        def gamma_routes():
            g1 = holonomy.gamma(params)[0]
            g2 = holonomy.gamma_from_winding(params)
            ok = len(holonomy.gamma(params)) == 1 and abs(g1 - np.pi) < 1e-12 and abs(g2 - np.pi) < 1e-12
            return ok, f"det sigma -> {g1:.12f}, (-1)^d_N -> {g2:.12f}"
        check("gamma = pi from signs and from the winding number", gamma_routes)

        def covariance():
            cycles = M.cycles()
            base = [np.prod(M.sigma()[c]) for c in cycles]
            worst = 0.0
            for _ in range(100):
                G = holonomy.gauge_transform(M, rng.uniform(0, TWO_PI, M.dim))
                if G.cycles() != cycles:
                    return False, "cycle structure changed"
                worst = max(worst, max(abs(np.prod(G.sigma()[c]) - b) for c, b in zip(cycles, base)))
            return worst <= 1e-10, f"max change of sigma products {worst:.2e}"
        check("gauge covariance keeps S and gamma", covariance)

        def canonical():
            Ud, C = holonomy.canonical_gauge(M)
            L = M.dim
            target = M.permutation().matrix() * np.exp(1j * np.pi / L)
            dev = float(np.max(np.abs(C.entries - target)))
            return dev <= 1e-8, f"max deviation {dev:.2e}"
        check("canonical gauge M = S exp(i gamma / 2^N)", canonical)

        if numeric and params.N <= 4:
            def numeric_holonomy():
                Mn, _ = holonomy.holonomy_numeric_N(params, steps, max_qubits=max_qubits)
                dev = float(np.max(np.abs(Mn.entries - M.entries)))
                return dev <= 1e-6, f"max deviation {dev:.2e} at {steps} steps"
            check("numeric holonomy matches the closed form", numeric_holonomy)

            def berry():
                fam = circuits.family_UN(params, max_qubits=max_qubits)
                g = holonomy.berry_phase_extended_cycle(fam, params.dim, steps, cycles=params.dim)
                dev = abs(np.exp(1j * g) + 1)
                return dev <= 1e-4, f"Berry phase over the extended loop {g:.8f}"
            check("gamma = pi as the Berry phase of the extended loop", berry)

    if numeric and params.N <= 5:
        def winding():
            fam = circuits.family_UN(params, max_qubits=max_qubits)
            raw = holonomy.winding_quadrature(fam, 2048)
            return abs(raw - params.slope) <= 0.05, f"quadrature {raw:.6f}, d_N = {params.slope}"
        check("winding number equals d_N", winding)

    if params.all_odd and all(pj > 0 for pj in params.p):
        def decoding():
            ws = tuple(subsetsum.weights(params))
            table = subsetsum.decode_table(params)
            for k in range(params.dim):
                inst = subsetsum.SubsetSumInstance(ws, k, params.dim)
                sols = subsetsum.solve_subset_sum(inst, "dp")
                if len(sols) != 1 or subsetsum.subset_to_bits(sols[0], params.N) != table[k]:
                    return False, f"residue {k} disagrees"
            return True, f"{params.dim} residues decoded uniquely"
        check("modular decode agrees with subset-sum DP", decoding)

    return results
