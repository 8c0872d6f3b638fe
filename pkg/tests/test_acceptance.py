"""The twelve acceptance criteria, each at its stated tolerance and time budget.

Every test carries a ``criterion`` marker; the conftest hook prints one
PASS/FAIL line per criterion after the run.
"""
import itertools
import time

import numpy as np
import pytest

from anholonomy import circuits, cli, holonomy, spectral, subsetsum
from anholonomy.circuits import CircuitParams
from anholonomy.core import TWO_PI, circular_gap, eig_unitary
from anholonomy.errors import ParseError


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.2f} s, budget {self.seconds} s"


def odd_params(N, choices=(1, 3)):
    return [CircuitParams(p) for p in itertools.product(choices, repeat=N)]


# 1 -------------------------------------------------------------------------

@pytest.mark.criterion(1, "single-qubit permutation and numeric holonomy")
@pytest.mark.parametrize("p", range(6))
def test_c01_single_qubit(p):
    with Budget(1.0):
        M = holonomy.holonomy_single(p)
        expected = np.eye(2) if p % 2 == 0 else np.array([[0, 1], [1, 0]])
        assert np.array_equal(M.permutation().matrix(), expected)
        Mn, _ = holonomy.holonomy_numeric(circuits.family_u(p), 2, steps=4096)
        assert np.max(np.abs(Mn.entries - M.entries)) <= 1e-6


# 2 -------------------------------------------------------------------------

@pytest.mark.criterion(2, "eigenangle ladder of the three-qubit circuit")
def test_c02_spectrum_ladder():
    P = CircuitParams.of(1, 1, 1)
    with Budget(5.0):
        for lam in TWO_PI * np.arange(128) / 128:
            frame = eig_unitary(circuits.build_UN(lam, P))
            exact = np.sort(np.mod(2 * np.pi * (np.arange(8) + lam / TWO_PI) / 8, TWO_PI))
            got = np.sort(frame.angles)
            # compare on the circle so a rung sitting at 0 ~ 2 pi is not misread
            assert np.max(np.abs(np.exp(1j * got) - np.exp(1j * exact))) <= 1e-10
            assert abs(circular_gap(frame.angles) - TWO_PI / 8) <= 1e-10


# 3 -------------------------------------------------------------------------

GOLDENS = [
    ((1, 1, 1), "000", ["000", "001", "010", "011", "100", "101", "110", "111", "000"]),
    ((2, 1, 1), "000", ["000", "010", "100", "110", "000"]),
    ((2, 1, 1), "001", ["001", "011", "101", "111", "001"]),
    ((3, 1, 1), "000", ["000", "011", "110", "001", "100", "111", "010", "101", "000"]),
    ((1, 3, 1), "000", ["000", "001", "110", "111", "100", "101", "010", "011", "000"]),
]


@pytest.mark.criterion(3, "itinerary goldens")
@pytest.mark.parametrize("p,start,expected", GOLDENS)
def test_c03_itineraries(p, start, expected):
    with Budget(1.0):
        path = spectral.itinerary(CircuitParams(p), tuple(int(c) for c in start), len(expected) - 1)
        assert [spectral.bits_str(n) for n in path] == expected


# 4 -------------------------------------------------------------------------

def _family_cases():
    for N in range(1, 11):
        yield "simplest", CircuitParams((1,) * N), 1, 1
        yield "even_p1", CircuitParams((2,) + (1,) * (N - 1)), 1, 1
        for J in range(1, N + 1):
            for K in (1, 2, 3):
                p = [1] * N
                p[J - 1] = 2 ** K + 1
                yield "impurity", CircuitParams(tuple(p)), J, K


@pytest.mark.criterion(4, "closed forms equal the recursion, N <= 10")
def test_c04_closed_forms():
    count = 0
    with Budget(10.0):
        for family, P, J, K in _family_cases():
            for n in spectral.all_states(P.N):
                assert spectral.closed_form_sr(P, n, family, J, K) == spectral.sr_full(P, n), (family, P.p, n)
                count += 1
    assert count > 3 * 1024


# 5 -------------------------------------------------------------------------

@pytest.mark.criterion(5, "analytic holonomy equals numeric transport")
def test_c05_holonomy_vs_numeric():
    with Budget(120.0):
        for N in range(1, 5):
            for P in odd_params(N):
                Mn, _ = holonomy.holonomy_numeric_N(P, 4096)
                dev = np.max(np.abs(holonomy.holonomy_analytic(P).entries - Mn.entries))
                assert dev <= 1e-6, (P.p, dev)


# 6 -------------------------------------------------------------------------

def _close_to_pi(g, tol=1e-4):
    return abs(np.exp(1j * g) + 1) <= tol


@pytest.mark.criterion(6, "gamma = pi by three routes")
@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_c06_gamma_three_routes(N):
    for P in odd_params(N):
        (g_det,) = holonomy.gamma(P)
        assert _close_to_pi(g_det)
        assert _close_to_pi(holonomy.gamma_from_winding(P))
        fam = circuits.family_UN(P)
        g_loop = holonomy.berry_phase_extended_cycle(fam, P.dim, 1024, cycles=P.dim)
        assert _close_to_pi(g_loop), (P.p, g_loop)


# 7 -------------------------------------------------------------------------

@pytest.mark.criterion(7, "winding numbers")
@pytest.mark.parametrize("builder", ["u", "uY"])
@pytest.mark.parametrize("p", range(5))
def test_c07_winding_single(builder, p):
    fam = circuits.family_u(p) if builder == "u" else circuits.family_uY(p)
    raw = holonomy.winding_quadrature(fam, 2048)
    assert round(raw) == p
    assert abs(raw - p) <= 0.05


@pytest.mark.criterion(7, "winding numbers")
@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_c07_winding_hierarchy(N):
    for P in odd_params(N):
        raw = holonomy.winding_quadrature(circuits.family_UN(P), 2048)
        assert round(raw) == P.slope == holonomy.winding_sum_r(P)
        assert abs(raw - P.slope) <= 0.05, (P.p, raw)


# 8 -------------------------------------------------------------------------

@pytest.mark.criterion(8, "degeneracy iff an even p_j with j >= 2")
def test_c08_degeneracy_iff():
    with Budget(300.0):
        for N in range(1, 5):
            for p in itertools.product((1, 2, 3), repeat=N):
                P = CircuitParams(p)
                windows = holonomy.degeneracy_scan(circuits.family_UN(P), P.dim, grid=64)
                expected = any(x % 2 == 0 for x in p[1:])
                assert bool(windows) == expected, p


# 9 -------------------------------------------------------------------------

@pytest.mark.criterion(9, "commutator identity and m balance, exact")
def test_c09_exact_identities():
    rng = np.random.default_rng(9)
    for _ in range(100):
        N = int(rng.integers(1, 9))
        P = CircuitParams(tuple(int(x) for x in rng.choice([1, 3, 5], size=N)))
        assert holonomy.commutator_defect(P) == 0, P.p
        assert holonomy.balance_defect(P) == 0, P.p


# 10 ------------------------------------------------------------------------

@pytest.mark.criterion(10, "modular decode agrees with the DP solver")
def test_c10_subset_sum():
    rng = np.random.default_rng(10)
    with Budget(30.0):
        for _ in range(20):
            N = int(rng.integers(1, 13))
            P = CircuitParams(tuple(int(x) for x in rng.choice([1, 3, 5], size=N)))
            ws = tuple(subsetsum.weights(P))
            for m in range(P.dim):
                decoded = subsetsum.decode(P, m, modular=True)
                sols = subsetsum.solve_subset_sum(subsetsum.SubsetSumInstance(ws, m, P.dim), "dp")
                assert len(decoded) == 1 and len(sols) == 1, (P.p, m)
                assert subsetsum.subset_to_bits(sols[0], N) == decoded[0]


# 11 ------------------------------------------------------------------------

@pytest.mark.criterion(11, "gauge covariance over 1000 random gauges")
def test_c11_gauge_covariance():
    rng = np.random.default_rng(11)
    cases = [holonomy.holonomy_analytic(P) for P in odd_params(3, (1, 3, 5))]
    cases.append(holonomy.holonomy_numeric_N(CircuitParams.of(2, 1, 1), 1024)[0])
    for k in range(1000):
        M = cases[k % len(cases)]
        cycles = M.cycles()
        G = holonomy.gauge_transform(M, rng.uniform(0, TWO_PI, M.dim))
        assert G.cycles() == cycles
        for c in cycles:
            assert abs(np.prod(G.sigma()[c]) - np.prod(M.sigma()[c])) <= 1e-10


# 12 ------------------------------------------------------------------------

@pytest.mark.criterion(12, "byte-identical CLI reruns and parser fuzz")
@pytest.mark.parametrize("sub", cli.SUBCOMMANDS)
@pytest.mark.parametrize("fmt", cli.FORMATS)
def test_c12_cli_determinism(tmp_path, capsysbinary, sub, fmt):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("qubits = 3\np = [3, 1, 1]\nsteps = 64\n", encoding="utf-8")
    outputs = []
    for k in range(2):
        out = tmp_path / f"out{k}"
        assert cli.main([sub, "--config", str(cfg), "--format", fmt, "--output", str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert b"\r" not in outputs[0] and outputs[0].endswith(b"\n")


def _fuzz_inputs(count, seed=12):
    rng = np.random.default_rng(seed)
    seeds = ["qubits = 3\np = [3, 1, 1]\n", "p=[1]\nsteps=8\nformat=json\ncycles=4\n",
             "# c\nqubits=1\np=[5]"]
    alphabet = list("pqubitsyclefomarjn=[],#- \n\t0123456789xé\x00\r") + ["qubits", "p", "steps", "=", "[", "]"]
    for _ in range(count):
        kind = rng.integers(3)
        if kind == 0:
            text = "".join(rng.choice(alphabet, size=int(rng.integers(0, 60))))
        else:
            chars = list(seeds[int(rng.integers(len(seeds)))])
            for _ in range(int(rng.integers(1, 6))):
                op = rng.integers(3)
                pos = int(rng.integers(0, len(chars) + 1))
                if op == 0 and chars:
                    del chars[min(pos, len(chars) - 1)]
                elif op == 1:
                    chars.insert(pos, str(rng.choice(alphabet)))
                elif chars:
                    chars[min(pos, len(chars) - 1)] = str(rng.choice(alphabet))
            text = "".join(chars)
        yield text


@pytest.mark.criterion(12, "byte-identical CLI reruns and parser fuzz")
def test_c12_parser_fuzz():
    parsed = errors = 0
    for text in _fuzz_inputs(10_000):
        try:
            cfg = cli.parse_config(text)
        except ParseError as exc:
            assert isinstance(exc.line, int) and exc.line >= 1
            errors += 1
        else:
            assert isinstance(cfg, cli.RunConfig)
            parsed += 1
    assert parsed > 0 and errors > 0
