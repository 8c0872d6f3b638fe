"""Command-line front end: config parsing, subcommands and deterministic emitters.

Config grammar (UTF-8, one ``key = value`` per line, ``#`` starts a comment)::

    qubits = 3          # optional, defaults to len(p)
    p = [3, 1, 1]
    steps = 1024        # grid resolution, >= 2
    cycles = 8          # itinerary length, defaults to 2**qubits
    format = json       # csv | json
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from dataclasses import dataclass, replace
from typing import Any, Optional

import numpy as np

from . import circuits, holonomy, spectral, subsetsum
from .circuits import CircuitParams
from .core import TWO_PI, Permutation
from .errors import AnholonomyError, DimensionOverflow, ParseError
from .holonomy import HolonomyReport

KEYS = ("qubits", "p", "steps", "cycles", "format")
FORMATS = ("csv", "json")
SUBCOMMANDS = ("spectrum", "itinerary", "invariants", "holonomy", "winding", "subset-sum", "verify")

_INT = re.compile(r"[+-]?[0-9]+\Z")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


@dataclass(frozen=True)
class RunConfig:
    params: CircuitParams
    steps: int = 1024
    cycles: Optional[int] = None
    format: str = "csv"
    max_qubits: int = circuits.DEFAULT_MAX_QUBITS

    @property
    def cycle_count(self) -> int:
        return self.cycles if self.cycles is not None else self.params.dim


# ----------------------------------------------------------------------------
# config parsing

def _parse_int(text: str, line: int) -> int:
    text = text.strip()
    if not _INT.match(text):
        raise ParseError(line, f"malformed integer {text!r}")
    try:
        return int(text)
    except ValueError:
        raise ParseError(line, "integer too large") from None


def _parse_list(text: str, line: int) -> list[int]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(line, "p must be a bracketed list like [1, 3, 1]")
    body = text[1:-1].strip()
    if not body:
        raise ParseError(line, "empty p list")
    return [_parse_int(item, line) for item in body.split(",")]


def parse_config(text: str) -> RunConfig:
    """Parse config text; every failure is a ``ParseError`` carrying a line number."""
    lines = text.split("\n")
    seen: dict[str, tuple[int, Any]] = {}
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ParseError(lineno, "expected 'key = value'")
        key, value = (part.strip() for part in body.split("=", 1))
        if key not in KEYS:
            raise ParseError(lineno, f"unknown key {key!r}")
        if key in seen:
            raise ParseError(lineno, f"duplicate key {key!r} (first on line {seen[key][0]})")
        if key == "p":
            parsed: Any = _parse_list(value, lineno)
        elif key == "format":
            if value not in FORMATS:
                raise ParseError(lineno, f"format must be one of {', '.join(FORMATS)}")
            parsed = value
        else:
            parsed = _parse_int(value, lineno)
            if key == "steps" and parsed < 2:
                raise ParseError(lineno, "steps must be >= 2")
            if key in ("qubits", "cycles") and parsed < 1:
                raise ParseError(lineno, f"{key} must be positive")
        seen[key] = (lineno, parsed)

    last = max(len(lines), 1)
    if "p" not in seen:
        raise ParseError(last, "missing required key 'p'")
    p_line, p = seen["p"]
    if "qubits" in seen:
        q_line, q = seen["qubits"]
        if q != len(p):
            raise ParseError(max(q_line, p_line),
                             f"length mismatch: qubits = {q} but p has {len(p)} entries")
    kwargs = {k: seen[k][1] for k in ("steps", "cycles", "format") if k in seen}
    return RunConfig(params=CircuitParams(tuple(p)), **kwargs)


def parse_config_bytes(data: bytes) -> RunConfig:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(data[:exc.start].count(b"\n") + 1, "input is not valid UTF-8") from None
    return parse_config(text)


# ----------------------------------------------------------------------------
# deterministic emitters

def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x}")
    if x == 0.0:
        return "0.0"
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def to_json(obj: Any) -> str:
    """JSON with floats at 17 significant digits; dict order is preserved."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return to_json({"re": obj.real, "im": obj.imag})
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def report_to_dict(report: HolonomyReport) -> dict:
    return {
        "n": report.n,
        "p": list(report.p),
        "d_N": report.d_N,
        "degenerate": report.degenerate,
        "cycles": [list(c) for c in report.cycles],
        "sigma": [complex(s) for s in report.sigma],
        "gamma": [float(g) for g in report.gamma_per_cycle],
        "nu": report.nu,
    }


def emit_report(report: HolonomyReport, format: str = "json") -> bytes:
    """Serialize a report. CSV has one row per state in the m-representation."""
    if format == "json":
        return (to_json(report_to_dict(report)) + "\n").encode("utf-8")
    if format != "csv":
        raise ValueError(f"unknown format {format!r}")
    block = {}
    for b, cyc in enumerate(report.cycles):
        for m in cyc:
            block[m] = b
    rows = []
    for m in range(len(report.permutation)):
        b = block[m]
        sig = report.sigma[m] if report.sigma else None
        rows.append([
            m, report.permutation(m), b,
            float(sig.real) if sig is not None else "",
            float(sig.imag) if sig is not None else "",
            float(report.gamma_per_cycle[b]) if report.gamma_per_cycle else "",
            report.nu, str(report.degenerate).lower(),
        ])
    header = ["m", "successor", "cycle", "sigma_re", "sigma_im", "gamma", "nu", "degenerate"]
    return _csv(header, rows).encode("utf-8")


def parse_report(data: bytes) -> HolonomyReport:
    """Inverse of ``emit_report(..., "json")``."""
    obj = json.loads(data.decode("utf-8"))
    size = 2 ** int(obj["n"])
    image = [0] * size
    for cyc in obj["cycles"]:
        for k, m in enumerate(cyc):
            image[m] = cyc[(k + 1) % len(cyc)]
    return HolonomyReport(
        p=tuple(obj["p"]),
        d_N=obj["d_N"],
        permutation=Permutation(tuple(image)),
        sigma=tuple(complex(s["re"], s["im"]) for s in obj["sigma"]),
        cycles=tuple(tuple(c) for c in obj["cycles"]),
        gamma_per_cycle=tuple(float(g) for g in obj["gamma"]),
        nu=obj["nu"],
        degenerate=obj["degenerate"],
    )


# ----------------------------------------------------------------------------
# subcommands

def _matrix_json(M: np.ndarray) -> list:
    return [[complex(x) for x in row] for row in M]


def _cmd_spectrum(cfg: RunConfig, args) -> tuple[str, int]:
    P = cfg.params
    lambdas = TWO_PI * np.arange(cfg.steps + 1) / cfg.steps
    states = sorted(spectral.all_states(P.N), key=lambda n: (spectral.principal_number(P, n), n))
    ms = [spectral.principal_number(P, n) for n in states]
    if cfg.format == "json":
        out = {
            "p": list(P.p), "d_N": P.slope, "steps": cfg.steps,
            "lambda": [float(l) for l in lambdas],
            "states": [{"n": spectral.bits_str(n), "m": m,
                        "theta": [spectral.eigenangle_N(P, n, l) for l in lambdas]}
                       for n, m in zip(states, ms)],
        }
        return to_json(out) + "\n", EXIT_OK
    rows = [[float(l), m, spectral.eigenangle_N(P, n, l)]
            for l in lambdas for n, m in zip(states, ms)]
    return _csv(["lambda", "m", "theta"], rows), EXIT_OK


def _cmd_itinerary(cfg: RunConfig, args) -> tuple[str, int]:
    P = cfg.params
    path = spectral.itinerary(P, (0,) * P.N, cfg.cycle_count)
    rows = [[k, spectral.bits_str(n), spectral.principal_number(P, n) % P.dim]
            for k, n in enumerate(path)]
    if cfg.format == "json":
        out = {"p": list(P.p), "d_N": P.slope,
               "itinerary": [{"step": k, "n": n, "m": m} for k, n, m in rows]}
        return to_json(out) + "\n", EXIT_OK
    return _csv(["step", "n", "m"], rows), EXIT_OK


def _cmd_invariants(cfg: RunConfig, args) -> tuple[str, int]:
    report = holonomy.invariants(cfg.params, cfg.steps, cfg.max_qubits)
    return emit_report(report, cfg.format).decode("utf-8"), EXIT_OK


def _cmd_holonomy(cfg: RunConfig, args) -> tuple[str, int]:
    P = cfg.params
    numeric, _ = holonomy.holonomy_numeric_N(P, cfg.steps, max_qubits=cfg.max_qubits)
    analytic = holonomy.holonomy_analytic(P).entries if P.all_odd else None
    dev = None if analytic is None else float(np.max(np.abs(analytic - numeric.entries)))
    if cfg.format == "json":
        out = {"p": list(P.p), "steps": cfg.steps,
               "analytic": None if analytic is None else _matrix_json(analytic),
               "numeric": _matrix_json(numeric.entries), "max_deviation": dev}
        return to_json(out) + "\n", EXIT_OK
    rows = []
    for i in range(P.dim):
        for j in range(P.dim):
            a = analytic[i, j] if analytic is not None else None
            z = numeric.entries[i, j]
            rows.append([i, j, float(a.real) if a is not None else "", float(a.imag) if a is not None else "",
                         float(z.real), float(z.imag)])
    return _csv(["row", "col", "analytic_re", "analytic_im", "numeric_re", "numeric_im"], rows), EXIT_OK


def _cmd_winding(cfg: RunConfig, args) -> tuple[str, int]:
    P = cfg.params
    fam = circuits.family_UN(P, max_qubits=cfg.max_qubits)
    raw = holonomy.winding_quadrature(fam, cfg.steps)
    nearest = int(round(raw))
    out = {"p": list(P.p), "steps": cfg.steps, "numeric_quadrature": raw,
           "numeric": nearest, "analytic": holonomy.winding_number_analytic(P),
           "sum_r": holonomy.winding_sum_r(P),
           "converged": abs(raw - nearest) <= 0.1}
    if cfg.format == "json":
        return to_json(out) + "\n", EXIT_OK
    return _csv(["key", "value"], [[k, to_json(v)] for k, v in out.items() if k != "p"]), EXIT_OK


def _cmd_subset_sum(cfg: RunConfig, args) -> tuple[str, int]:
    P = cfg.params
    t0 = time.perf_counter()
    table = subsetsum.decode_table(P)
    t1 = time.perf_counter()
    ws = tuple(subsetsum.weights(P))
    dp = []
    for k in range(P.dim):
        sols = subsetsum.solve_subset_sum(subsetsum.SubsetSumInstance(ws, k, P.dim), "dp")
        dp.append(subsetsum.subset_to_bits(sols[0], P.N) if len(sols) == 1 else None)
    t2 = time.perf_counter()
    brute = None
    if P.N <= 16:
        brute = [subsetsum.decode(P, k, modular=True) for k in range(P.dim)]
    t3 = time.perf_counter()
    agree = all(d == t for d, t in zip(dp, table)) and \
        (brute is None or all(b == [t] for b, t in zip(brute, table)))
    gap = subsetsum.spectral_gap(P)
    if cfg.format == "json":
        out = {"p": list(P.p), "weights": list(ws), "gap": gap,
               "adiabatic_time_scale": subsetsum.adiabatic_time_scale(P),
               "decode": [{"m": k, "n": spectral.bits_str(t)} for k, t in enumerate(table)],
               "dp_agrees": agree}
        if args.timings:
            out["timings"] = {"decode_s": t1 - t0, "dp_s": t2 - t1, "brute_s": t3 - t2}
        return to_json(out) + "\n", EXIT_OK if agree else EXIT_FAILED
    rows = [[k, spectral.bits_str(t), spectral.bits_str(d) if d else ""]
            for k, (t, d) in enumerate(zip(table, dp))]
    return _csv(["m", "n", "dp_n"], rows), EXIT_OK if agree else EXIT_FAILED


def _cmd_verify(cfg: RunConfig, args) -> tuple[str, int]:
    from .verify import run_checks
    results = run_checks(cfg.params, cfg.steps, cfg.max_qubits)
    ok = all(r.passed for r in results)
    if cfg.format == "json":
        out = {"p": list(cfg.params.p), "passed": ok,
               "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
        text = to_json(out) + "\n"
    else:
        text = _csv(["check", "status", "detail"],
                    [[r.name, "PASS" if r.passed else "FAIL", r.detail] for r in results])
    return text, EXIT_OK if ok else EXIT_FAILED


COMMANDS = {
    "spectrum": _cmd_spectrum,
    "itinerary": _cmd_itinerary,
    "invariants": _cmd_invariants,
    "holonomy": _cmd_holonomy,
    "winding": _cmd_winding,
    "subset-sum": _cmd_subset_sum,
    "verify": _cmd_verify,
}


def run(subcommand: str, config: RunConfig, args: Optional[argparse.Namespace] = None) -> tuple[str, int]:
    """Run one subcommand; returns the output text and the exit code."""
    if args is None:
        args = argparse.Namespace(timings=False)
    return COMMANDS[subcommand](config, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anholonomy",
        description="Spectra and anholonomy invariants of hierarchical quantum circuits.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", required=True, help="path to the config file")
    parser.add_argument("--steps", type=int, help="override the grid resolution")
    parser.add_argument("--cycles", type=int, help="override the itinerary length")
    parser.add_argument("--format", choices=FORMATS, help="override the output format")
    parser.add_argument("--output", default="-", help="output path, '-' for stdout")
    parser.add_argument("--max-qubits", type=int, default=circuits.DEFAULT_MAX_QUBITS,
                        help="cap for dense numerics (default %(default)s)")
    parser.add_argument("--timings", action="store_true",
                        help="include wall-clock timings (output is then not reproducible)")
    return parser


def _fail(payload: dict, code: int) -> int:
    sys.stderr.write(to_json(payload) + "\n")
    return code


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with open(args.config, "rb") as fh:
            cfg = parse_config_bytes(fh.read())
    except OSError as exc:
        return _fail({"error": "IOError", "message": str(exc)}, EXIT_USAGE)
    except ParseError as exc:
        return _fail(exc.to_dict(), EXIT_USAGE)

    overrides: dict[str, Any] = {"max_qubits": args.max_qubits}
    if args.steps is not None:
        if args.steps < 2:
            return _fail({"error": "UsageError", "message": "--steps must be >= 2"}, EXIT_USAGE)
        overrides["steps"] = args.steps
    if args.cycles is not None:
        if args.cycles < 1:
            return _fail({"error": "UsageError", "message": "--cycles must be positive"}, EXIT_USAGE)
        overrides["cycles"] = args.cycles
    if args.format is not None:
        overrides["format"] = args.format
    cfg = replace(cfg, **overrides)

    try:
        text, code = run(args.subcommand, cfg, args)
    except AnholonomyError as exc:
        return _fail(exc.to_dict(), EXIT_DOMAIN)

    if args.output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
