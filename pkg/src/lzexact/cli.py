"""Command-line front end.

Subcommands emit CSV (default) or JSON rows: ``evolve`` for trajectories,
``final`` for final infidelities with their approximations, ``validate`` for
analytic-versus-oracle checks, ``zeros`` for infidelity zeros and
``crossover`` for the Landau-Zener window and crossover time.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys

import numpy as np

from . import approx
from .analytic import PathASolver, PathBSolver, evaluate
from .errors import LZError
from .model import VARIANTS, PathSpec
from .observables import find_infidelity_zeros
from .oracle import IntegratorControl, compare_series, propagate_spec
from .specfun import pcf_d, pcf_d_derivative, rgamma

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

EVOLVE_COLUMNS = ["path", "x0", "z0", "T", "t", "a0_re", "a0_im", "a1_re", "a1_im", "infidelity", "solver"]
FINAL_COLUMNS = ["path", "x0", "z0", "T", "I_exact", "I_LZ", "I_APT", "APT_envelope", "T_minus", "T_plus", "T_c"]
ZERO_COLUMNS = ["path", "x0", "z0", "T", "k", "t_k", "I"]
CROSSOVER_COLUMNS = ["x0", "z0", "T_minus", "T_plus", "T_c"]


class UsageError(Exception):
    pass


# --- argument parsing ---------------------------------------------------------


def _number(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None
    if not math.isfinite(val):
        raise UsageError(f"not a finite number: {text!r}")
    return val


def _count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"not an integer count: {text!r}") from None
    if n < 1:
        raise UsageError(f"count must be >= 1, got {n}")
    return n


def parse_values(text: str) -> list[float]:
    """Comma list of numbers and ranges ``start:end:count`` or ``start:end:log:count``."""
    out: list[float] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise UsageError(f"empty entry in {text!r}")
        parts = item.split(":")
        if len(parts) == 1:
            out.append(_number(parts[0]))
        elif len(parts) == 3:
            lo, hi, n = _number(parts[0]), _number(parts[1]), _count(parts[2])
            out.extend(float(v) for v in np.linspace(lo, hi, n))
        elif len(parts) == 4 and parts[2].lower() == "log":
            lo, hi, n = _number(parts[0]), _number(parts[1]), _count(parts[3])
            if lo <= 0 or hi <= 0:
                raise UsageError("log ranges need positive endpoints")
            out.extend(float(v) for v in np.geomspace(lo, hi, n))
        else:
            raise UsageError(f"cannot parse range {item!r}")
    return out


def parse_paths(text: str) -> list[str]:
    paths = [p.strip().upper() for p in text.split(",")]
    for p in paths:
        if p not in VARIANTS:
            raise UsageError(f"unknown path {p!r}; choose from A, B, C")
    return paths


def _specs(args) -> list[PathSpec]:
    combos = itertools.product(parse_paths(args.path), parse_values(args.x0), parse_values(args.z0), parse_values(args.T))
    try:
        return [PathSpec(p, x0, z0, T) for p, x0, z0, T in combos]
    except LZError as exc:
        raise UsageError(str(exc)) from None


def _integrator(args) -> IntegratorControl:
    try:
        return IntegratorControl(rel_tol=args.rtol, abs_tol=args.atol)
    except LZError as exc:
        raise UsageError(str(exc)) from None


# --- output -----------------------------------------------------------------------


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: r.get(c) for c in columns} for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands ---------------------------------------------------------------------


def _run(s: PathSpec, times, solver: str, ctl: IntegratorControl):
    if solver == "oracle":
        return propagate_spec(s, times, ctl)
    return evaluate(s, times, solver)


def cmd_evolve(args) -> tuple[list[dict], list[str], int]:
    ctl = _integrator(args)
    rows = []
    for s in _specs(args):
        series = _run(s, np.linspace(0.0, s.T, args.samples), args.solver, ctl)
        rows.extend(series.rows())
    return rows, EVOLVE_COLUMNS, EXIT_OK


def cmd_final(args) -> tuple[list[dict], list[str], int]:
    ctl = _integrator(args)
    rows = []
    for s in _specs(args):
        exact = float(_run(s, [s.T], args.solver, ctl).infidelity[-1])
        rep = approx.approximation_report(s)
        rows.append(
            {
                "path": s.variant,
                "x0": s.x0,
                "z0": s.z0,
                "T": s.T,
                "I_exact": exact,
                "I_LZ": rep.lz_value,
                "I_APT": rep.apt_value,
                "APT_envelope": rep.apt_envelope,
                "T_minus": rep.lz_window.t_minus if rep.lz_window else None,
                "T_plus": rep.lz_window.t_plus if rep.lz_window else None,
                "T_c": rep.crossover_time,
            }
        )
    return rows, FINAL_COLUMNS, EXIT_OK


def cmd_zeros(args) -> tuple[list[dict], list[str], int]:
    rows = []
    for s in _specs(args):
        rows.extend(find_infidelity_zeros(s, args.solver, args.zero_tol).rows())
    return rows, ZERO_COLUMNS, EXIT_OK


def cmd_crossover(args) -> tuple[list[dict], list[str], int]:
    rows = []
    for x0, z0 in itertools.product(parse_values(args.x0), parse_values(args.z0)):
        if x0 <= 0 or z0 <= 0:
            raise UsageError("x0 and z0 must be positive")
        win = approx.lz_validity_window(x0, z0)
        rows.append(
            {
                "x0": x0,
                "z0": z0,
                "T_minus": win.t_minus if win else None,
                "T_plus": win.t_plus if win else None,
                "T_c": approx.crossover_time(x0, z0),
            }
        )
    return rows, CROSSOVER_COLUMNS, EXIT_OK


def _pcf_wronskian_residual(s: PathSpec) -> float:
    sol = PathASolver(s)
    eta = sol.eta
    xi = (1 - 1j) * sol.Z(0.0)
    w = -pcf_d(eta, xi) * pcf_d_derivative(eta, -xi) - pcf_d_derivative(eta, xi) * pcf_d(eta, -xi)
    ref = math.sqrt(2.0 * math.pi) * rgamma(-eta)
    return abs(w - ref) / abs(ref)


def _hyp_wronskian_residual(s: PathSpec) -> float:
    sol = PathBSolver(s)
    # time Wronskian of (w1, w2) is q^(-2a) * dalpha/dt, q = x0^2 / r0^2 at t = 0
    q0 = (s.x0 / s.r0) ** 2
    ref = np.exp(-2.0 * sol.a * math.log(q0)) * sol.rate
    return abs(sol.wronskian0 - ref) / abs(ref)


def cmd_validate(args) -> tuple[dict, int]:
    ctl = _integrator(args)
    thr = args.threshold
    report: dict = {"threshold": thr, "rel_tol": ctl.rel_tol, "abs_tol": ctl.abs_tol, "cases": []}
    worst = {"deviation": 0.0, "analytic_norm_drift": 0.0, "oracle_norm_drift": 0.0, "wronskian": 0.0}
    for s in _specs(args):
        times = np.linspace(0.0, s.T, args.samples)
        a = evaluate(s, times, "analytic")
        o = propagate_spec(s, times, ctl)
        case = {
            "path": s.variant,
            "x0": s.x0,
            "z0": s.z0,
            "T": s.T,
            "deviation": compare_series(a, o),
            "analytic_norm_drift": a.norm_drift,
            "oracle_norm_drift": o.norm_drift,
        }
        if s.variant == "A":
            case["wronskian"] = _pcf_wronskian_residual(s)
        elif s.variant == "B":
            case["wronskian"] = _hyp_wronskian_residual(s)
        for k in worst:
            if k in case:
                worst[k] = max(worst[k], case[k])
        report["cases"].append(case)
    report["max"] = worst
    limits = {"deviation": thr, "analytic_norm_drift": 1e-9, "oracle_norm_drift": 1e-9, "wronskian": thr}
    report["passed"] = all(worst[k] < limits[k] for k in worst)
    return report, EXIT_OK if report["passed"] else EXIT_VALIDATION


# --- entry point ------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, samples: bool = False, solver: str | None = "analytic") -> None:
    p.add_argument("--path", default="A", help="comma list of path variants (A,B,C)")
    p.add_argument("--x0", required=True, help="value, comma list or range start:end:count / start:end:log:count")
    p.add_argument("--z0", required=True, help="as --x0")
    p.add_argument("--T", required=True, help="total driving time(s), as --x0")
    if samples:
        p.add_argument("--samples", type=int, default=101, help="time samples per run (>= 2)")
    if solver is not None:
        p.add_argument("--solver", choices=["analytic", "oracle", "auto"], default=solver)
    p.add_argument("--rtol", type=float, default=1e-11, help="oracle relative tolerance")
    p.add_argument("--atol", type=float, default=1e-13, help="oracle absolute tolerance")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="output file (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lzexact", description="Exact finite-time Landau-Zener driving.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="instantaneous infidelity along the drive")
    _common(p, samples=True)

    p = sub.add_parser("final", help="final infidelity against its approximations")
    _common(p)

    p = sub.add_parser("validate", help="analytic solvers against the oracle")
    p.add_argument("--path", default="A,B,C")
    p.add_argument("--x0", default="0.05,0.1,0.2,0.5,1.0")
    p.add_argument("--z0", default="0.1,0.5,1.0")
    p.add_argument("--T", default="1,5,25")
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--threshold", type=float, default=1e-8)
    p.add_argument("--rtol", type=float, default=1e-11)
    p.add_argument("--atol", type=float, default=1e-13)
    p.add_argument("--out", default=None)

    p = sub.add_parser("zeros", help="times where the infidelity vanishes")
    _common(p)
    p.add_argument("--zero-tol", type=float, default=None, help="default 1e-10 (analytic) or 1e-8 (oracle)")

    p = sub.add_parser("crossover", help="Landau-Zener window and crossover time")
    p.add_argument("--x0", required=True)
    p.add_argument("--z0", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    return parser


_COMMANDS = {"evolve": cmd_evolve, "final": cmd_final, "zeros": cmd_zeros, "crossover": cmd_crossover}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if getattr(args, "samples", 2) < 2:
            raise UsageError("--samples must be at least 2")
        if args.command == "validate":
            report, code = cmd_validate(args)
            _emit(json.dumps(report, indent=1) + "\n", args.out)
            return code
        rows, columns, code = _COMMANDS[args.command](args)
        _emit(render(rows, columns, args.format), args.out)
        return code
    except UsageError as exc:
        print(f"lzexact: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, LZError) as exc:
        if isinstance(exc, ArithmeticError):
            print(f"lzexact: numerical failure: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"lzexact: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"lzexact: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"lzexact: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
