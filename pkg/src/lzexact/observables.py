"""Infidelity with respect to the instantaneous ground state, and its zeros."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DegeneratePoint, SolverMismatch
from .model import ParamPoint, PathSpec, eigensystem, path_point
from .series import AmplitudePair

_SLACK = 1e-12


def _clamp(v: float) -> float:
    if -_SLACK <= v < 0.0:
        return 0.0
    if 1.0 < v <= 1.0 + _SLACK:
        return 1.0
    return v


def instantaneous_infidelity(p: ParamPoint, amp: AmplitudePair) -> float:
    """Probability of not being in the ground state at p.

    Written out in the components of the fixed basis; assumes a normalized
    state.
    """
    r = p.r
    if r == 0.0:
        raise DegeneratePoint("infidelity undefined at r = 0")
    a0, a1 = amp.a0, amp.a1
    cross = (complex(p.x, p.y) * a0 * a1.conjugate()).real
    val = (r - p.z * (1.0 - 2.0 * abs(a1) ** 2) - 2.0 * cross) / (2.0 * r)
    return _clamp(val)


def excited_population(p: ParamPoint, amp: AmplitudePair) -> float:
    """|<E1|psi>|^2 from the eigenvectors."""
    es = eigensystem(p)
    return abs(np.vdot(es.excited, amp.as_array())) ** 2


def fidelity(p: ParamPoint, amp: AmplitudePair) -> float:
    """|<E0|psi>|^2 from the eigenvectors."""
    es = eigensystem(p)
    return abs(np.vdot(es.ground, amp.as_array())) ** 2


def infidelity_along(s: PathSpec, times, a0, a1) -> np.ndarray:
    return np.array(
        [
            instantaneous_infidelity(path_point(s, t), AmplitudePair(complex(u), complex(v)))
            for t, u, v in zip(times, a0, a1)
        ]
    )


def final_infidelity(s: PathSpec, solver: str = "analytic") -> float:
    """Infidelity of the state reached at t = T."""
    from .analytic import evaluate

    return float(evaluate(s, [s.T], solver).infidelity[-1])


def path_c_period(s: PathSpec) -> float:
    return math.pi / math.hypot(s.r0, s.alpha0 / s.T)


def path_c_closed_infidelity(s: PathSpec, t: float) -> float:
    """Closed form for the arc: I_bar * sin^2(pi t / tau)."""
    if s.variant != "C":
        raise SolverMismatch("the closed-form infidelity exists only for path C")
    a0 = s.alpha0
    peak = a0 * a0 / ((s.r0 * s.T) ** 2 + a0 * a0)
    return peak * math.sin(math.pi * t / path_c_period(s)) ** 2


def zero_condition_residual(p: ParamPoint, amp: AmplitudePair) -> float:
    """|a1/a0 - (x + iy)/(z + r)|, which vanishes exactly at the zeros."""
    return abs(amp.a1 / amp.a0 - complex(p.x, p.y) / (p.z + p.r))


@dataclass
class ZeroList:
    spec: PathSpec
    solver: str
    zero_tol: float
    times: list[float] = field(default_factory=list)
    values: list[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.times)

    def rows(self) -> list[dict]:
        s = self.spec
        return [
            {"path": s.variant, "x0": s.x0, "z0": s.z0, "T": s.T, "k": k, "t_k": t, "I": v}
            for k, (t, v) in enumerate(zip(self.times, self.values))
        ]


def default_zero_tol(solver: str) -> float:
    return 1e-8 if solver == "oracle" else 1e-10


def _sampler(s: PathSpec, solver: str):
    from .analytic import analytic_solver, evaluate

    if solver == "analytic":
        sol = analytic_solver(s)

        def at(ts):
            a0, a1 = sol.amplitudes(ts)
            return infidelity_along(s, ts, a0, a1)

        return at
    return lambda ts: evaluate(s, ts, solver).infidelity


def find_infidelity_zeros(s: PathSpec, solver: str = "analytic", zero_tol: float | None = None) -> ZeroList:
    """Times in [0, T] at which the infidelity drops below ``zero_tol``.

    For the arc these are the multiples of the period. For the straight
    paths the infidelity is scanned on a dense grid and every local minimum
    is polished by bounded minimization; minima that stay above the
    tolerance are dropped.
    """
    tol = default_zero_tol(solver) if zero_tol is None else float(zero_tol)
    out = ZeroList(s, solver, tol)
    sample = _sampler(s, solver)
    if s.variant == "C":
        tau = path_c_period(s)
        cands = [k * tau for k in range(int(math.floor(s.T / tau)) + 1)]
        vals = sample(np.array(cands))
        for t, v in zip(cands, vals):
            if v < tol:
                out.times.append(float(t))
                out.values.append(float(v))
        return out
    tau = path_c_period(s.with_variant("C"))
    n = int(max(1000, math.ceil(20.0 * s.T / tau)))
    grid = np.linspace(0.0, s.T, n)
    vals = sample(grid)
    if solver == "oracle":
        # a fresh oracle run per probe is too slow; keep the grid minima
        polish = None
    else:
        polish = sample
    for i in range(n):
        left = vals[i - 1] if i > 0 else math.inf
        right = vals[i + 1] if i < n - 1 else math.inf
        if not (vals[i] <= left and vals[i] <= right):
            continue
        t_best, v_best = float(grid[i]), float(vals[i])
        if polish is not None and 0 < i < n - 1:
            res = minimize_scalar(
                lambda t: float(polish(np.array([t]))[0]),
                bounds=(grid[i - 1], grid[i + 1]),
                method="bounded",
                options={"xatol": 1e-12 * max(1.0, s.T)},
            )
            if res.fun < v_best:
                t_best, v_best = float(res.x), float(res.fun)
        if v_best < tol:
            out.times.append(t_best)
            out.values.append(v_best)
    return out
