"""Reference propagator: direct numerical integration of the Schrodinger equation.

The two complex amplitudes are integrated as four real components with an
embedded Runge-Kutta pair; the Hamiltonian is rebuilt from the model at every
right-hand-side evaluation. The norm is never re-imposed, so its drift is a
health check of the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import GridMismatch, InvalidParameter, StepSizeUnderflow, ToleranceNotMet
from .model import ParamPoint, PathSpec, eigensystem, hamiltonian, path_point
from .observables import instantaneous_infidelity
from .series import AmplitudePair, EvolutionSeries


@dataclass(frozen=True)
class IntegratorControl:
    rel_tol: float = 1e-11
    abs_tol: float = 1e-13
    max_step: float = math.inf
    dense_output: bool = False
    method: str = "DOP853"

    def __post_init__(self) -> None:
        for name in ("rel_tol", "abs_tol"):
            v = getattr(self, name)
            if not (0.0 < v <= 1e-2):
                raise InvalidParameter(f"{name} must lie in (0, 1e-2], got {v!r}")
        if not self.max_step > 0.0:
            raise InvalidParameter("max_step must be positive")
        if self.method not in ("DOP853", "RK45", "RK23"):
            raise InvalidParameter(f"unsupported method {self.method!r}")


DEFAULT_INTEGRATOR = IntegratorControl()


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation by ``angle`` about ``axis``."""
    k = np.asarray(axis, dtype=float)
    k = k / np.linalg.norm(k)
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + math.sin(angle) * K + (1.0 - math.cos(angle)) * (K @ K)


class GeneralPath:
    """A path t -> ParamPoint on [0, T], optionally rigidly rotated."""

    def __init__(self, func: Callable[[float], ParamPoint], T: float, rotation=None, spec: PathSpec | None = None):
        if not (math.isfinite(T) and T > 0.0):
            raise InvalidParameter("T must be positive")
        self.func = func
        self.T = float(T)
        self.spec = spec
        if rotation is None:
            self.rotation = None
        else:
            R = np.asarray(rotation, dtype=float)
            if R.shape != (3, 3):
                raise InvalidParameter("rotation must be a 3x3 matrix")
            if np.max(np.abs(R.T @ R - np.eye(3))) > 1e-12 or abs(np.linalg.det(R) - 1.0) > 1e-12:
                raise InvalidParameter("rotation must be orthogonal with determinant +1")
            self.rotation = R

    @classmethod
    def from_spec(cls, s: PathSpec, rotation=None) -> "GeneralPath":
        return cls(lambda t: path_point(s, t), s.T, rotation, spec=s)

    @classmethod
    def constant(cls, p: ParamPoint, T: float) -> "GeneralPath":
        return cls(lambda t: p, T)

    def __call__(self, t: float) -> ParamPoint:
        p = self.func(min(max(t, 0.0), self.T))
        if self.rotation is None:
            return p
        x, y, z = self.rotation @ p.as_array()
        return ParamPoint(float(x), float(y), float(z))


def _rhs(path: GeneralPath):
    def f(t, u):
        h = hamiltonian(path(t))
        psi = np.array([u[0] + 1j * u[1], u[2] + 1j * u[3]])
        d = -1j * (h @ psi)
        return [d[0].real, d[0].imag, d[1].real, d[1].imag]

    return f


def propagate(path: GeneralPath, ctl: IntegratorControl = DEFAULT_INTEGRATOR, t_grid=None) -> EvolutionSeries:
    """Integrate from the ground state at path(0) and sample on ``t_grid``."""
    t_grid = np.asarray([0.0, path.T] if t_grid is None else t_grid, dtype=float)
    if t_grid.size == 0:
        raise InvalidParameter("empty time grid")
    if t_grid.min() < 0.0 or t_grid.max() > path.T or np.any(np.diff(t_grid) <= 0.0):
        raise InvalidParameter("t_grid must be increasing and inside [0, T]")
    psi0 = eigensystem(path(0.0)).ground
    u0 = [psi0[0].real, psi0[0].imag, psi0[1].real, psi0[1].imag]
    t_end = float(t_grid[-1])
    if t_end == 0.0:
        sol_y = np.array(u0, dtype=float).reshape(4, 1).repeat(t_grid.size, axis=1)
        dense = None
    else:
        res = solve_ivp(
            _rhs(path),
            (0.0, t_end),
            u0,
            method=ctl.method,
            t_eval=t_grid,
            rtol=ctl.rel_tol,
            atol=ctl.abs_tol,
            max_step=ctl.max_step,
            dense_output=ctl.dense_output,
        )
        if res.status != 0:
            if "step size" in res.message.lower():
                raise StepSizeUnderflow(res.message)
            raise ToleranceNotMet(res.message)
        sol_y = res.y
        dense = res.sol
    a0 = sol_y[0] + 1j * sol_y[1]
    a1 = sol_y[2] + 1j * sol_y[3]
    infid = np.array(
        [instantaneous_infidelity(path(t), AmplitudePair(complex(u), complex(v))) for t, u, v in zip(t_grid, a0, a1)]
    )
    series = EvolutionSeries(path.spec, "oracle", t_grid, a0, a1, infid)
    series.info["norm_drift"] = series.norm_drift
    if dense is not None:
        series.info["dense"] = dense
    if path.rotation is not None:
        series.info["rotation"] = path.rotation
    return series


def propagate_spec(s: PathSpec, times, ctl: IntegratorControl = DEFAULT_INTEGRATOR) -> EvolutionSeries:
    """Oracle run along a PathSpec; ``times`` may be unsorted or repeat."""
    t = np.atleast_1d(np.asarray(times, dtype=float))
    uniq, inv = np.unique(t, return_inverse=True)
    run = propagate(GeneralPath.from_spec(s), ctl, uniq)
    return EvolutionSeries(s, "oracle", t, run.a0[inv], run.a1[inv], run.infidelity[inv], dict(run.info))


def compare_series(a: EvolutionSeries, b: EvolutionSeries) -> float:
    """Largest pointwise infidelity difference between two runs on one grid."""
    ta, tb = np.asarray(a.times), np.asarray(b.times)
    if ta.shape != tb.shape or not np.array_equal(ta, tb):
        raise GridMismatch("series are sampled on different time grids")
    return float(np.max(np.abs(np.asarray(a.infidelity) - np.asarray(b.infidelity))))
