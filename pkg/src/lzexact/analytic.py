"""Exact propagators for the three driving paths.

Path A is solved with parabolic cylinder functions, path B with Gauss
hypergeometric functions of sin^2(alpha), and path C in the frame rotating
with the driving angle, where the Hamiltonian is constant. Each solver fixes
its integration constants from the ground state at t = 0 once and can then be
evaluated at any set of times.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import InvalidParameter, SolverMismatch, TimeOutOfRange
from .model import PathSpec, path_angle
from .series import AmplitudePair, EvolutionSeries
from .specfun import DEFAULT_CONTROL, SeriesControl, gauss_2f1_grid, pcf_d, rgamma

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def initial_state(s: PathSpec) -> AmplitudePair:
    """Ground state at (x0, 0, -z0)."""
    r0 = s.r0
    n = math.sqrt(2.0 * r0)
    return AmplitudePair(complex(math.sqrt(r0 - s.z0) / n), complex(math.sqrt(r0 + s.z0) / n))


def _times(s: PathSpec, times) -> np.ndarray:
    t = np.atleast_1d(np.asarray(times, dtype=float))
    if t.size and (t.min() < 0.0 or t.max() > s.T):
        raise TimeOutOfRange(f"times must lie in [0, {s.T!r}]")
    return t


class _Solver:
    variant = ""

    def __init__(self, s: PathSpec, ctl: SeriesControl = DEFAULT_CONTROL):
        if s.variant != self.variant:
            raise SolverMismatch(f"path {s.variant} handed to the path {self.variant} solver")
        self.spec = s
        self.ctl = ctl
        self.a_init = initial_state(s)

    def amplitudes(self, times) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def __call__(self, t: float) -> AmplitudePair:
        a0, a1 = self.amplitudes([t])
        return AmplitudePair(complex(a0[0]), complex(a1[0]))


class PathASolver(_Solver):
    """Linear sweep of z at fixed coupling x0.

    With Z = z sqrt(T / 2 z0) the amplitude a0 obeys a Weber equation; the
    solutions are D_eta(+-(1 - i) Z) with eta = i X0^2 / 2.
    """

    variant = "A"

    def __init__(self, s: PathSpec, ctl: SeriesControl = DEFAULT_CONTROL):
        super().__init__(s, ctl)
        self.scale = math.sqrt(s.T / (2.0 * s.z0))
        self.X0 = s.x0 * self.scale
        self.eta = 0.5j * self.X0**2
        xi0 = (1 - 1j) * (-s.z0 * self.scale)
        eta, X0 = self.eta, self.X0
        c0, c1 = self.a_init.a0, self.a_init.a1
        pref = 1.0 / (rgamma(1.0 - eta) * _SQRT_2PI)
        self.A_plus = pref * (pcf_d(eta - 1, -xi0, ctl) * c0 + (1 + 1j) / X0 * pcf_d(eta, -xi0, ctl) * c1)
        self.A_minus = pref * (pcf_d(eta - 1, xi0, ctl) * c0 - (1 + 1j) / X0 * pcf_d(eta, xi0, ctl) * c1)

    def Z(self, t: float) -> float:
        return self.spec.z0 * (2.0 * t / self.spec.T - 1.0) * self.scale

    def amplitudes(self, times):
        t = _times(self.spec, times)
        a0 = np.empty(t.size, dtype=complex)
        a1 = np.empty(t.size, dtype=complex)
        eta, ctl = self.eta, self.ctl
        k = 0.5 * (1 - 1j) * self.X0
        for i, ti in enumerate(t):
            xi = (1 - 1j) * self.Z(ti)
            a0[i] = self.A_plus * pcf_d(eta, xi, ctl) + self.A_minus * pcf_d(eta, -xi, ctl)
            a1[i] = k * (self.A_plus * pcf_d(eta - 1, xi, ctl) - self.A_minus * pcf_d(eta - 1, -xi, ctl))
        return a0, a1


class PathBSolver(_Solver):
    """z = x0 tan(alpha) at fixed x0, alpha linear in t.

    In q = cos^2(alpha) the equation for a0 q^(-a) is hypergeometric with
    a = b = -i x0 T / (4 alpha0) and c = 1/2 + 2a; the two solutions about
    q = 1 are 2F1(a, a; 1/2; sin^2) and sin * 2F1(1/2 + a, 1/2 + a; 3/2; sin^2).
    """

    variant = "B"

    def __init__(self, s: PathSpec, ctl: SeriesControl = DEFAULT_CONTROL):
        super().__init__(s, ctl)
        self.a = -0.25j * s.x0 * s.T / s.alpha0
        self.c = 0.5 + 2.0 * self.a
        # c - a - b = 1/2, so the pair of solutions about q = 1 never degenerates
        assert self.c - 2.0 * self.a == 0.5
        self.rate = 2.0 * s.alpha0 / s.T
        (w1, w2), (d1, d2), q = self._basis(np.array([0.0]))
        qa = cmath.exp(self.a * math.log(q[0]))
        rhs0 = self.a_init.a0 / qa
        rhs1 = 1j * s.x0 * self.a_init.a1 / qa
        det = w1[0] * d2[0] - w2[0] * d1[0]
        self.B1 = (rhs0 * d2[0] - w2[0] * rhs1) / det
        self.B2 = (w1[0] * rhs1 - rhs0 * d1[0]) / det
        self.wronskian0 = det

    def _basis(self, t: np.ndarray):
        """w1, w2, their time derivatives and q = cos^2(alpha) at times t."""
        alpha = np.array([path_angle(self.spec, ti) for ti in t])
        if t.size and t[0] == 0.0:
            alpha[0] = -self.spec.alpha0
        sn, cs = np.sin(alpha), np.cos(alpha)
        zs = sn * sn
        a = self.a
        f1 = gauss_2f1_grid(a, a, 0.5, zs, self.ctl)
        f2 = gauss_2f1_grid(0.5 + a, 0.5 + a, 1.5, zs, self.ctl)
        F1 = np.array([v[0] for v in f1])
        F1d = np.array([v[1] for v in f1])
        F2 = np.array([v[0] for v in f2])
        F2d = np.array([v[1] for v in f2])
        dz = 2.0 * sn * cs * self.rate  # d(sin^2 alpha)/dt
        w1 = F1
        w2 = sn * F2
        d1 = F1d * dz
        d2 = cs * self.rate * F2 + sn * F2d * dz
        return (w1, w2), (d1, d2), cs * cs

    def amplitudes(self, times):
        t = _times(self.spec, times)
        (w1, w2), (d1, d2), q = self._basis(t)
        qa = np.exp(self.a * np.log(q))
        a0 = qa * (self.B1 * w1 + self.B2 * w2)
        a1 = -1j / self.spec.x0 * qa * (self.B1 * d1 + self.B2 * d2)
        return a0, a1


class PathCSolver(_Solver):
    """Circular arc at constant angular speed, solved in the co-rotating frame."""

    variant = "C"

    def __init__(self, s: PathSpec, ctl: SeriesControl = DEFAULT_CONTROL):
        super().__init__(s, ctl)
        self.omega = s.alpha0 / s.T
        self.tau = math.pi / math.hypot(s.r0, self.omega)

    def AB(self, t: float) -> tuple[complex, complex]:
        s = self.spec
        ph = math.pi * t / self.tau
        half = 0.5 * path_angle(s, t)
        c, sn = math.cos(ph), math.sin(ph)
        k = self.tau / math.pi
        A = c * math.cos(half) + k * complex(self.omega, s.r0) * sn * math.sin(half)
        B = c * math.sin(half) - k * complex(self.omega, -s.r0) * sn * math.cos(half)
        return A, B

    def matrix(self, t: float) -> np.ndarray:
        A, B = self.AB(t)
        ch, sh = math.cos(0.5 * self.spec.alpha0), math.sin(0.5 * self.spec.alpha0)
        return np.array(
            [
                [A * ch - B * sh, A * sh + B * ch],
                [-A.conjugate() * sh - B.conjugate() * ch, A.conjugate() * ch - B.conjugate() * sh],
            ]
        )

    def amplitudes(self, times):
        t = _times(self.spec, times)
        psi0 = self.a_init.as_array()
        out = np.array([self.matrix(ti) @ psi0 for ti in t]).reshape(-1, 2)
        return out[:, 0].copy(), out[:, 1].copy()


_SOLVERS = {"A": PathASolver, "B": PathBSolver, "C": PathCSolver}


def analytic_solver(s: PathSpec, ctl: SeriesControl = DEFAULT_CONTROL) -> _Solver:
    return _SOLVERS[s.variant](s, ctl)


def _solve(variant: str, s: PathSpec, t: float, ctl: SeriesControl) -> AmplitudePair:
    if s.variant != variant:
        raise SolverMismatch(f"solve_path_{variant.lower()} called for path {s.variant}")
    return _SOLVERS[variant](s, ctl)(t)


def solve_path_a(s: PathSpec, t: float, ctl: SeriesControl = DEFAULT_CONTROL) -> AmplitudePair:
    return _solve("A", s, t, ctl)


def solve_path_b(s: PathSpec, t: float, ctl: SeriesControl = DEFAULT_CONTROL) -> AmplitudePair:
    return _solve("B", s, t, ctl)


def solve_path_c(s: PathSpec, t: float, ctl: SeriesControl = DEFAULT_CONTROL) -> AmplitudePair:
    return _solve("C", s, t, ctl)


def analytic_series(s: PathSpec, times, ctl: SeriesControl = DEFAULT_CONTROL) -> EvolutionSeries:
    from .observables import infidelity_along

    t = _times(s, times)
    a0, a1 = analytic_solver(s, ctl).amplitudes(t)
    return EvolutionSeries(s, "analytic", t, a0, a1, infidelity_along(s, t, a0, a1))


def evolve_series(s: PathSpec, n_samples: int, solver: str = "analytic") -> EvolutionSeries:
    """Trajectory on a uniform grid of ``n_samples`` points over [0, T]."""
    if int(n_samples) < 2:
        raise InvalidParameter("n_samples must be at least 2")
    times = np.linspace(0.0, s.T, int(n_samples))
    return evaluate(s, times, solver)


def evaluate(s: PathSpec, times, solver: str = "analytic") -> EvolutionSeries:
    """Sample ``s`` at ``times`` with the analytic solver, the oracle, or
    ``auto`` (analytic, falling back to the oracle if a special function
    cannot reach its accuracy target or overflows)."""
    from .errors import NoConvergence
    from .oracle import propagate_spec

    if solver == "analytic":
        return analytic_series(s, times)
    if solver == "oracle":
        return propagate_spec(s, times)
    if solver == "auto":
        try:
            return analytic_series(s, times)
        except (NoConvergence, OverflowError):
            series = propagate_spec(s, times)
            series.info["fallback"] = "oracle"
            return series
    raise InvalidParameter(f"unknown solver {solver!r}; expected analytic, oracle or auto")
