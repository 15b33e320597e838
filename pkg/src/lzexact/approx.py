"""Closed-form approximations to the final infidelity.

Covers the Landau-Zener value and its window of validity, the diabatic
limit, second-order adiabatic perturbation theory (closed forms per path and
the general two-level expression), and the time at which the Landau-Zener
value meets the mean APT value.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import SolverMismatch
from .model import PathSpec, eigensystem, path_point, path_velocity
from .specfun import lambert_w_m1

_INV_E = math.exp(-1.0)


def _T(s: PathSpec, T: float | None) -> float:
    return s.T if T is None else float(T)


# --- Landau-Zener -----------------------------------------------------------


def lz_formula(min_distance: float, speed: float) -> float:
    """exp(-pi r_min^2 / u) for an infinite straight sweep at speed u."""
    return math.exp(-math.pi * min_distance**2 / speed)


def lz_final_infidelity(s: PathSpec, T: float | None = None) -> float:
    """exp(-pi x0^2 T / 2 z0); only meaningful for the linear sweep."""
    if s.variant != "A":
        raise SolverMismatch("the Landau-Zener estimate applies to path A only")
    return math.exp(-math.pi * s.x0**2 * _T(s, T) / (2.0 * s.z0))


@dataclass(frozen=True)
class LZWindow:
    t_minus: float
    t_plus: float


def lz_validity_window(x0: float, z0: float) -> LZWindow | None:
    """Range of T where the Landau-Zener value can apply; None if it closes."""
    disc = 1.0 - x0**4 / (4.0 * z0**4)
    # z0 = x0/sqrt(2) is the closed boundary; its discriminant rounds to a few ulp
    if disc <= 8.0 * sys.float_info.epsilon:
        return None
    pre = 8.0 * z0**3 / x0**4
    root = math.sqrt(disc)
    # T- = pre (1 - root) loses digits when root ~ 1; use T- T+ = pre^2 (1 - root^2)
    t_plus = pre * (1.0 + root)
    t_minus = pre * pre * (x0**4 / (4.0 * z0**4)) / t_plus
    return LZWindow(t_minus, t_plus)


def diabatic_limit(s: PathSpec) -> float:
    """T -> 0 limit of the final infidelity, z0^2 / r0^2."""
    return s.z0**2 / s.r0**2


# --- adiabatic perturbation theory ------------------------------------------


def _log_ratio(s: PathSpec) -> float:
    # ln((r0 + z0)/(r0 - z0)) = 2 artanh(z0/r0), stable for small x0
    return 2.0 * math.atanh(s.z0 / s.r0)


def apt_envelope(s: PathSpec, T: float | None = None) -> float:
    T = _T(s, T)
    if s.variant == "A":
        return (s.x0 * s.z0) ** 2 / (s.r0**6 * T * T)
    return s.alpha0**2 / (s.r0**2 * T * T)


def _apt_phase(s: PathSpec, T: float) -> float:
    """Half the accumulated dynamical phase difference."""
    if s.variant == "A":
        return 0.5 * T * (s.r0 + s.x0**2 / (2.0 * s.z0) * _log_ratio(s))
    if s.variant == "B":
        return 0.5 * T * s.x0 / s.alpha0 * _log_ratio(s)
    return T * s.r0


def apt_final_infidelity(s: PathSpec, T: float | None = None) -> float:
    T = _T(s, T)
    return apt_envelope(s, T) * math.sin(_apt_phase(s, T)) ** 2


def dynamical_phase(s: PathSpec, T: float | None = None) -> float:
    """Integral of the gap 2 r(t) over [0, T], by adaptive quadrature."""
    s = s.with_time(_T(s, T))
    f = lambda t: path_point(s, t).gap  # noqa: E731
    half = 0.5 * s.T
    kw = dict(epsabs=0.0, epsrel=1e-13, limit=400)
    return quad(f, 0.0, half, **kw)[0] + quad(f, half, s.T, **kw)[0]


_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _coupling(s: PathSpec, t: float) -> tuple[complex, float]:
    """sum_mu mu_dot <E0|dH/dmu|E1> and the gap, Cartesian components."""
    p = path_point(s, t)
    es = eigensystem(p)
    vel = path_velocity(s, t)
    m = 0j
    for mu in range(3):
        # H = -(x sx + y sy + z sz), so dH/dmu = -sigma_mu
        m += vel[mu] * np.vdot(es.ground, -_SIGMA[mu] @ es.excited)
    return complex(m), es.gap


def apt_general_second_order(s: PathSpec, T: float | None = None) -> float:
    """Leading APT term from the general two-level expression.

    Boundary terms v^2/gap^2 at both ends plus the interference term with
    the accumulated phase; the gauge of the real eigenvectors makes the
    geometric phases vanish, so only the dynamical phase enters.
    """
    s = s.with_time(_T(s, T))
    mT, gT = _coupling(s, s.T)
    m0, g0 = _coupling(s, 0.0)
    bT = mT / gT**2
    b0 = m0 / g0**2
    phase = dynamical_phase(s)
    cross = (complex(math.cos(phase), -math.sin(phase)) * bT * b0.conjugate()).real
    return abs(bT) ** 2 + abs(b0) ** 2 - 2.0 * cross


# --- crossover --------------------------------------------------------------


def crossover_argument(x0: float, z0: float) -> float:
    r0 = math.hypot(x0, z0)
    return -math.pi * x0**3 / (4.0 * math.sqrt(2.0) * r0**3)


def crossover_time(x0: float, z0: float) -> float | None:
    """T at which the Landau-Zener value equals half the path A APT envelope."""
    arg = crossover_argument(x0, z0)
    if arg < -_INV_E:
        return None
    return -4.0 * z0 / (math.pi * x0**2) * lambert_w_m1(arg)


def crossover_threshold_ratio() -> float:
    """Smallest z0/x0 for which the crossover time exists."""
    return math.sqrt((math.e * math.pi / (4.0 * math.sqrt(2.0))) ** (2.0 / 3.0) - 1.0)


@dataclass(frozen=True)
class ApproximationReport:
    spec: PathSpec
    lz_value: float | None
    lz_window: LZWindow | None
    diabatic_limit: float
    apt_value: float
    apt_envelope: float
    crossover_time: float | None


def approximation_report(s: PathSpec) -> ApproximationReport:
    is_a = s.variant == "A"
    return ApproximationReport(
        spec=s,
        lz_value=lz_final_infidelity(s) if is_a else None,
        lz_window=lz_validity_window(s.x0, s.z0) if is_a else None,
        diabatic_limit=diabatic_limit(s),
        apt_value=apt_final_infidelity(s),
        apt_envelope=apt_envelope(s),
        crossover_time=crossover_time(s.x0, s.z0) if is_a else None,
    )
