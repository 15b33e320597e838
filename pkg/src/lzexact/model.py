"""Two-level Landau-Zener Hamiltonian, its eigensystem and the three driving paths.

Units: energies in units of epsilon, times in hbar/epsilon. A path is always
evaluated in closed form at the requested time, never tabulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DegeneratePoint, InvalidParameter, TimeOutOfRange

VARIANTS = ("A", "B", "C")

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)


@dataclass(frozen=True)
class ParamPoint:
    """A point (x, y, z) of the control-parameter space."""

    x: float
    y: float
    z: float

    @classmethod
    def from_spherical(cls, r: float, theta: float, phi: float) -> "ParamPoint":
        s = math.sin(theta)
        return cls(r * s * math.cos(phi), r * s * math.sin(phi), r * math.cos(theta))

    @property
    def r(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    @property
    def theta(self) -> float:
        # same angle as arccos(z/r), without its loss of accuracy near the poles
        return math.atan2(math.hypot(self.x, self.y), self.z)

    @property
    def phi(self) -> float:
        if self.x == 0.0 and self.y == 0.0:
            return 0.0
        return math.atan2(self.y, self.x) % (2.0 * math.pi)

    @property
    def gap(self) -> float:
        """Energy gap E1 - E0 = 2r."""
        return 2.0 * self.r

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class PathSpec:
    """Driving protocol from (x0, 0, -z0) to (x0, 0, +z0) in total time T."""

    variant: str
    x0: float
    z0: float
    T: float

    def __post_init__(self) -> None:
        v = str(self.variant).upper()
        if v not in VARIANTS:
            raise InvalidParameter(f"unknown path variant {self.variant!r}; expected one of A, B, C")
        object.__setattr__(self, "variant", v)
        for name in ("x0", "z0", "T"):
            val = float(getattr(self, name))
            if not (math.isfinite(val) and val > 0.0):
                raise InvalidParameter(f"{name} must be positive and finite, got {getattr(self, name)!r}")
            object.__setattr__(self, name, val)

    @property
    def r0(self) -> float:
        return math.hypot(self.x0, self.z0)

    @property
    def alpha0(self) -> float:
        return math.atan2(self.z0, self.x0)

    def with_time(self, T: float) -> "PathSpec":
        return PathSpec(self.variant, self.x0, self.z0, T)

    def with_variant(self, variant: str) -> "PathSpec":
        return PathSpec(variant, self.x0, self.z0, self.T)


def hamiltonian(p: ParamPoint) -> np.ndarray:
    """H = -[[z, x - iy], [x + iy, -z]]."""
    return -np.array([[p.z, complex(p.x, -p.y)], [complex(p.x, p.y), -p.z]], dtype=complex)


@dataclass(frozen=True)
class EigenSystem:
    energies: tuple[float, float]
    ground: np.ndarray
    excited: np.ndarray

    @property
    def gap(self) -> float:
        return self.energies[1] - self.energies[0]


def eigenvectors(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    e = complex(math.cos(phi), math.sin(phi))
    ground = np.array([c, e * s], dtype=complex)
    excited = np.array([-e.conjugate() * s, c], dtype=complex)
    return ground, excited


def eigensystem(p: ParamPoint) -> EigenSystem:
    r = p.r
    if r == 0.0:
        raise DegeneratePoint("the two levels are degenerate at r = 0")
    ground, excited = eigenvectors(p.theta, p.phi)
    return EigenSystem((-r, r), ground, excited)


def rotation_from_pole(theta: float, phi: float) -> np.ndarray:
    """exp(i (sin(phi) sx - cos(phi) sy) theta / 2).

    The generator squares to -1, so the exponential is
    cos(theta/2) + sin(theta/2) * generator.
    """
    gen = 1j * (math.sin(phi) * _SX - math.cos(phi) * _SY)
    return math.cos(0.5 * theta) * np.eye(2, dtype=complex) + math.sin(0.5 * theta) * gen


# --- paths ------------------------------------------------------------------


def _check_time(s: PathSpec, t: float) -> float:
    t = float(t)
    if not (0.0 <= t <= s.T):
        raise TimeOutOfRange(f"t = {t!r} outside [0, {s.T!r}]")
    return t


def path_angle(s: PathSpec, t: float) -> float:
    """alpha(t) = alpha0 (2t/T - 1), the angle shared by paths B and C."""
    return s.alpha0 * (2.0 * t / s.T - 1.0)


def path_point(s: PathSpec, t: float) -> ParamPoint:
    t = _check_time(s, t)
    # the endpoints are returned exactly, whatever rounding tan/cos would add
    if t == 0.0:
        return ParamPoint(s.x0, 0.0, -s.z0)
    if t == s.T:
        return ParamPoint(s.x0, 0.0, s.z0)
    if s.variant == "A":
        return ParamPoint(s.x0, 0.0, s.z0 * (2.0 * t / s.T - 1.0))
    alpha = path_angle(s, t)
    if s.variant == "B":
        return ParamPoint(s.x0, 0.0, s.x0 * math.tan(alpha))
    return ParamPoint(s.r0 * math.cos(alpha), 0.0, s.r0 * math.sin(alpha))


def path_velocity(s: PathSpec, t: float) -> np.ndarray:
    """Time derivative (dx/dt, dy/dt, dz/dt) of the path."""
    t = _check_time(s, t)
    if s.variant == "A":
        return np.array([0.0, 0.0, 2.0 * s.z0 / s.T])
    alpha = path_angle(s, t)
    rate = 2.0 * s.alpha0 / s.T
    if s.variant == "B":
        return np.array([0.0, 0.0, s.x0 * rate / math.cos(alpha) ** 2])
    return np.array([-s.r0 * math.sin(alpha) * rate, 0.0, s.r0 * math.cos(alpha) * rate])


def plain_speed(s: PathSpec, t: float) -> float:
    """Euclidean speed |dr/dt| in parameter space."""
    t = _check_time(s, t)
    if s.variant == "A":
        return 2.0 * s.z0 / s.T
    if s.variant == "B":
        return s.alpha0 * path_point(s, t).gap ** 2 / (2.0 * s.x0 * s.T)
    return 2.0 * s.alpha0 * s.r0 / s.T


def metric_speed(s: PathSpec, t: float) -> float:
    """Speed measured with the ground-state metric, |d theta/dt| / 2 here."""
    t = _check_time(s, t)
    if s.variant == "A":
        return 4.0 * s.x0 * s.z0 / (s.T * path_point(s, t).gap ** 2)
    return s.alpha0 / s.T


def metric_length(s: PathSpec) -> float:
    """Integral of the metric speed over [0, T]."""
    f = lambda t: metric_speed(s, t)  # noqa: E731
    if s.variant == "A":
        # sharp peak of width ~ x0 T / z0 at the midpoint
        half = 0.5 * s.T
        kw = dict(epsabs=0.0, epsrel=1e-12, limit=200)
        left, _ = quad(f, 0.0, half, **kw)
        right, _ = quad(f, half, s.T, **kw)
        return left + right
    val, _ = quad(f, 0.0, s.T, epsabs=0.0, epsrel=1e-12, limit=200)
    return val


# --- metric -----------------------------------------------------------------


def metric_tensor(p: ParamPoint) -> np.ndarray:
    """Closed-form metric in spherical components (r, theta, phi)."""
    if p.r == 0.0:
        raise DegeneratePoint("metric undefined at r = 0")
    s = math.sin(p.theta)
    return np.diag([0.0, 0.25, 0.25 * s * s])


def hamiltonian_gradient(p: ParamPoint) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """dH/dr, dH/dtheta, dH/dphi written in closed form."""
    r, th, ph = p.r, p.theta, p.phi
    e = complex(math.cos(ph), math.sin(ph))
    ct, st = math.cos(th), math.sin(th)

    def h(c, s_plus, s_minus):
        return -np.array([[c, s_minus], [s_plus, -c]], dtype=complex)

    d_r = h(ct, st * e, st * e.conjugate())
    d_th = h(-r * st, r * ct * e, r * ct * e.conjugate())
    d_ph = h(0.0, 1j * r * st * e, -1j * r * st * e.conjugate())
    return d_r, d_th, d_ph


def metric_tensor_from_eigensystem(p: ParamPoint) -> np.ndarray:
    """Re <E0|dH_mu|E1><E1|dH_nu|E0> / (E1 - E0)^2 in spherical components."""
    es = eigensystem(p)
    grads = hamiltonian_gradient(p)
    elems = [np.vdot(es.ground, g @ es.excited) for g in grads]
    g = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            g[i, j] = (elems[i] * elems[j].conjugate()).real / es.gap**2
    return g
