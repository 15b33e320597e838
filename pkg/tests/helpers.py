"""Residual checks and parameter draws shared by the special-function tests."""

from __future__ import annotations

import cmath
import math
import random

from lzexact.specfun import gauss_2f1_pair, pcf_d, pcf_d_derivative, rgamma

# eighth-order central first-derivative weights on offsets -4..4
D1_WEIGHTS = (1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280)


def central_diff(f, x, h):
    return sum(w * f(x + (k - 4) * h) for k, w in enumerate(D1_WEIGHTS) if w) / h


def weber_residual(eta: complex, xi: complex, k: float = 0.05) -> float:
    """|D'' + (eta + 1/2 - xi^2/4) D| / max(1, |D|) with D'' differenced from D'.

    The step follows the local wavelength of the equation, so truncation and
    rounding stay balanced for small and large |xi| alike.
    """
    f = xi * xi / 4 - eta - 0.5
    h = k / math.sqrt(abs(f) + 1.0)
    d2 = central_diff(lambda x: pcf_d_derivative(eta, x), xi, h)
    d = pcf_d(eta, xi)
    return abs(d2 - f * d) / max(1.0, abs(d))


def euler_residual(a, b, c, z: float, k: float = 0.02) -> float:
    """Residual of z(1-z)F'' + [c - (a+b+1)z]F' - abF, relative to its terms."""
    p, q = z * (1 - z), c - (a + b + 1) * z
    disc = cmath.sqrt(q * q + 4 * p * a * b)
    rate = max(abs(-q + disc), abs(-q - disc)) / (2 * p) + 1.0
    h = min(k / rate, 0.2 * min(z, 1 - z))
    f2 = central_diff(lambda x: gauss_2f1_pair(a, b, c, x)[1], z, h)
    f, f1 = gauss_2f1_pair(a, b, c, z)[:2]
    terms = (p * f2, q * f1, -a * b * f)
    return abs(sum(terms)) / sum(abs(t) for t in terms)


def pcf_wronskian(eta: complex, xi: complex) -> tuple[float, float]:
    """Relative Wronskian residual and the size of the cancelling products.

    W{D(xi), D(-xi)} = D(xi) d/dxi[D(-xi)] - D'(xi) D(-xi) = sqrt(2 pi) / Gamma(-eta).
    """
    p1 = -pcf_d(eta, xi) * pcf_d_derivative(eta, -xi)
    p2 = -pcf_d_derivative(eta, xi) * pcf_d(eta, -xi)
    ref = math.sqrt(2 * math.pi) * rgamma(-eta)
    return abs(p1 + p2 - ref) / abs(ref), (abs(p1) + abs(p2)) / abs(ref)


def hyp_wronskian(a: complex, x: float) -> tuple[float, float]:
    """Residual of the Wronskian of the pair about q = 1, as a function of x = 1 - q.

    w1 = F(a, a; 1/2; x), w2 = sqrt(x) F(1/2+a, 1/2+a; 3/2; x) solve the Euler
    equation with c = 1/2 + 2a in q; their x-Wronskian is x^(-1/2) (1-x)^(-c) / 2.
    """
    c = 0.5 + 2 * a
    f1, d1 = gauss_2f1_pair(a, a, 0.5, x)[:2]
    f2, d2 = gauss_2f1_pair(0.5 + a, 0.5 + a, 1.5, x)[:2]
    s = math.sqrt(x)
    w2, dw2 = s * f2, 0.5 / s * f2 + s * d2
    p1, p2 = f1 * dw2, -d1 * w2
    ref = 0.5 / s * cmath.exp(-c * math.log1p(-x))
    return abs(p1 + p2 - ref) / abs(ref), (abs(p1) + abs(p2)) / abs(ref)


def disc_point(r: random.Random, radius: float, r_min: float = 0.0) -> complex:
    while True:
        z = complex(r.uniform(-radius, radius), r.uniform(-radius, radius))
        if r_min < abs(z) <= radius:
            return z


def pcf_draw(r: random.Random) -> tuple[complex, complex]:
    """|eta| <= 5 non-integer, |xi| <= 5."""
    while True:
        eta = disc_point(r, 5.0)
        if eta.imag != 0 or eta.real != round(eta.real):
            return eta, disc_point(r, 5.0)


def hyp_draw(r: random.Random) -> tuple[complex, float]:
    """Parameters the path-B solver can reach: a = -i x0 T / (4 alpha0), x in (0, 1 - q0).

    x0, z0 and T span the ranges used for the normalization property
    (x0 in [0.05, 1], z0 in [0.1, 1], T log-uniform in [0.1, 100]).
    """
    x0, z0 = r.uniform(0.05, 1.0), r.uniform(0.1, 1.0)
    T = math.exp(r.uniform(math.log(0.1), math.log(100.0)))
    r0 = math.hypot(x0, z0)
    a = -0.25j * x0 * T / math.atan2(z0, x0)
    return a, r.uniform(1e-3, 1.0 - (x0 / r0) ** 2)


def complex_hyp_draw(r: random.Random) -> tuple[complex, float]:
    """Complex a with |a| <= 5 off the real axis, x in (0.01, 0.95)."""
    while True:
        a = disc_point(r, 5.0)
        if abs(a.imag) > 1e-3:
            return a, r.uniform(0.01, 0.95)
