"""Complex gamma function.

Stirling series for |z| >= 15, upward recurrence to get there, and the
reflection formula far in the left half-plane.
"""

from __future__ import annotations

import cmath
import math

from ..errors import PoleOfGamma

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_STIRLING_RADIUS = 15.0

# B_2k / (2k (2k - 1)), k = 1..7
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)


def is_pole(z: complex) -> bool:
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _log_sin_pi(z: complex) -> complex:
    # log(sin(pi z)) modulo 2*pi*i, without overflow for large |Im z|.
    if abs(z.imag) < 20.0:
        return cmath.log(cmath.sin(math.pi * z))
    if z.imag > 0.0:
        return -1j * math.pi * z + cmath.log(0.5j) + cmath.log(1.0 - cmath.exp(2j * math.pi * z))
    return 1j * math.pi * z + cmath.log(-0.5j) + cmath.log(1.0 - cmath.exp(-2j * math.pi * z))


def _rising(z: complex, n: int) -> complex:
    p = complex(1.0)
    for k in range(n):
        p *= z + k
    return p


def _stirling(z: complex) -> complex:
    x, y = z.real, z.imag
    log_abs = math.log(math.hypot(x, y))
    arg = math.atan2(y, x)
    # the leading terms are large for big |Im z|; sum them exactly rounded
    re = math.fsum(((x - 0.5) * log_abs, -y * arg, -x, _HALF_LOG_2PI))
    im = math.fsum(((x - 0.5) * arg, y * log_abs, -y))
    w = 1.0 / z
    w2 = w * w
    corr = 0j
    for c in reversed(_STIRLING):
        corr = corr * w2 + c
    return complex(re, im) + corr * w


def log_gamma(z: complex) -> complex:
    """log Gamma(z), correct modulo 2*pi*i (only meant to be exponentiated)."""
    z = complex(z)
    if is_pole(z):
        raise PoleOfGamma(f"Gamma has a pole at {z.real:g}")
    if z.real < -60.0:
        return _LOG_PI - _log_sin_pi(z) - log_gamma(1.0 - z)
    if abs(z) >= _STIRLING_RADIUS and z.real >= 0.5:
        return _stirling(z)
    n = 0
    while abs(z + n) < _STIRLING_RADIUS or (z + n).real < 0.5:
        n += 1
    return _stirling(z + n) - cmath.log(_rising(z, n))


def gamma_complex(z: complex) -> complex:
    """Gamma(z) for complex z; raises PoleOfGamma at 0, -1, -2, ..."""
    z = complex(z)
    if z.imag == 0.0 and z.real > 0.0 and z.real == math.floor(z.real) and z.real < 171:
        return complex(math.factorial(int(z.real) - 1))
    try:
        g = cmath.exp(log_gamma(z))
    except OverflowError:
        raise OverflowError(f"Gamma({z}) overflows double precision") from None
    return complex(g.real, 0.0) if z.imag == 0.0 else g


def rgamma(z: complex) -> complex:
    """1/Gamma(z), an entire function: zero at the poles of Gamma."""
    z = complex(z)
    if is_pole(z):
        return 0j
    try:
        return cmath.exp(-log_gamma(z))
    except OverflowError:
        raise OverflowError(f"1/Gamma({z}) overflows double precision") from None
