"""Gauss hypergeometric function 2F1(a, b; c; z) for complex parameters, 0 <= z < 1.

Near the origin the defining power series is summed directly. When the
parameters are large the series cancels badly long before z gets close to
one, so the value is instead carried along [0, z] by Taylor-stepping the
hypergeometric differential equation, starting from a short series step at
the origin.
"""

from __future__ import annotations

import cmath
import math

from ..errors import InvalidParameter, NoConvergence
from .control import DEFAULT_CONTROL, EPS, SeriesControl
from .gamma import is_pole

_INF = float("inf")
_MAX_ORDER = 400


def _check(c: complex, z: float) -> None:
    if is_pole(c):
        raise InvalidParameter(f"c = {c.real:g} is a nonpositive integer")
    if not 0.0 <= z < 1.0:
        raise InvalidParameter(f"argument z = {z!r} must lie in [0, 1)")


def _ratio(a: complex, b: complex, c: complex, k: int) -> float:
    return abs((a + k) * (b + k) / ((c + k) * (k + 1)))


def _series(a: complex, b: complex, c: complex, z: float, ctl: SeriesControl):
    """Direct summation; returns (F, F', rel_err)."""
    term = 1.0 + 0j
    val = term
    der = 0j
    mag = 1.0
    settle = int(abs(a) + abs(b) + abs(c)) + 2
    for k in range(ctl.max_terms):
        # F' picks up k * t_k / z; build it from the next term to avoid dividing by z
        step = (a + k) * (b + k) / ((c + k) * (k + 1))
        der += (k + 1) * term * step
        term *= step * z
        val += term
        mag += abs(term)
        if not (math.isfinite(abs(val)) and math.isfinite(abs(der))):
            raise NoConvergence("hypergeometric series overflowed")
        if term == 0:
            break
        if k >= settle:
            rho = max(_ratio(a, b, c, k + 1) * z, z)
            if rho < 1.0:
                tail = abs(term) * rho / (1.0 - rho)
                if tail <= ctl.rel_tol * abs(val) and k * tail <= ctl.rel_tol * (abs(der) * z + abs(val)):
                    break
    else:
        raise NoConvergence(f"hypergeometric series needs more than {ctl.max_terms} terms")
    err = 8.0 * EPS * mag / abs(val) if val != 0 else _INF
    return val, der, err


def _taylor_step(a, b, c, z0: float, y: complex, dy: complex, h: float):
    """Advance (w, w') of Euler's equation from z0 to z0 + h (0 < z0 < 1)."""
    p0 = z0 * (1.0 - z0)
    p1 = 1.0 - 2.0 * z0
    q0 = c - (a + b + 1.0) * z0
    q1 = -(a + b + 1.0)
    r = -a * b
    ck, ck1 = y, dy * h  # scaled coefficients c_k h^k
    val = ck + ck1
    der = dy
    mag = abs(ck) + abs(ck1)
    small = 0
    k = 0
    while True:
        num = (p1 * k + q0) * (k + 1) * ck1 * h + (-k * (k - 1) + q1 * k + r) * ck * h * h
        ck2 = -num / (p0 * (k + 2) * (k + 1))
        val += ck2
        der += (k + 2) * ck2 / h
        mag += abs(ck2)
        scale = abs(val) + abs(der * h)
        if (k + 2) * abs(ck2) <= 1e-18 * scale:
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        ck, ck1 = ck1, ck2
        k += 1
        if k > _MAX_ORDER:
            return None
    return val, der, mag


def _local_rate(a, b, c, z0: float) -> float:
    # magnitude of the local exponents of the frozen-coefficient equation
    p0 = z0 * (1.0 - z0)
    q0 = c - (a + b + 1.0) * z0
    disc = cmath.sqrt(q0 * q0 + 4.0 * p0 * a * b)
    return max(abs(-q0 + disc), abs(-q0 - disc)) / (2.0 * p0)


def _march(a, b, c, start: float, y: complex, dy: complex, err0: float, targets):
    """Carry (w, w') from ``start`` through the increasing ``targets``.

    Returns a list of (w, w', rel_err), one per target. Each step's rounding
    is pushed through the transfer matrices of the later steps, so the
    estimate accounts for growth of the competing solution.
    """
    pos = start
    y_start, dy_start = y, dy
    mats = []
    local = []
    stops = []
    for end in targets:
        while pos < end:
            h = min(0.5 * min(pos, 1.0 - pos), 1.5 / max(_local_rate(a, b, c, pos), 1e-300), end - pos)
            if end - pos - h < 1e-15:
                h = end - pos
            while True:
                sa = _taylor_step(a, b, c, pos, 1.0 + 0j, 0j, h)
                sb = _taylor_step(a, b, c, pos, 0j, 1.0 + 0j, h)
                if sa is not None and sb is not None:
                    break
                h *= 0.5
                if h < 1e-14:
                    raise NoConvergence("hypergeometric Taylor step size underflow")
            (ua, da, ma), (ub, db, mb) = sa, sb
            local.append(4.0 * EPS * (ma * abs(y) + mb * abs(dy)))
            y, dy = ua * y + ub * dy, da * y + db * dy
            if not (math.isfinite(abs(y)) and math.isfinite(abs(dy))):
                raise NoConvergence("overflow while integrating the hypergeometric equation")
            mats.append((ua, ub, da, db))
            pos = end if h == end - pos else pos + h
        stops.append((len(mats), y, dy))
    out = []
    for n, val, der in stops:
        r0, r1 = 1.0 + 0j, 0j
        err = 0.0
        for i in range(n - 1, -1, -1):
            ua, ub, da, db = mats[i]
            err += (abs(r0) + abs(r1)) * local[i]
            r0, r1 = r0 * ua + r1 * da, r0 * ub + r1 * db
        err += err0 * (abs(r0 * y_start) + abs(r1 * dy_start))
        out.append((val, der, err / abs(val) if val != 0 else _INF))
    return out


def _first_step(a, b, c) -> float:
    # keep every term ratio of the origin series below ~1/2
    peak = max(_ratio(a, b, c, k) for k in range(int(abs(a) + abs(b)) + 4))
    return min(0.25, 0.5 / max(peak, 1e-300))


def gauss_2f1_grid(a, b, c, zs, ctl: SeriesControl = DEFAULT_CONTROL):
    """(F, dF/dz, rel_err) for 2F1(a, b; c; z) at every z of ``zs``.

    One pass over the sorted arguments, so a dense grid costs little more
    than its largest point.
    """
    a, b, c = complex(a), complex(b), complex(c)
    zs = [float(z) for z in zs]
    for z in zs:
        _check(c, z)
    results: dict[float, tuple[complex, complex, float]] = {}
    far = []
    z1 = _first_step(a, b, c)
    for z in sorted(set(zs)):
        if z == 0.0:
            results[z] = (1.0 + 0j, a * b / c, 0.0)
        elif z <= z1:
            results[z] = _series(a, b, c, z, ctl)
        else:
            far.append(z)
    if far:
        y, dy, err1 = _series(a, b, c, z1, ctl)
        for z, res in zip(far, _march(a, b, c, z1, y, dy, err1, far)):
            results[z] = res
    return [results[z] for z in zs]


def gauss_2f1_pair(a, b, c, z: float, ctl: SeriesControl = DEFAULT_CONTROL):
    """Return (F, dF/dz, rel_err) for 2F1(a, b; c; z)."""
    a, b, c, z = complex(a), complex(b), complex(c), float(z)
    _check(c, z)
    if 0.0 < z <= 0.5:
        try:
            val, der, err = _series(a, b, c, z, ctl)
            if err <= ctl.accuracy:
                return val, der, err
        except NoConvergence:
            pass
    return gauss_2f1_grid(a, b, c, [z], ctl)[0]


def gauss_2f1(a, b, c, z: float, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """2F1(a, b; c; z) for complex a, b, c and real 0 <= z < 1."""
    val, _, err = gauss_2f1_pair(a, b, c, z, ctl)
    if not math.isfinite(abs(val)) or err > 1e3 * ctl.accuracy:
        raise NoConvergence(f"2F1 reached only relative accuracy {err:.1e}")
    return val


def gauss_2f1_dz(a, b, c, z: float, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z)."""
    a, b, c = complex(a), complex(b), complex(c)
    _check(c, float(z))
    return a * b / c * gauss_2f1(a + 1, b + 1, c + 1, z, ctl)
