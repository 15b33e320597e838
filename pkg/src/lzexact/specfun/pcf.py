"""Parabolic cylinder function D_eta(xi) with complex order and argument.

Four evaluation routes, each returning a value together with an estimate of
its relative error:

* ``maclaurin``: even/odd confluent series about xi = 0,
* ``asymptotic``: the large-|xi| expansion, truncated at its smallest term,
* ``connection``: reflection to -xi and -/+ i xi for the left half-plane,
* ``continuation``: high-order Taylor stepping of the Weber equation along a
  straight ray, started from exact data at xi = 0 (or, in the sector where
  D_eta is recessive, from the asymptotic expansion far out on the ray).

``pcf_d`` tries the first applicable route and falls back to continuation
whenever the estimate misses ``SeriesControl.accuracy``. Continuation has no
cancellation problem, so it carries the large-order cases (|eta| in the
hundreds) that the two classical series cannot.
"""

from __future__ import annotations

import cmath
import math

from ..errors import NoConvergence
from .control import DEFAULT_CONTROL, EPS, SeriesControl
from .gamma import rgamma

_SQRT_PI = math.sqrt(math.pi)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_LOG2 = math.log(2.0)
_INF = float("inf")

REGIMES = ("maclaurin", "asymptotic", "connection", "continuation")


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _value_at_zero(eta: complex) -> tuple[complex, complex]:
    """D_eta(0) and D'_eta(0)."""
    d0 = cmath.exp(0.5 * eta * _LOG2) * _SQRT_PI * rgamma(0.5 * (1.0 - eta))
    d1 = -cmath.exp(0.5 * (eta + 1.0) * _LOG2) * _SQRT_PI * rgamma(-0.5 * eta)
    return d0, d1


def _kummer(a: complex, b: float, z: complex, ctl: SeriesControl) -> tuple[complex, float]:
    """Sum of 1F1(a; b; z) and the sum of the term magnitudes."""
    term = 1.0 + 0j
    total = term
    mag = 1.0
    # beyond k_min the term ratio stays below 1/2, so the tail is < |term|
    k_min = 2.0 * abs(a) + 2.0 * b + 6.0 * abs(z) + 2.0
    k = 0
    while True:
        term *= (a + k) * z / ((b + k) * (k + 1))
        total += term
        mag += abs(term)
        k += 1
        if term == 0:
            break
        if k >= k_min and abs(term) <= ctl.rel_tol * abs(total):
            break
        if k >= ctl.max_terms:
            raise NoConvergence(f"1F1({a}; {b}; {z}) did not converge in {k} terms")
    return total, mag


def _maclaurin(eta: complex, xi: complex, ctl: SeriesControl) -> tuple[complex, float]:
    d0, d1 = _value_at_zero(eta)
    if xi == 0:
        return d0, 4.0 * EPS
    z = 0.5 * xi * xi
    s1, m1 = _kummer(-0.5 * eta, 0.5, z, ctl)
    s2, m2 = _kummer(0.5 * (1.0 - eta), 1.5, z, ctl)
    pref = cmath.exp(-0.25 * xi * xi)
    val = pref * (d0 * s1 + d1 * xi * s2)
    mag = abs(pref) * (abs(d0) * m1 + abs(d1) * abs(xi) * m2)
    if val == 0:
        return val, _INF
    return val, 8.0 * EPS * mag / abs(val)


def _asymptotic(eta: complex, xi: complex, ctl: SeriesControl) -> tuple[complex, float]:
    try:
        lead = cmath.exp(eta * cmath.log(xi) - 0.25 * xi * xi)
    except OverflowError:
        return complex(_INF, 0.0), _INF
    u = -2.0 / (xi * xi)
    a1 = -0.5 * eta
    a2 = 0.5 * (1.0 - eta)
    term = 1.0 + 0j
    total = term
    err = 0.0
    for k in range(1, ctl.max_terms):
        nxt = term * (a1 + k - 1) * (a2 + k - 1) / k * u
        if nxt == 0:
            err = 0.0
            break
        if abs(nxt) >= abs(term):
            # optimal truncation: the smallest term bounds the error
            err = abs(term) / abs(total)
            break
        term = nxt
        total += term
        if abs(term) <= EPS * abs(total):
            err = 0.0
            break
    else:
        err = abs(term) / abs(total)
    return lead * total, err + 4.0 * EPS


def _connection(eta: complex, xi: complex, ctl: SeriesControl) -> tuple[complex, float]:
    # upper half-plane: D(xi) = e^{i pi eta} D(-xi) + sqrt(2pi)/G(-eta) e^{i pi (eta+1)/2} D_{-eta-1}(-i xi)
    # lower half-plane uses the complex-conjugate form of the same identity
    s = 1.0 if xi.imag >= 0.0 else -1.0
    try:
        c1 = cmath.exp(s * 1j * math.pi * eta)
        c2 = _SQRT_2PI * rgamma(-eta) * cmath.exp(s * 0.5j * math.pi * (eta + 1.0))
    except OverflowError:
        return complex(_INF, 0.0), _INF
    v1, e1 = _evaluate(eta, -xi, ctl, allow_connection=False)
    t1 = c1 * v1
    if c2 == 0:
        t2, e2 = 0j, 0.0
    else:
        v2, e2 = _evaluate(-eta - 1.0, -s * 1j * xi, ctl, allow_connection=False)
        t2 = c2 * v2
    val = t1 + t2
    if val == 0 or not _finite(val):
        return val, _INF
    err = (abs(t1) * (e1 + 4 * EPS) + abs(t2) * (e2 + 4 * EPS)) / abs(val)
    return val, err


def _taylor_step(eta: complex, x0: complex, y: complex, dy: complex, h: complex):
    """Advance (D, D') of the Weber equation from x0 to x0 + h."""
    # y'' = (x^2/4 - eta - 1/2) y, expanded about x0
    f0 = 0.25 * x0 * x0 - eta - 0.5
    g = 0.5 * x0
    cm2, cm1, c0, c1 = 0j, 0j, y, dy
    hk = h  # h^(k+1)
    val = y + dy * h
    der = dy
    mag = abs(y) + abs(dy * h)
    small = 0
    k = 0
    while True:
        c2 = (f0 * c0 + g * cm1 + 0.25 * cm2) / ((k + 2) * (k + 1))
        der += (k + 2) * c2 * hk
        hk *= h
        term = c2 * hk
        val += term
        mag += abs(term)
        scale = abs(val) + abs(der * h)
        if (k + 2) * abs(term) <= 1e-18 * scale:
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        cm2, cm1, c0, c1 = cm1, c0, c1, c2
        k += 1
        if k > 400:
            raise NoConvergence("Weber Taylor step did not converge")
    return val, der, mag


def _march(eta: complex, start: complex, y: complex, dy: complex, end: complex):
    """Integrate the Weber equation along the segment start -> end.

    Returns (D, D', rel_err). The error estimate pushes each step's rounding
    through the transfer matrices of the remaining steps, so growth of the
    competing solution is accounted for.
    """
    total = end - start
    length = abs(total)
    if length == 0:
        return y, dy, 0.0
    u = total / length
    done = 0.0
    pos = start
    mats = []
    local = []
    while done < length:
        f = 0.25 * pos * pos - eta - 0.5
        hlen = min(1.0, 1.5 / math.sqrt(abs(f) + 0.5 * abs(pos) + 0.25))
        if done + hlen >= length * (1.0 - 1e-14):
            nxt = end
            hlen = length - done
        else:
            nxt = start + u * (done + hlen)
        h = nxt - pos
        a, da, ma = _taylor_step(eta, pos, 1.0 + 0j, 0j, h)
        b, db, mb = _taylor_step(eta, pos, 0j, 1.0 + 0j, h)
        local.append(4.0 * EPS * (ma * abs(y) + mb * abs(dy)))
        y, dy = a * y + b * dy, da * y + db * dy
        if not (_finite(y) and _finite(dy)):
            raise NoConvergence("overflow while integrating the Weber equation")
        mats.append((a, b, da, db))
        done += hlen
        pos = nxt
    # propagate the local errors to the end point (first row of the product)
    r0, r1 = 1.0 + 0j, 0j
    err = 0.0
    for (a, b, da, db), d in zip(reversed(mats), reversed(local)):
        err += (abs(r0) + abs(r1)) * d
        r0, r1 = r0 * a + r1 * da, r0 * b + r1 * db
    return y, dy, (err / abs(y) if y != 0 else _INF)


def _far_start(eta: complex, direction: complex, r_min: float, ctl: SeriesControl):
    r = r_min
    while r < 1e4:
        xi = direction * r
        v, e = _asymptotic(eta, xi, ctl)
        vm1, em1 = _asymptotic(eta - 1.0, xi, ctl)
        if max(e, em1) <= 1e-15 and _finite(v) and _finite(vm1):
            return xi, v, eta * vm1 - 0.5 * xi * v, max(e, em1)
        r *= 1.25
    raise NoConvergence(f"no accurate asymptotic start for eta={eta}")


def _inward(eta: complex, xi: complex, direction: complex, ctl: SeriesControl) -> tuple[complex, float]:
    """March to xi from an accurate asymptotic start far out along ``direction``."""
    try:
        start, y, dy, e0 = _far_start(eta, direction, max(abs(xi), ctl.regime_radius), ctl)
        y, _, e = _march(eta, start, y, dy, xi)
    except NoConvergence:
        return 0j, _INF
    return y, e + e0 + 4 * EPS


def _continuation(eta: complex, xi: complex, ctl: SeriesControl) -> tuple[complex, float]:
    """Best of three marches: forward from xi = 0, inward along the ray of xi,
    and inward from the sector |arg| < pi/4 where D is recessive.

    Starting from 0 amplifies rounding by the size of the dominant solution
    at xi relative to D; starting where D is recessive does not.
    """
    r = abs(xi)
    d0, d1 = _value_at_zero(eta)
    best = (0j, _INF)
    try:
        y, _, e = _march(eta, 0j, d0, d1, xi)
        best = (y, e + 4 * EPS)
    except NoConvergence:
        pass
    if best[1] <= ctl.accuracy or r < 1.0:
        return best
    arg = cmath.phase(xi)
    directions = []
    if abs(arg) < 0.75 * math.pi - 0.05:
        directions.append(xi / r)
    if abs(arg) > 0.25 * math.pi:
        directions.append(cmath.exp(1j * math.copysign(0.25 * math.pi - 0.1, arg)))
    for u in directions:
        cand = _inward(eta, xi, u, ctl)
        if cand[1] < best[1]:
            best = cand
        if best[1] <= ctl.accuracy:
            break
    return best


def _evaluate(eta: complex, xi: complex, ctl: SeriesControl, allow_connection: bool = True):
    acc = ctl.accuracy
    if xi == 0:
        return _value_at_zero(eta)[0], 4 * EPS
    r = abs(xi)
    first = (0j, _INF)
    try:
        if r <= ctl.regime_radius:
            first = _maclaurin(eta, xi, ctl)
        elif abs(cmath.phase(xi)) <= 0.5 * math.pi:
            first = _asymptotic(eta, xi, ctl)
        elif allow_connection:
            first = _connection(eta, xi, ctl)
    except (OverflowError, ZeroDivisionError, NoConvergence):
        pass
    if not _finite(first[0]):
        first = (0j, _INF)
    if first[1] <= acc:
        return first
    # the classical route missed; keep whichever of the two is better
    cont = _continuation(eta, xi, ctl)
    return cont if cont[1] < first[1] else first


def pcf_d_regime(eta: complex, xi: complex, regime: str, ctl: SeriesControl = DEFAULT_CONTROL):
    """Evaluate D_eta(xi) with one specific route; returns (value, rel_err_estimate)."""
    eta, xi = complex(eta), complex(xi)
    if regime == "maclaurin":
        return _maclaurin(eta, xi, ctl)
    if regime == "asymptotic":
        return _asymptotic(eta, xi, ctl)
    if regime == "connection":
        return _connection(eta, xi, ctl)
    if regime == "continuation":
        return _continuation(eta, xi, ctl)
    raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")


def pcf_d(eta: complex, xi: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Parabolic cylinder function D_eta(xi).

    Raises NoConvergence when no route reaches a usable accuracy or the value
    overflows double precision.
    """
    eta, xi = complex(eta), complex(xi)
    try:
        val, err = _evaluate(eta, xi, ctl)
    except OverflowError as exc:
        raise NoConvergence(f"D_{eta}({xi}) overflows") from exc
    if not _finite(val) or err > 1e3 * ctl.accuracy:
        raise NoConvergence(f"D_{eta}({xi}): estimated relative error {err:.2e}")
    return val


def pcf_d_derivative(eta: complex, xi: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """d/dxi D_eta(xi) = eta D_{eta-1}(xi) - (xi/2) D_eta(xi)."""
    eta, xi = complex(eta), complex(xi)
    if eta == 0:
        return -0.5 * xi * pcf_d(eta, xi, ctl)
    return eta * pcf_d(eta - 1.0, xi, ctl) - 0.5 * xi * pcf_d(eta, xi, ctl)
