"""Lower real branch W_{-1} of the Lambert function."""

from __future__ import annotations

import math

from ..errors import OutOfDomain

_INV_E = math.exp(-1.0)


def _seed(a: float) -> float:
    if a < -0.25:
        # expansion about the branch point a = -1/e
        p = -math.sqrt(max(2.0 * (1.0 + math.e * a), 0.0))
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    l1 = math.log(-a)
    l2 = math.log(-l1)
    return l1 - l2 + l2 / l1


def lambert_w_m1(a: float) -> float:
    """Solve w * exp(w) = a for w <= -1, given -1/e <= a < 0."""
    a = float(a)
    if not (-_INV_E - 1e-16 <= a < 0.0):
        raise OutOfDomain(f"W_-1 is real only on [-1/e, 0); got {a!r}")
    if a <= -_INV_E:
        return -1.0
    w = _seed(a)
    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - a
        if f == 0.0:
            break
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        # Halley step
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_new = min(w - step, -1.0)
        if abs(w_new - w) <= 4e-16 * abs(w):
            w = w_new
            break
        w = w_new
    return w
