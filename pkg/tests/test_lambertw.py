import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lzexact.errors import OutOfDomain
from lzexact.specfun import lambert_w_m1


def bisect_w_m1(a: float) -> float:
    """w <= -1 with w e^w = a, by bisection (w e^w falls from 0 to -1/e on (-inf, -1])."""
    lo, hi = -800.0, -1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) > a:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_branch_point():
    assert lambert_w_m1(-math.exp(-1)) == -1.0


@pytest.mark.parametrize(
    ("a", "expected"),
    [
        (-0.1, -3.577152063957297),
        (-0.049673, -4.508189351872123),
        (-0.3678, -1.0209272394094255),
        (-0.2, -2.5426413577735265),
        (-1e-10, -26.295238819246926),
    ],
)
def test_frozen_values(a, expected):
    assert lambert_w_m1(a) == pytest.approx(expected, rel=1e-14)
    assert lambert_w_m1(a) == pytest.approx(bisect_w_m1(a), rel=1e-13)


def test_round_trip_on_log_grid():
    grid = -np.geomspace(math.exp(-1) * (1 - 1e-15), 1e-12, 400)
    for a in grid:
        w = lambert_w_m1(a)
        assert w <= -1.0
        assert abs(w * math.exp(w) - a) <= 1e-14


@given(st.floats(min_value=-math.exp(-1), max_value=-1e-300, exclude_max=False))
def test_round_trip_anywhere(a):
    w = lambert_w_m1(a)
    assert w <= -1.0
    assert abs(w * math.exp(w) - a) <= 1e-14


def test_monotone_decreasing():
    a = -np.geomspace(0.36, 1e-8, 200)
    w = np.array([lambert_w_m1(v) for v in a])
    assert np.all(np.diff(w) < 0)


@pytest.mark.parametrize("a", [0.0, 0.1, -0.5, -math.exp(-1) - 1e-9, math.nan])
def test_out_of_domain(a):
    with pytest.raises(OutOfDomain):
        lambert_w_m1(a)
