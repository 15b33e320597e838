from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidParameter

EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class SeriesControl:
    """Tuning knobs shared by the series-based special functions.

    ``rel_tol`` terminates individual series; ``accuracy`` is the relative
    error a regime has to promise (from its own error estimate) before its
    value is accepted. ``regime_radius`` is where the parabolic cylinder
    function switches from the Maclaurin series to the large-argument
    expansion.
    """

    max_terms: int = 100_000
    rel_tol: float = 1e-16
    regime_radius: float = 6.0
    accuracy: float = 1e-11

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise InvalidParameter("max_terms must be >= 1")
        if not 0.0 < self.rel_tol < 1.0:
            raise InvalidParameter("rel_tol must lie in (0, 1)")
        if self.regime_radius <= 0.0:
            raise InvalidParameter("regime_radius must be positive")
        if not 0.0 < self.accuracy < 1.0:
            raise InvalidParameter("accuracy must lie in (0, 1)")


DEFAULT_CONTROL = SeriesControl()
