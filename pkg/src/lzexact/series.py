"""Containers for sampled trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import PathSpec


@dataclass(frozen=True)
class AmplitudePair:
    """Amplitudes (a0, a1) of the state in the fixed basis."""

    a0: complex
    a1: complex

    @property
    def norm2(self) -> float:
        return abs(self.a0) ** 2 + abs(self.a1) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1], dtype=complex)

    def phase_aligned(self) -> "AmplitudePair":
        """Same state with the global phase chosen so that a0 is real and >= 0."""
        if self.a0 == 0:
            return self
        ph = abs(self.a0) / self.a0
        return AmplitudePair(self.a0 * ph, self.a1 * ph)


@dataclass
class EvolutionSeries:
    """Sampled trajectory of one path under one solver."""

    spec: PathSpec | None
    solver: str
    times: np.ndarray
    a0: np.ndarray
    a1: np.ndarray
    infidelity: np.ndarray
    info: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.times)

    def pair(self, i: int) -> AmplitudePair:
        return AmplitudePair(complex(self.a0[i]), complex(self.a1[i]))

    @property
    def norm_drift(self) -> float:
        return float(np.max(np.abs(np.abs(self.a0) ** 2 + np.abs(self.a1) ** 2 - 1.0)))

    def rows(self) -> list[dict]:
        s = self.spec
        if s is None:
            raise ValueError("rows need the PathSpec the series was computed for")
        out = []
        for i, t in enumerate(self.times):
            a0, a1 = complex(self.a0[i]), complex(self.a1[i])
            out.append(
                {
                    "path": s.variant,
                    "x0": s.x0,
                    "z0": s.z0,
                    "T": s.T,
                    "t": float(t),
                    "a0_re": a0.real,
                    "a0_im": a0.imag,
                    "a1_re": a1.real,
                    "a1_im": a1.imag,
                    "infidelity": float(self.infidelity[i]),
                    "solver": self.solver,
                }
            )
        return out
