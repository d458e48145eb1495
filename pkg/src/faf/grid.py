"""Forecast grid: probabilities restricted to evenly spaced points in [0, 1].

Forecasts live on a finite grid (percentage points by default) so that
strict inequalities against a proposal forecast have well-defined nearest
neighbours. All comparisons tolerate 1e-9 of floating-point noise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OffGridError

TOL = 1e-9


@dataclass(frozen=True)
class ForecastGrid:
    """Evenly spaced probability grid with `denominator + 1` points."""

    denominator: int = 100

    def __post_init__(self) -> None:
        if self.denominator < 1:
            raise ValueError("grid denominator must be >= 1")

    @classmethod
    def from_step(cls, step: float) -> "ForecastGrid":
        """Build a grid from a step size such as 0.01 (must divide 1 evenly)."""
        if not 0 < step <= 1:
            raise ValueError(f"grid step must be in (0, 1], got {step}")
        denominator = round(1 / step)
        if abs(denominator * step - 1.0) > TOL:
            raise ValueError(f"grid step {step} does not divide 1 evenly")
        return cls(denominator)

    @property
    def step(self) -> float:
        return 1.0 / self.denominator

    def value(self, tick: int) -> float:
        if not 0 <= tick <= self.denominator:
            raise ValueError(f"tick {tick} outside grid 0..{self.denominator}")
        return tick / self.denominator

    def tick(self, value: float) -> int:
        """Exact tick for an on-grid value; raises OffGridError otherwise."""
        if not 0.0 <= value <= 1.0:
            raise OffGridError(f"probability {value} outside [0, 1]")
        k = round(value * self.denominator)
        if abs(value - k / self.denominator) > TOL:
            raise OffGridError(
                f"{value} is not a multiple of 1/{self.denominator}"
            )
        return k

    def contains(self, value: float) -> bool:
        try:
            self.tick(value)
        except OffGridError:
            return False
        return True

    def snap(self, value: float) -> float:
        """Nearest grid point; half-way values round up."""
        if not 0.0 <= value <= 1.0:
            raise OffGridError(f"probability {value} outside [0, 1]")
        k = math.floor(value * self.denominator + 0.5)
        return self.value(min(k, self.denominator))

    def floor_tick(self, value: float) -> int:
        """Largest tick k with k/denominator <= value, up to tolerance."""
        k = math.floor((value + TOL) * self.denominator)
        return max(0, min(k, self.denominator))

    def ceil_tick(self, value: float) -> int:
        """Smallest tick k with k/denominator >= value, up to tolerance."""
        k = math.ceil((value - TOL) * self.denominator)
        return max(0, min(k, self.denominator))


DEFAULT_GRID = ForecastGrid()
