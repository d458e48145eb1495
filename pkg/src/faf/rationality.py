"""Confidence scoring and rationality gating of individual forecasts.

An agent's confidence score weighs the mean strength of increase amendments
against the mean strength of decrease amendments, landing in [-1, 1]. A
forecast is strictly rational when its direction matches the sign of the
confidence score and its relative deviation from the proposal forecast does
not exceed the score's magnitude. All three constraints are evaluated
independently so a verdict can report every violation at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateProposalError, EmptyRationalIntervalError
from .grid import TOL, ForecastGrid
from .model import DelegateFramework
from .semantics import score_all

IRRATIONAL_INCREASE = "irrational_increase"
IRRATIONAL_DECREASE = "irrational_decrease"
IRRATIONAL_SCALE = "irrational_scale"


def confidence_score(d: DelegateFramework) -> float:
    """Mean increase-amendment strength minus mean decrease-amendment
    strength; an absent side contributes 0. Result is in [-1, 1]."""
    strengths = score_all(d)
    inc = d.increase_ids()
    dec = d.decrease_ids()
    up = math.fsum(strengths[a] for a in inc) / len(inc) if inc else 0.0
    down = math.fsum(strengths[a] for a in dec) / len(dec) if dec else 0.0
    return up - down


def _scale_ok(proposal_forecast: float, value: float, c_abs: float) -> bool:
    return abs(proposal_forecast - value) / proposal_forecast <= c_abs + TOL


@dataclass(frozen=True)
class RationalInterval:
    """The grid forecasts satisfying all three constraints, as a contiguous
    tick range. `lo_tick > hi_tick` encodes the empty interval."""

    grid: ForecastGrid
    lo_tick: int
    hi_tick: int

    @property
    def empty(self) -> bool:
        return self.lo_tick > self.hi_tick

    @property
    def lo(self) -> float:
        return self.grid.value(self.lo_tick)

    @property
    def hi(self) -> float:
        return self.grid.value(self.hi_tick)

    def contains(self, value: float) -> bool:
        if self.empty or not self.grid.contains(value):
            return False
        return self.lo_tick <= self.grid.tick(value) <= self.hi_tick

    def values(self) -> list[float]:
        if self.empty:
            return []
        return [self.grid.value(k) for k in range(self.lo_tick, self.hi_tick + 1)]

    def to_json(self) -> Optional[list[float]]:
        if self.empty:
            return None
        return [self.lo, self.hi]


def rational_interval(
    proposal_forecast: float,
    confidence: float,
    grid: ForecastGrid,
) -> RationalInterval:
    """All grid forecasts a forecaster with this confidence may rationally
    submit against this proposal forecast.

    Direction constraints are strict, the scale constraint is not; with zero
    confidence the interval degenerates to the proposal forecast itself. The
    interval can be empty when the grid is too coarse for a tiny confidence,
    or when confidence points past an extreme proposal (e.g. upward at 1.0).
    """
    p_tick = grid.tick(proposal_forecast)
    if p_tick == 0:
        raise DegenerateProposalError(
            "proposal forecast must be > 0 (the scale constraint divides by it)"
        )
    c_abs = abs(confidence)
    if confidence == 0:
        return RationalInterval(grid, p_tick, p_tick)
    if confidence < 0:
        hi = p_tick - 1
        lo = grid.ceil_tick(proposal_forecast * (1 - c_abs))
        while lo > 0 and _scale_ok(proposal_forecast, grid.value(lo - 1), c_abs):
            lo -= 1
        while lo <= hi and not _scale_ok(proposal_forecast, grid.value(lo), c_abs):
            lo += 1
        return RationalInterval(grid, lo, hi)
    lo = p_tick + 1
    hi = grid.floor_tick(proposal_forecast * (1 + c_abs))
    while hi < grid.denominator and _scale_ok(proposal_forecast, grid.value(hi + 1), c_abs):
        hi += 1
    while hi >= lo and not _scale_ok(proposal_forecast, grid.value(hi), c_abs):
        hi -= 1
    return RationalInterval(grid, lo, min(hi, grid.denominator))


@dataclass(frozen=True)
class RationalityVerdict:
    accepted: bool
    violations: tuple[str, ...]
    rational_interval: RationalInterval
    suggestion: Optional[float]
    confidence: float
    proposal_forecast: float
    proposed: float

    def to_json(self) -> dict:
        return {
            "accepted": self.accepted,
            "violations": list(self.violations),
            "rational_interval": self.rational_interval.to_json(),
            "suggestion": self.suggestion,
            "confidence_score": self.confidence,
            "proposal_forecast": self.proposal_forecast,
            "proposed": self.proposed,
        }


def check_forecast(
    d: DelegateFramework,
    proposed: float,
    grid: ForecastGrid,
) -> RationalityVerdict:
    """Evaluate a proposed forecast against all three constraints.

    The verdict carries every violated constraint, the full rational
    interval, and the nearest rational suggestion (None when the interval
    is empty).
    """
    fp = d.proposal.forecast
    p_tick = grid.tick(fp)
    if p_tick == 0:
        raise DegenerateProposalError(
            "proposal forecast must be > 0 (the scale constraint divides by it)"
        )
    f_tick = grid.tick(proposed)
    c = confidence_score(d)

    violations: list[str] = []
    if c < 0 and f_tick >= p_tick:
        violations.append(IRRATIONAL_INCREASE)
    if c > 0 and f_tick <= p_tick:
        violations.append(IRRATIONAL_DECREASE)
    if not _scale_ok(fp, proposed, abs(c)):
        violations.append(IRRATIONAL_SCALE)

    interval = rational_interval(fp, c, grid)
    if not violations:
        suggestion: Optional[float] = proposed
    elif interval.empty:
        suggestion = None
    else:
        suggestion = _nearest_in_interval(interval, proposed, fp)
    return RationalityVerdict(
        accepted=not violations,
        violations=tuple(violations),
        rational_interval=interval,
        suggestion=suggestion,
        confidence=c,
        proposal_forecast=fp,
        proposed=proposed,
    )


def _nearest_in_interval(
    interval: RationalInterval, proposed: float, proposal_forecast: float
) -> float:
    grid = interval.grid
    if proposed <= interval.lo:
        return interval.lo
    if proposed >= interval.hi:
        return interval.hi
    # inside the tick range: at most two neighbouring candidates; ties go to
    # the one closer to the proposal forecast
    candidates = {
        max(interval.lo_tick, min(interval.hi_tick, grid.floor_tick(proposed))),
        max(interval.lo_tick, min(interval.hi_tick, grid.ceil_tick(proposed))),
    }
    return min(
        (grid.value(k) for k in candidates),
        key=lambda v: (abs(v - proposed), abs(v - proposal_forecast)),
    )


def nearest_rational(
    d: DelegateFramework,
    proposed: float,
    grid: ForecastGrid,
) -> float:
    """The rational grid forecast closest to `proposed` (identity on already
    rational inputs). Raises when no rational forecast exists at this grid."""
    verdict = check_forecast(d, proposed, grid)
    if verdict.accepted:
        return proposed
    if verdict.rational_interval.empty:
        raise EmptyRationalIntervalError(
            f"no rational grid forecast exists (confidence {verdict.confidence}, "
            f"proposal {verdict.proposal_forecast})"
        )
    assert verdict.suggestion is not None
    return verdict.suggestion
