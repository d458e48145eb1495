"""Forecasting records, Brier scoring, and group-forecast aggregation.

An agent's Brier score is the mean squared error of their forecast history
against realized binary outcomes; the group forecast weights each rational
individual forecast by one minus the forecaster's Brier score, falling back
to the unweighted mean while accuracy history is still being amassed.

All sums use math.fsum, so scores are exactly invariant under permutation of
the inputs, and weighted results are clamped into the convex hull of the
positively weighted forecasts to keep that invariant exact in floating point.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, replace
from datetime import date, datetime, timedelta
from typing import Mapping, Optional, Sequence

from .timeutil import utc_date


def outcome_value(outcome: bool) -> float:
    return 1.0 if outcome else 0.0


@dataclass(frozen=True)
class AgentRecord:
    """An agent's identity plus their (forecast, outcome) history."""

    agent_id: str
    history: tuple[tuple[float, bool], ...] = ()

    @property
    def count(self) -> int:
        return len(self.history)

    @property
    def brier(self) -> Optional[float]:
        if not self.history:
            return None
        return brier_score(self)

    def with_entry(self, forecast: float, outcome: bool) -> "AgentRecord":
        return replace(self, history=self.history + ((forecast, outcome),))

    def to_json(self) -> dict:
        return {
            "agent_id": self.agent_id,
            "history": [
                {"forecast": f, "outcome": o} for f, o in self.history
            ],
            "brier": self.brier,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AgentRecord":
        return cls(
            agent_id=doc["agent_id"],
            history=tuple(
                (entry["forecast"], entry["outcome"]) for entry in doc.get("history", [])
            ),
        )


def brier_score(record: AgentRecord) -> float:
    """Mean squared error of the record's forecasts against outcomes."""
    if not record.history:
        raise ValueError(f"agent {record.agent_id!r} has an empty forecast history")
    return math.fsum(
        (forecast - outcome_value(outcome)) ** 2 for forecast, outcome in record.history
    ) / len(record.history)


def _clamped_convex(value: float, members: Sequence[float]) -> float:
    # the true weighted mean lies in [min, max] of the contributing
    # forecasts; clamping only strips floating-point noise
    return min(max(value, min(members)), max(members))


def mean_group_forecast(forecasts: Mapping[str, float] | Sequence[float]) -> float:
    """Unweighted arithmetic mean (the cold-start aggregation)."""
    values = list(forecasts.values()) if isinstance(forecasts, Mapping) else list(forecasts)
    if not values:
        raise ValueError("cannot aggregate an empty forecast set")
    return _clamped_convex(math.fsum(values) / len(values), values)


def group_forecast(forecasts: Mapping[str, float], briers: Mapping[str, float]) -> float:
    """Accuracy-weighted mean: each forecast weighs 1 minus its agent's Brier
    score; 0 when every weight vanishes."""
    if set(forecasts) != set(briers):
        raise ValueError(
            f"forecast and Brier key sets differ: {sorted(forecasts)} vs {sorted(briers)}"
        )
    if not forecasts:
        raise ValueError("cannot aggregate an empty forecast set")
    weights = {agent: 1.0 - briers[agent] for agent in forecasts}
    total = math.fsum(weights.values())
    if total == 0:
        return 0.0
    value = math.fsum(weights[a] * forecasts[a] for a in sorted(forecasts)) / total
    members = [forecasts[a] for a in forecasts if weights[a] > 0]
    return _clamped_convex(value, members)


def group_weights(briers: Mapping[str, float]) -> dict[str, float]:
    return {agent: 1.0 - b for agent, b in briers.items()}


@dataclass(frozen=True)
class AggregationPolicy:
    """`mean` always averages; `brier` weights by accuracy once every
    participating agent has enough resolved history, and averages before
    that point."""

    kind: str = "mean"  # "mean" | "brier"
    activation_count: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("mean", "brier"):
            raise ValueError(f"unknown aggregation policy {self.kind!r}")
        if self.activation_count < 1:
            raise ValueError("activation_count must be >= 1 (a Brier score needs history)")

    def aggregate(
        self,
        forecasts: Mapping[str, float],
        records: Mapping[str, AgentRecord],
    ) -> tuple[float, dict[str, float], str]:
        """Returns (group forecast, weights used, policy actually applied)."""
        if not forecasts:
            raise ValueError("cannot aggregate an empty forecast set")
        if self.kind == "brier":
            activated = all(
                agent in records and records[agent].count >= self.activation_count
                for agent in forecasts
            )
            if activated:
                briers = {a: records[a].brier for a in forecasts}
                weights = group_weights(briers)
                return group_forecast(forecasts, briers), weights, "brier"
        weights = {a: 1.0 for a in forecasts}
        return mean_group_forecast(forecasts), weights, "mean"


# ---------------------------------------------------------------------------
# Daily series (per-day carry-forward forecasts and their Brier contributions)


@dataclass(frozen=True)
class DailyPoint:
    day: date
    forecast: float
    brier: Optional[float] = None


@dataclass(frozen=True)
class DailySeries:
    points: tuple[DailyPoint, ...] = ()

    @property
    def empty(self) -> bool:
        return not self.points

    def to_json(self) -> list[dict]:
        return [
            {"date": p.day.isoformat(), "forecast": p.forecast, "brier": p.brier}
            for p in self.points
        ]


def build_daily_series(
    observations: Sequence[tuple[datetime, float]],
    end: datetime,
    outcome: Optional[bool] = None,
) -> DailySeries:
    """Carry each forecast forward one UTC calendar day at a time, from the
    day of the first forecast through the end day inclusive; days before the
    first forecast are absent. The last forecast of a day wins."""
    if not observations:
        return DailySeries()
    by_day: dict[date, float] = {}
    for at, value in observations:
        by_day[utc_date(at)] = value
    first = min(by_day)
    last = utc_date(end)
    points: list[DailyPoint] = []
    current: Optional[float] = None
    day = first
    while day <= last:
        current = by_day.get(day, current)
        assert current is not None
        contribution = (
            (current - outcome_value(outcome)) ** 2 if outcome is not None else None
        )
        points.append(DailyPoint(day, current, contribution))
        day += timedelta(days=1)
    return DailySeries(tuple(points))


def daily_brier(series: DailySeries, outcome: bool) -> float:
    """Mean over covered days of the squared daily forecast error."""
    if series.empty:
        raise ValueError("daily series is empty")
    target = outcome_value(outcome)
    return math.fsum((p.forecast - target) ** 2 for p in series.points) / len(series.points)


def group_daily_series(
    series_by_agent: Mapping[str, DailySeries],
    outcome: Optional[bool] = None,
) -> DailySeries:
    """Per-day mean of the agents' daily forecasts, over every day at least
    one agent has a standing forecast."""
    day_values: dict[date, list[float]] = {}
    for series in series_by_agent.values():
        for p in series.points:
            day_values.setdefault(p.day, []).append(p.forecast)
    points: list[DailyPoint] = []
    for day in sorted(day_values):
        value = mean_group_forecast(day_values[day])
        contribution = (
            (value - outcome_value(outcome)) ** 2 if outcome is not None else None
        )
        points.append(DailyPoint(day, value, contribution))
    return DailySeries(tuple(points))


def emit_daily_csv(series: DailySeries) -> str:
    """Render a daily series as `date,forecast,brier` rows."""
    out = io.StringIO()
    out.write("date,forecast,brier\n")
    for p in series.points:
        brier = "" if p.brier is None else repr(p.brier)
        out.write(f"{p.day.isoformat()},{p.forecast!r},{brier}\n")
    return out.getvalue()
