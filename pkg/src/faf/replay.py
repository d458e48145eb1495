"""Headless replay of a scripted debate.

A debate script captures one question's history as ordered update-framework
windows: the arguments raised, who voiced approval or disapproval of which
pro/con argument, and the forecasts users made over time. The replay turns
approvals into three-valued votes (approve 1, disapprove 0, unmentioned 0.5),
drives the full lifecycle, substitutes the nearest rational forecast whenever
a scripted one is blocked, and reports accuracy plus per-constraint
irrationality counts.

Replays are fully deterministic: same script and configuration, byte-identical
report.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Optional

from .aggregation import AggregationPolicy
from .errors import ScriptError
from .grid import ForecastGrid
from .lifecycle import SessionConfig, SessionEngine
from .model import (
    AmendmentArgument,
    ForecastingQuestion,
    ProConArgument,
    ProposalArgument,
)
from .timeutil import parse_timestamp

APPROVE = "approve"
DISAPPROVE = "disapprove"


@dataclass(frozen=True)
class ScriptArgument:
    id: str
    kind: str  # "amendment" | "pro" | "con"
    direction: Optional[str] = None
    targets: tuple[str, ...] = ()
    text: Optional[str] = None


@dataclass(frozen=True)
class Mention:
    agent: str
    argument_id: str
    stance: str


@dataclass(frozen=True)
class ScriptedForecast:
    agent: str
    value: float
    at: datetime


@dataclass(frozen=True)
class ScriptWindow:
    id: str
    opens_at: datetime
    closes_at: datetime
    proposal_id: str
    proposal_forecast: Optional[float]
    proposal_evidence: Optional[str]
    arguments: tuple[ScriptArgument, ...]
    mentions: tuple[Mention, ...]
    forecasts: tuple[ScriptedForecast, ...]
    agents: tuple[str, ...] = ()

    def pro_con_ids(self) -> list[str]:
        return [a.id for a in self.arguments if a.kind in ("pro", "con")]


@dataclass(frozen=True)
class DebateScript:
    question: ForecastingQuestion
    outcome: bool
    base_forecast: float
    opened_at: datetime
    closed_at: datetime
    windows: tuple[ScriptWindow, ...]
    agents: tuple[str, ...] = ()

    @classmethod
    def from_json(cls, doc: dict) -> "DebateScript":
        try:
            windows = []
            for w in doc.get("windows", []):
                proposal = w.get("proposal", {})
                windows.append(
                    ScriptWindow(
                        id=w["id"],
                        opens_at=parse_timestamp(w["opens_at"]),
                        closes_at=parse_timestamp(w["closes_at"]),
                        proposal_id=proposal.get("id", f"{w['id']}-proposal"),
                        proposal_forecast=proposal.get("forecast"),
                        proposal_evidence=proposal.get("evidence"),
                        arguments=tuple(
                            ScriptArgument(
                                id=a["id"],
                                kind=a["kind"],
                                direction=a.get("direction"),
                                targets=tuple(a.get("targets", ())),
                                text=a.get("text"),
                            )
                            for a in w.get("arguments", [])
                        ),
                        mentions=tuple(
                            Mention(m["agent"], m["argument"], m["stance"])
                            for m in w.get("mentions", [])
                        ),
                        forecasts=tuple(
                            ScriptedForecast(
                                f["agent"], float(f["value"]), parse_timestamp(f["at"])
                            )
                            for f in w.get("forecasts", [])
                        ),
                        agents=tuple(w.get("agents", ())),
                    )
                )
            return cls(
                question=ForecastingQuestion(doc["question"]["id"], doc["question"]["text"]),
                outcome=bool(doc["outcome"]),
                base_forecast=float(doc["base_forecast"]),
                opened_at=parse_timestamp(doc["opened_at"]),
                closed_at=parse_timestamp(doc["closed_at"]),
                windows=tuple(windows),
                agents=tuple(doc.get("agents", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScriptError(f"malformed debate script: {exc}") from exc

    def window_agents(self, window: ScriptWindow) -> list[str]:
        if window.agents:
            return sorted(window.agents)
        if self.agents:
            return sorted(self.agents)
        implied = {m.agent for m in window.mentions} | {f.agent for f in window.forecasts}
        return sorted(implied)


def load_script(path: str | Path) -> DebateScript:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ScriptError(f"cannot read debate script {path}: {exc}") from exc
    script = DebateScript.from_json(doc)
    problems = validate_script(script)
    if problems:
        raise ScriptError("; ".join(problems))
    return script


def validate_script(script: DebateScript) -> list[str]:
    """Every structural problem in the script, as human-readable strings."""
    problems: list[str] = []
    if not 0.0 <= script.base_forecast <= 1.0:
        problems.append(f"base forecast outside [0,1]: {script.base_forecast}")
    if script.opened_at > script.closed_at:
        problems.append("question opened_at is after closed_at")
    if not script.windows:
        problems.append("script has no update-framework windows")

    previous_close = script.opened_at
    seen_window_ids: set[str] = set()
    for w in script.windows:
        where = f"window {w.id!r}"
        if w.id in seen_window_ids:
            problems.append(f"{where}: duplicate window id")
        seen_window_ids.add(w.id)
        if w.opens_at < previous_close:
            problems.append(f"{where}: opens before the previous window closes (non-concurrency)")
        if w.opens_at > w.closes_at:
            problems.append(f"{where}: opens after it closes")
        if w.closes_at > script.closed_at:
            problems.append(f"{where}: closes after the question closes")
        previous_close = w.closes_at

        agents = script.window_agents(w)
        if len(agents) < 2:
            problems.append(f"{where}: needs at least 2 agents, got {len(agents)}")

        declared: set[str] = {w.proposal_id}
        pro_con: set[str] = set()
        for a in w.arguments:
            if a.id in declared:
                problems.append(f"{where}: duplicate argument id {a.id!r}")
            if a.kind == "amendment":
                if a.direction not in ("increase", "decrease"):
                    problems.append(
                        f"{where}: amendment {a.id!r} needs direction increase|decrease"
                    )
                if a.targets and set(a.targets) != {w.proposal_id}:
                    problems.append(
                        f"{where}: amendment {a.id!r} may only target the proposal"
                    )
            elif a.kind in ("pro", "con"):
                pro_con.add(a.id)
                for t in a.targets:
                    if t not in declared - {w.proposal_id}:
                        problems.append(
                            f"{where}: argument {a.id!r} targets undeclared argument {t!r}"
                        )
                    if t == w.proposal_id:
                        problems.append(
                            f"{where}: pro/con argument {a.id!r} cannot target the proposal"
                        )
            else:
                problems.append(f"{where}: unknown argument kind {a.kind!r} on {a.id!r}")
            declared.add(a.id)

        for m in w.mentions:
            if m.stance not in (APPROVE, DISAPPROVE):
                problems.append(
                    f"{where}: mention of {m.argument_id!r} by {m.agent!r} has stance {m.stance!r}"
                )
            if m.argument_id not in pro_con:
                problems.append(
                    f"{where}: mention by {m.agent!r} references undeclared pro/con argument {m.argument_id!r}"
                )
            if m.agent not in agents:
                problems.append(f"{where}: mention by unknown agent {m.agent!r}")

        last_at = w.opens_at
        for f in w.forecasts:
            if f.agent not in agents:
                problems.append(f"{where}: forecast by unknown agent {f.agent!r}")
            if not 0.0 <= f.value <= 1.0:
                problems.append(f"{where}: forecast by {f.agent!r} outside [0,1]: {f.value}")
            if f.at < last_at:
                problems.append(f"{where}: forecast timestamps must be non-decreasing")
            if not w.opens_at <= f.at <= w.closes_at:
                problems.append(f"{where}: forecast by {f.agent!r} timestamped outside the window")
            last_at = max(last_at, f.at)

    return problems


def synthesize_votes(window: ScriptWindow, agents: list[str]) -> dict[str, dict[str, float]]:
    """Three-valued vote assignment over agents x pro/con arguments:
    approval 1, disapproval 0, unmentioned 0.5."""
    pro_con = window.pro_con_ids()
    votes = {agent: {arg: 0.5 for arg in pro_con} for agent in agents}
    for m in window.mentions:
        if m.argument_id not in votes.get(m.agent, {}):
            raise ScriptError(
                f"mention by {m.agent!r} references undeclared argument {m.argument_id!r}"
            )
        votes[m.agent][m.argument_id] = 1.0 if m.stance == APPROVE else 0.0
    return votes


# ---------------------------------------------------------------------------
# Report


@dataclass(frozen=True)
class QuestionReport:
    question: str
    group_brier: Optional[float]
    min_brier: Optional[float]
    max_brier: Optional[float]
    forecasts: int
    irrational_increase: int
    irrational_decrease: int
    irrational_scale: int
    mean_confidence: Optional[float]

    def to_json(self) -> dict:
        return {
            "question": self.question,
            "group_brier": self.group_brier,
            "min_brier": self.min_brier,
            "max_brier": self.max_brier,
            "forecasts": self.forecasts,
            "irrational_increase": self.irrational_increase,
            "irrational_decrease": self.irrational_decrease,
            "irrational_scale": self.irrational_scale,
            "mean_confidence": self.mean_confidence,
        }


def _aggregate_rows(rows: list[QuestionReport]) -> QuestionReport:
    briers = [r.group_brier for r in rows if r.group_brier is not None]
    mins = [r.min_brier for r in rows if r.min_brier is not None]
    maxes = [r.max_brier for r in rows if r.max_brier is not None]
    total_forecasts = sum(r.forecasts for r in rows)
    weighted_c = [
        (r.mean_confidence, r.forecasts)
        for r in rows
        if r.mean_confidence is not None and r.forecasts
    ]
    c_weight = sum(w for _, w in weighted_c)
    return QuestionReport(
        question="All",
        group_brier=math.fsum(briers) / len(briers) if briers else None,
        min_brier=min(mins) if mins else None,
        max_brier=max(maxes) if maxes else None,
        forecasts=total_forecasts,
        irrational_increase=sum(r.irrational_increase for r in rows),
        irrational_decrease=sum(r.irrational_decrease for r in rows),
        irrational_scale=sum(r.irrational_scale for r in rows),
        mean_confidence=(
            math.fsum(c * w for c, w in weighted_c) / c_weight if c_weight else None
        ),
    )


@dataclass(frozen=True)
class ReplayReport:
    rows: tuple[QuestionReport, ...]
    policy: str
    grid_step: float
    outcome: bool
    final_forecast: float
    follow_ups: int
    notes: tuple[str, ...] = ()
    agent_daily_brier: dict = field(default_factory=dict)

    @property
    def all_row(self) -> QuestionReport:
        return _aggregate_rows(list(self.rows))

    def to_json(self) -> dict:
        return {
            "questions": [r.to_json() for r in self.rows],
            "all": self.all_row.to_json(),
            "policy": self.policy,
            "grid_step": self.grid_step,
            "outcome": self.outcome,
            "final_forecast": self.final_forecast,
            "follow_ups": self.follow_ups,
            "agent_daily_brier": self.agent_daily_brier,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# Runner


class _ManualClock:
    def __init__(self, start: datetime):
        self.now = start

    def __call__(self) -> datetime:
        return self.now


def run_replay(
    script: DebateScript,
    policy: str = "mean",
    grid: Optional[ForecastGrid] = None,
) -> ReplayReport:
    """Run the scripted debate through the full lifecycle and report on it.

    Every scripted forecast is submitted as-is (snapped to the grid if
    needed, noted); when blocked, the nearest rational follow-up is submitted
    in its place, and the original counts toward every constraint class it
    violated.
    """
    problems = validate_script(script)
    if problems:
        raise ScriptError("; ".join(problems))
    grid = grid or ForecastGrid()
    clock = _ManualClock(script.opened_at)
    config = SessionConfig(
        session_id=f"replay-{script.question.id}",
        question=script.question,
        base_forecast=script.base_forecast,
        opened_at=script.opened_at,
        overall_deadline=script.closed_at,
        per_round_seconds=None,
        grid=grid,
        policy=AggregationPolicy(policy),
    )
    engine = SessionEngine(config, clock=clock)

    notes: list[str] = []
    confidences: list[float] = []
    counts = {"irrational_increase": 0, "irrational_decrease": 0, "irrational_scale": 0}
    n_forecasts = 0
    follow_ups = 0

    def snapped(value: float, what: str) -> float:
        if grid.contains(value):
            return value
        snapped_value = grid.snap(value)
        notes.append(f"{what} {value} off grid, snapped to {snapped_value}")
        return snapped_value

    for window in script.windows:
        clock.now = window.opens_at
        agents = script.window_agents(window)

        forecast = window.proposal_forecast
        if forecast is None:
            if window.forecasts:
                forecast = math.fsum(f.value for f in window.forecasts) / len(window.forecasts)
                notes.append(f"window {window.id}: proposal forecast from window mean {forecast}")
            else:
                forecast = engine.session.current_forecast
        forecast = snapped(forecast, f"window {window.id} proposal forecast")

        engine.open_framework(
            ProposalArgument(window.proposal_id, forecast, window.proposal_evidence),
            agents,
            framework_id=window.id,
            round_deadline=window.closes_at,
        )

        for a in window.arguments:
            if a.kind == "amendment":
                engine.add_argument(window.id, AmendmentArgument(a.id, a.direction, a.text))
            else:
                engine.add_argument(
                    window.id,
                    ProConArgument(a.id, a.kind, a.text),
                    edges=[(a.id, t) for t in a.targets],
                )

        votes = synthesize_votes(window, agents)
        for agent in agents:
            for arg_id in sorted(votes[agent]):
                engine.cast_vote(window.id, agent, arg_id, votes[agent][arg_id])

        for scripted in window.forecasts:
            clock.now = scripted.at
            value = snapped(scripted.value, f"forecast by {scripted.agent}")
            result = engine.submit_forecast(window.id, scripted.agent, value)
            confidences.append(result.verdict.confidence)
            n_forecasts += 1
            if result.blocked:
                for violation in result.verdict.violations:
                    counts[violation] += 1
                suggestion = result.verdict.suggestion
                if suggestion is None:
                    notes.append(
                        f"window {window.id}: no rational follow-up exists for {scripted.agent}"
                    )
                    continue
                follow_up = engine.submit_forecast(window.id, scripted.agent, suggestion)
                assert follow_up.accepted, "nearest rational follow-up must be accepted"
                follow_ups += 1

        clock.now = window.closes_at
        engine.resolve_framework(window.id)

    clock.now = script.closed_at
    report = engine.close_session(script.outcome)

    agent_briers = report["daily_brier"]["agents"]
    row = QuestionReport(
        question=script.question.id,
        group_brier=report["daily_brier"]["group"],
        min_brier=min(agent_briers.values()) if agent_briers else None,
        max_brier=max(agent_briers.values()) if agent_briers else None,
        forecasts=n_forecasts,
        irrational_increase=counts["irrational_increase"],
        irrational_decrease=counts["irrational_decrease"],
        irrational_scale=counts["irrational_scale"],
        mean_confidence=(math.fsum(confidences) / len(confidences)) if confidences else None,
    )
    return ReplayReport(
        rows=(row,),
        policy=policy,
        grid_step=grid.step,
        outcome=script.outcome,
        final_forecast=report["final_forecast"],
        follow_ups=follow_ups,
        notes=tuple(notes),
        agent_daily_brier={a: agent_briers[a] for a in sorted(agent_briers)},
    )


# ---------------------------------------------------------------------------
# Emission


_COLUMNS = [
    ("question", "Q"),
    ("group_brier", "Group b"),
    ("min_brier", "min(b)"),
    ("max_brier", "max(b)"),
    ("forecasts", "Forecasts"),
    ("irrational_increase", "Increase"),
    ("irrational_decrease", "Decrease"),
    ("irrational_scale", "Scale"),
    ("mean_confidence", "Mean C"),
]


def _cell(value, fixed: bool) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4f}" if fixed else repr(value)
    return str(value)


def emit_report(report: ReplayReport, format: str = "table") -> str:
    """Render the report; column order is fixed across formats."""
    rows = list(report.rows) + [report.all_row]
    if format == "json":
        return json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    if format == "csv":
        lines = [",".join(key for key, _ in _COLUMNS)]
        for row in rows:
            doc = row.to_json()
            lines.append(",".join(_cell(doc[key], fixed=False) for key, _ in _COLUMNS))
        return "\n".join(lines) + "\n"
    if format == "table":
        docs = [row.to_json() for row in rows]
        cells = [[header for _, header in _COLUMNS]]
        for doc in docs:
            cells.append([_cell(doc[key], fixed=True) for key, _ in _COLUMNS])
        widths = [max(len(r[i]) for r in cells) for i in range(len(_COLUMNS))]
        lines = []
        for i, row_cells in enumerate(cells):
            lines.append("  ".join(c.ljust(w) for c, w in zip(row_cells, widths)).rstrip())
            if i == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {format!r}")
