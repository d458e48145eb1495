"""The debate state machine, realized as an event-sourced engine.

One engine drives one forecasting session: open an update framework, accept
arguments, votes and forecasts, block irrational forecasts, detect the
collectively rational (stable) state, resolve to a group forecast, and close
the session against the realized outcome.

Every mutation is recorded as a `LifecycleEvent`; the live state is the fold
of the event log over `apply_event`, so replaying a log reconstructs the
state exactly. Events carry the facts they establish (verdicts, weights,
reports), never recomputing them on replay. Commands on one engine are
serialized by an internal lock; snapshots handed out are immutable.
"""
from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Callable, Iterable, Mapping, Optional

from . import aggregation
from .aggregation import AgentRecord, AggregationPolicy
from .errors import (
    ConcurrentOpenError,
    CycleError,
    DeadlinePassedError,
    DegenerateProposalError,
    DuplicateArgumentError,
    EdgeTypingError,
    FrameworkNotOpenError,
    InvalidFrameworkError,
    InvalidVoteError,
    NotStableError,
    ObligationPendingError,
    SessionClosedError,
    UnknownAgentError,
    UnknownArgumentError,
    UnknownFrameworkError,
    VoteTargetError,
)
from .grid import ForecastGrid
from .model import (
    OPEN,
    RESOLVED,
    STABLE,
    AmendmentArgument,
    Edge,
    ForecastingQuestion,
    ForecastingSession,
    ProConArgument,
    ProposalArgument,
    UpdateFramework,
    delegate,
    session_to_json,
    validate_framework,
)
from .rationality import RationalityVerdict, check_forecast
from .timeutil import format_timestamp, parse_timestamp, utcnow

FRAMEWORK_OPENED = "framework_opened"
ARGUMENT_ADDED = "argument_added"
VOTE_CAST = "vote_cast"
FORECAST_SUBMITTED = "forecast_submitted"
FORECAST_BLOCKED = "forecast_blocked"
FRAMEWORK_RESOLVED = "framework_resolved"
SESSION_CLOSED = "session_closed"

EVENT_KINDS = (
    FRAMEWORK_OPENED,
    ARGUMENT_ADDED,
    VOTE_CAST,
    FORECAST_SUBMITTED,
    FORECAST_BLOCKED,
    FRAMEWORK_RESOLVED,
    SESSION_CLOSED,
)

Clock = Callable[[], datetime]
RecordLookup = Callable[[str], Optional[AgentRecord]]


@dataclass(frozen=True)
class LifecycleEvent:
    seq: int
    at: datetime
    kind: str
    payload: dict

    def to_json(self) -> dict:
        return {
            "seq": self.seq,
            "at": format_timestamp(self.at),
            "kind": self.kind,
            "payload": self.payload,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LifecycleEvent":
        return cls(
            seq=doc["seq"],
            at=parse_timestamp(doc["at"]),
            kind=doc["kind"],
            payload=doc["payload"],
        )


@dataclass(frozen=True)
class PendingObligation:
    """An explicit vote still owed by an agent on a pro/con argument."""

    agent: str
    argument_id: str


@dataclass(frozen=True)
class SubmissionResult:
    accepted: bool
    verdict: RationalityVerdict

    @property
    def blocked(self) -> bool:
        return not self.accepted


@dataclass(frozen=True)
class SessionConfig:
    """Immutable creation record of a session; everything replay needs."""

    session_id: str
    question: ForecastingQuestion
    base_forecast: float
    opened_at: datetime
    overall_deadline: Optional[datetime] = None
    per_round_seconds: Optional[float] = None
    grid: ForecastGrid = field(default_factory=ForecastGrid)
    policy: AggregationPolicy = field(default_factory=AggregationPolicy)

    def to_json(self) -> dict:
        return {
            "session_id": self.session_id,
            "question": {"id": self.question.id, "text": self.question.text},
            "base_forecast": self.base_forecast,
            "opened_at": format_timestamp(self.opened_at),
            "overall_deadline": (
                format_timestamp(self.overall_deadline) if self.overall_deadline else None
            ),
            "per_round_seconds": self.per_round_seconds,
            "grid_denominator": self.grid.denominator,
            "policy": {"kind": self.policy.kind, "activation_count": self.policy.activation_count},
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SessionConfig":
        policy = doc.get("policy", {})
        return cls(
            session_id=doc["session_id"],
            question=ForecastingQuestion(doc["question"]["id"], doc["question"]["text"]),
            base_forecast=doc["base_forecast"],
            opened_at=parse_timestamp(doc["opened_at"]),
            overall_deadline=(
                parse_timestamp(doc["overall_deadline"]) if doc.get("overall_deadline") else None
            ),
            per_round_seconds=doc.get("per_round_seconds"),
            grid=ForecastGrid(doc.get("grid_denominator", 100)),
            policy=AggregationPolicy(
                policy.get("kind", "mean"), policy.get("activation_count", 1)
            ),
        )


def initial_session(config: SessionConfig) -> ForecastingSession:
    return ForecastingSession(
        id=config.session_id,
        question=config.question,
        base_forecast=config.base_forecast,
        frameworks=(),
        overall_deadline=config.overall_deadline,
        per_round_deadline=config.per_round_seconds,
    )


# ---------------------------------------------------------------------------
# Derived state


def pending_obligations(
    fw: UpdateFramework, agent: Optional[str] = None
) -> list[PendingObligation]:
    """Votes still owed: one obligation per (agent, pro/con argument) pair
    lacking an explicit vote."""
    agents = [agent] if agent is not None else sorted(fw.agents)
    return [
        PendingObligation(a, arg_id)
        for arg_id in sorted(fw.pros_cons)
        for a in agents
        if not fw.has_explicit_vote(a, arg_id)
    ]


def collectively_rational(fw: UpdateFramework, grid: ForecastGrid) -> bool:
    """True iff every agent holds a strictly rational forecast and no vote
    obligations remain: the framework's stable state."""
    if pending_obligations(fw):
        return False
    for agent in fw.agents:
        value = fw.forecasts.get(agent)
        if value is None:
            return False
        if not check_forecast(delegate(fw, agent), value, grid).accepted:
            return False
    return True


def _derive_status(fw: UpdateFramework, grid: ForecastGrid) -> UpdateFramework:
    if fw.status == RESOLVED:
        return fw
    status = STABLE if collectively_rational(fw, grid) else OPEN
    return fw.with_status(status) if fw.status != status else fw


def _argument_from_json(doc: dict) -> AmendmentArgument | ProConArgument:
    if "direction" in doc:
        return AmendmentArgument(doc["id"], doc["direction"], doc.get("text"))
    return ProConArgument(doc["id"], doc["polarity"], doc.get("text"))


def _argument_to_json(arg: AmendmentArgument | ProConArgument) -> dict:
    if isinstance(arg, AmendmentArgument):
        return {"id": arg.id, "direction": arg.direction, "text": arg.text}
    return {"id": arg.id, "polarity": arg.polarity, "text": arg.text}


# ---------------------------------------------------------------------------
# Reducer: the only code that changes session state


def apply_event(
    session: ForecastingSession, event: LifecycleEvent, config: SessionConfig
) -> ForecastingSession:
    """Pure state transition; replaying a log through this function yields a
    state identical to the live one, field for field."""
    payload = event.payload
    kind = event.kind

    if kind == FRAMEWORK_OPENED:
        p = payload["proposal"]
        fw = UpdateFramework(
            id=payload["framework_id"],
            proposal=ProposalArgument(p["id"], p["forecast"], p.get("evidence")),
            agents=frozenset(payload["agents"]),
            status=OPEN,
            opened_at=event.at,
            round_deadline=(
                parse_timestamp(payload["round_deadline"])
                if payload.get("round_deadline")
                else None
            ),
        )
        return session.with_framework(_derive_status(fw, config.grid))

    if kind == SESSION_CLOSED:
        return session.with_outcome(payload["outcome"])

    fw = session.framework(payload["framework_id"])
    assert fw is not None, f"event {event.seq} references unknown framework"

    if kind == ARGUMENT_ADDED:
        argument = _argument_from_json(payload["argument"])
        edges = [tuple(e) for e in payload["edges"]]
        fw = fw.with_argument(argument, edges)
    elif kind == VOTE_CAST:
        fw = fw.with_vote(payload["agent"], payload["argument_id"], payload["value"])
    elif kind == FORECAST_SUBMITTED:
        fw = fw.with_forecast(payload["agent"], payload["value"])
    elif kind == FORECAST_BLOCKED:
        return session  # advisory only: a blocked submission changes nothing
    elif kind == FRAMEWORK_RESOLVED:
        return session.with_framework(fw.resolved_as(payload["group_forecast"]))
    else:
        raise ValueError(f"unknown event kind {kind!r}")

    return session.with_framework(_derive_status(fw, config.grid))


# ---------------------------------------------------------------------------
# Engine


class SessionEngine:
    """Serialized command interface over one session's event log.

    `event_sink` (when given) must durably persist each event before the
    in-memory state advances; `records` supplies cross-session accuracy
    history for Brier-weighted aggregation; `history` supplies the full
    event log when the engine was hydrated from a snapshot.
    """

    def __init__(
        self,
        config: SessionConfig,
        *,
        clock: Optional[Clock] = None,
        records: Optional[RecordLookup] = None,
        event_sink: Optional[Callable[[LifecycleEvent], None]] = None,
        history: Optional[Callable[[], list[LifecycleEvent]]] = None,
    ):
        self.config = config
        self._clock = clock or utcnow
        self._records = records or (lambda agent: None)
        self._event_sink = event_sink
        self._history = history
        self._session = initial_session(config)
        self._events: list[LifecycleEvent] = []
        self._last_seq = 0
        self._lock = threading.RLock()

    # -- hydration -------------------------------------------------------

    @classmethod
    def replay(cls, config: SessionConfig, events: Iterable[LifecycleEvent], **kwargs) -> "SessionEngine":
        engine = cls(config, **kwargs)
        for event in events:
            engine._session = apply_event(engine._session, event, config)
            engine._events.append(event)
            engine._last_seq = event.seq
        return engine

    @classmethod
    def from_snapshot(
        cls,
        config: SessionConfig,
        state: dict,
        seq: int,
        trailing: Iterable[LifecycleEvent] = (),
        **kwargs,
    ) -> "SessionEngine":
        """Hydrate from a canonical-JSON state plus the events after it."""
        from .model import session_from_json

        engine = cls(config, **kwargs)
        engine._session = session_from_json(state)
        engine._last_seq = seq
        for event in trailing:
            engine._session = apply_event(engine._session, event, config)
            engine._events.append(event)
            engine._last_seq = event.seq
        return engine

    # -- snapshots ---------------------------------------------------------

    @property
    def session(self) -> ForecastingSession:
        return self._session

    @property
    def events(self) -> tuple[LifecycleEvent, ...]:
        return tuple(self._events)

    @property
    def last_seq(self) -> int:
        return self._last_seq

    @property
    def grid(self) -> ForecastGrid:
        return self.config.grid

    def state_json(self) -> dict:
        return session_to_json(self._session)

    def state_hash(self) -> str:
        canonical = json.dumps(self.state_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()

    def full_history(self) -> list[LifecycleEvent]:
        if self._history is not None:
            return self._history()
        return list(self._events)

    # -- command plumbing --------------------------------------------------

    def _now(self) -> datetime:
        return self._clock()

    def _emit(self, scratch: ForecastingSession, events: list[LifecycleEvent], kind: str, at: datetime, payload: dict) -> ForecastingSession:
        event = LifecycleEvent(self._last_seq + len(events) + 1, at, kind, payload)
        events.append(event)
        return apply_event(scratch, event, self.config)

    def _commit(self, scratch: ForecastingSession, events: list[LifecycleEvent]) -> None:
        if self._event_sink is not None:
            for event in events:
                self._event_sink(event)
        self._session = scratch
        self._events.extend(events)
        if events:
            self._last_seq = events[-1].seq

    def _require_open_session(self) -> None:
        if self._session.closed:
            raise SessionClosedError(f"session {self.config.session_id} is closed")

    def _get_framework(self, framework_id: str) -> UpdateFramework:
        fw = self._session.framework(framework_id)
        if fw is None:
            raise UnknownFrameworkError(f"no framework {framework_id!r} in session {self.config.session_id}")
        return fw

    def _get_mutable_framework(self, framework_id: str) -> UpdateFramework:
        fw = self._get_framework(framework_id)
        if fw.status == RESOLVED:
            raise FrameworkNotOpenError(f"framework {framework_id!r} is resolved and immutable")
        return fw

    def delegate_for(self, framework_id: str, agent: str):
        return delegate(self._get_framework(framework_id), agent)

    # -- commands ----------------------------------------------------------

    def open_framework(
        self,
        proposal: ProposalArgument | Mapping,
        agents: Iterable[str],
        framework_id: Optional[str] = None,
        round_deadline: Optional[datetime] = None,
    ) -> UpdateFramework:
        """Open the next debate round. The proposal forecast defaults to the
        session's current forecast and must be a positive grid value."""
        with self._lock:
            self._require_open_session()
            now = self._now()
            if self._session.open_framework() is not None:
                raise ConcurrentOpenError(
                    f"framework {self._session.open_framework().id!r} is still open"
                )
            if self._session.overall_deadline and now >= self._session.overall_deadline:
                raise DeadlinePassedError("the session deadline has passed")

            if isinstance(proposal, Mapping):
                proposal = ProposalArgument(
                    proposal["id"], proposal.get("forecast"), proposal.get("evidence")
                )
            forecast = proposal.forecast
            if forecast is None:
                # default to the session forecast; group forecasts need not sit
                # on the grid, proposals must
                forecast = self.grid.snap(self._session.current_forecast)
                proposal = ProposalArgument(proposal.id, forecast, proposal.evidence)
            if self.grid.tick(forecast) == 0:
                raise DegenerateProposalError("proposal forecast must be > 0")

            agents = frozenset(agents)
            if len(agents) < 2:
                raise InvalidFrameworkError("an update framework needs more than one agent")
            framework_id = framework_id or f"{self.config.session_id}-u{len(self._session.frameworks) + 1}"
            if self._session.framework(framework_id) is not None:
                raise InvalidFrameworkError(f"framework id {framework_id!r} already used")
            if round_deadline is None and self.config.per_round_seconds is not None:
                round_deadline = now + timedelta(seconds=self.config.per_round_seconds)

            events: list[LifecycleEvent] = []
            scratch = self._emit(
                self._session,
                events,
                FRAMEWORK_OPENED,
                now,
                {
                    "framework_id": framework_id,
                    "proposal": {
                        "id": proposal.id,
                        "forecast": forecast,
                        "evidence": proposal.evidence,
                    },
                    "agents": sorted(agents),
                    "round_deadline": format_timestamp(round_deadline) if round_deadline else None,
                },
            )
            self._commit(scratch, events)
            return self._session.framework(framework_id)

    def add_argument(
        self,
        framework_id: str,
        argument: AmendmentArgument | ProConArgument | Mapping,
        edges: Iterable[Edge] = (),
    ) -> UpdateFramework:
        """Insert an amendment or pro/con argument with its relation edges.

        Adding a pro/con argument puts a vote obligation on every agent;
        any standing forecast the new argument makes irrational is flagged
        with a blocked event (the forecast itself stays recorded).
        """
        with self._lock:
            self._require_open_session()
            fw = self._get_mutable_framework(framework_id)
            if isinstance(argument, Mapping):
                argument = _argument_from_json(dict(argument))
            if argument.id in fw.argument_ids():
                raise DuplicateArgumentError(f"argument id {argument.id!r} already in framework")

            edges = [tuple(e) for e in edges]
            if isinstance(argument, AmendmentArgument) and not edges:
                edges = [(argument.id, fw.proposal.id)]
            known = fw.argument_ids() | {argument.id}
            for src, dst in edges:
                if src not in known or dst not in known:
                    raise UnknownArgumentError(f"edge {src}->{dst} references an unknown argument")

            candidate = fw.with_argument(argument, edges)
            report = validate_framework(candidate)
            codes = report.codes()
            if "acyclicity" in codes:
                raise CycleError(str(report))
            if codes - {"forecast_range"}:
                raise EdgeTypingError(str(report))

            now = self._now()
            events: list[LifecycleEvent] = []
            scratch = self._emit(
                self._session,
                events,
                ARGUMENT_ADDED,
                now,
                {
                    "framework_id": framework_id,
                    "argument": _argument_to_json(argument),
                    "edges": [list(e) for e in edges],
                },
            )
            scratch = self._flag_irrational(scratch, events, framework_id, now)
            self._commit(scratch, events)
            return self._session.framework(framework_id)

    def _flag_irrational(
        self,
        scratch: ForecastingSession,
        events: list[LifecycleEvent],
        framework_id: str,
        at: datetime,
        only_agent: Optional[str] = None,
    ) -> ForecastingSession:
        """Re-check standing forecasts after a graph or vote change."""
        fw = scratch.framework(framework_id)
        agents = [only_agent] if only_agent else sorted(fw.agents)
        for agent in agents:
            value = fw.forecasts.get(agent)
            if value is None:
                continue
            verdict = check_forecast(delegate(fw, agent), value, self.grid)
            if not verdict.accepted:
                scratch = self._emit(
                    scratch,
                    events,
                    FORECAST_BLOCKED,
                    at,
                    {
                        "framework_id": framework_id,
                        "agent": agent,
                        "value": value,
                        "verdict": verdict.to_json(),
                        "recheck": True,
                    },
                )
        return scratch

    def cast_vote(self, framework_id: str, agent: str, argument_id: str, value: float) -> UpdateFramework:
        """Record an explicit vote (overwriting any prior one) and clear the
        agent's obligation on the argument. Re-submitting an identical vote
        is a no-op."""
        with self._lock:
            self._require_open_session()
            fw = self._get_mutable_framework(framework_id)
            if agent not in fw.agents:
                raise UnknownAgentError(f"agent {agent!r} not in framework {framework_id!r}")
            if argument_id not in fw.pros_cons:
                if argument_id in fw.amendments or argument_id == fw.proposal.id:
                    raise VoteTargetError("voting is restricted to pro/con arguments")
                raise UnknownArgumentError(f"no argument {argument_id!r} in framework {framework_id!r}")
            if not 0.0 <= value <= 1.0:
                raise InvalidVoteError(f"vote must be in [0,1], got {value}")
            if fw.has_explicit_vote(agent, argument_id) and fw.votes[agent][argument_id] == value:
                return fw

            now = self._now()
            events: list[LifecycleEvent] = []
            scratch = self._emit(
                self._session,
                events,
                VOTE_CAST,
                now,
                {
                    "framework_id": framework_id,
                    "agent": agent,
                    "argument_id": argument_id,
                    "value": value,
                },
            )
            scratch = self._flag_irrational(scratch, events, framework_id, now, only_agent=agent)
            self._commit(scratch, events)
            return self._session.framework(framework_id)

    def submit_forecast(self, framework_id: str, agent: str, value: float) -> SubmissionResult:
        """Store the agent's forecast if strictly rational; otherwise return
        the blocking verdict (with the nearest rational suggestion) and leave
        the state untouched. Outstanding vote obligations must be cleared
        first."""
        with self._lock:
            self._require_open_session()
            fw = self._get_mutable_framework(framework_id)
            if agent not in fw.agents:
                raise UnknownAgentError(f"agent {agent!r} not in framework {framework_id!r}")
            self.grid.tick(value)  # raises OffGridError for off-grid values
            pending = pending_obligations(fw, agent)
            if pending:
                owed = ", ".join(o.argument_id for o in pending)
                raise ObligationPendingError(f"agent {agent!r} must vote on: {owed}")

            verdict = check_forecast(delegate(fw, agent), value, self.grid)
            now = self._now()
            events: list[LifecycleEvent] = []
            if verdict.accepted:
                scratch = self._emit(
                    self._session,
                    events,
                    FORECAST_SUBMITTED,
                    now,
                    {"framework_id": framework_id, "agent": agent, "value": value},
                )
            else:
                scratch = self._emit(
                    self._session,
                    events,
                    FORECAST_BLOCKED,
                    now,
                    {
                        "framework_id": framework_id,
                        "agent": agent,
                        "value": value,
                        "verdict": verdict.to_json(),
                        "recheck": False,
                    },
                )
            self._commit(scratch, events)
            return SubmissionResult(accepted=verdict.accepted, verdict=verdict)

    def check_stable(self, framework_id: str) -> bool:
        with self._lock:
            fw = self._get_mutable_framework(framework_id)
            return collectively_rational(fw, self.grid)

    def resolve_framework(self, framework_id: str) -> float:
        """Freeze the round and aggregate into the group forecast.

        Allowed once the framework is stable, or at the round deadline, in
        which case agents with missing or irrational forecasts are excluded
        from the aggregation (recorded in the event payload). With nobody
        eligible the session forecast simply carries over.
        """
        with self._lock:
            self._require_open_session()
            fw = self._get_mutable_framework(framework_id)
            now = self._now()
            stable = collectively_rational(fw, self.grid)
            deadline_reached = (
                fw.round_deadline is not None and now >= fw.round_deadline
            ) or (
                self._session.overall_deadline is not None
                and now >= self._session.overall_deadline
            )
            if not stable and not deadline_reached:
                raise NotStableError(
                    f"framework {framework_id!r} is not collectively rational and its deadline has not passed"
                )

            included: dict[str, float] = {}
            excluded: list[str] = []
            for agent in sorted(fw.agents):
                value = fw.forecasts.get(agent)
                if value is not None and check_forecast(delegate(fw, agent), value, self.grid).accepted:
                    included[agent] = value
                else:
                    excluded.append(agent)

            if included:
                records = {}
                for agent in included:
                    record = self._records(agent)
                    if record is not None:
                        records[agent] = record
                value, weights, policy_used = self.config.policy.aggregate(included, records)
            else:
                value, weights, policy_used = self._session.current_forecast, {}, "none"

            events: list[LifecycleEvent] = []
            scratch = self._emit(
                self._session,
                events,
                FRAMEWORK_RESOLVED,
                now,
                {
                    "framework_id": framework_id,
                    "group_forecast": value,
                    "policy": policy_used,
                    "weights": weights,
                    "included": included,
                    "excluded": excluded,
                },
            )
            self._commit(scratch, events)
            return value

    def close_session(self, outcome: bool) -> dict:
        """Settle the session against the realized outcome.

        Each agent's record gains one (last rational forecast, outcome) entry
        per resolved framework they forecast in; daily forecast series and
        Brier scores are computed from the full event history. The final
        report is frozen into the closing event.
        """
        with self._lock:
            if self._session.closed:
                raise SessionClosedError(f"session {self.config.session_id} already closed")
            now = self._now()
            report = self._build_final_report(outcome, now)
            events: list[LifecycleEvent] = []
            scratch = self._emit(
                self._session, events, SESSION_CLOSED, now, {"outcome": outcome, "report": report}
            )
            self._commit(scratch, events)
            return report

    def _build_final_report(self, outcome: bool, now: datetime) -> dict:
        session = self._session
        record_updates: dict[str, list[dict]] = {}
        for fw in session.frameworks:
            if fw.status != RESOLVED:
                continue
            for agent in sorted(fw.agents):
                value = fw.forecasts.get(agent)
                if value is None:
                    continue
                if check_forecast(delegate(fw, agent), value, self.grid).accepted:
                    record_updates.setdefault(agent, []).append(
                        {"forecast": value, "outcome": outcome}
                    )

        records: dict[str, dict] = {}
        for agent in sorted(record_updates):
            record = self._records(agent) or AgentRecord(agent)
            for entry in record_updates[agent]:
                record = record.with_entry(entry["forecast"], entry["outcome"])
            records[agent] = record.to_json()

        observations: dict[str, list[tuple[datetime, float]]] = {}
        for event in self.full_history():
            if event.kind == FORECAST_SUBMITTED:
                agent = event.payload["agent"]
                observations.setdefault(agent, []).append((event.at, event.payload["value"]))

        agent_series = {
            agent: aggregation.build_daily_series(obs, now, outcome)
            for agent, obs in sorted(observations.items())
        }
        group_series = aggregation.group_daily_series(agent_series, outcome)
        daily_briers = {
            agent: aggregation.daily_brier(series, outcome)
            for agent, series in agent_series.items()
            if not series.empty
        }

        return {
            "outcome": outcome,
            "base_forecast": session.base_forecast,
            "final_forecast": session.current_forecast,
            "resolved_frameworks": sum(1 for fw in session.frameworks if fw.status == RESOLVED),
            "record_updates": record_updates,
            "records": records,
            "daily": {
                "agents": {a: s.to_json() for a, s in agent_series.items()},
                "group": group_series.to_json(),
            },
            "daily_brier": {
                "agents": daily_briers,
                "group": (
                    aggregation.daily_brier(group_series, outcome)
                    if not group_series.empty
                    else None
                ),
            },
        }
