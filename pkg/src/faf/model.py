"""Typed debate graph for one forecasting question.

A debate round is an update framework: a single proposal argument carrying a
probability, amendment arguments pushing that probability up or down, and
pro/con arguments supporting or attacking amendments (or each other). Agents
vote on pro/con arguments and submit their own forecasts. A delegate framework
is the same graph restricted to one agent's votes and forecast; it is the unit
at which argument strengths and rationality are evaluated.

The canonical JSON shape produced here is shared by the store, the HTTP API
and debate scripts.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime
from typing import Iterable, Literal, Mapping, Optional

from .errors import UnknownAgentError
from .grid import ForecastGrid
from .timeutil import format_timestamp, parse_timestamp

Direction = Literal["increase", "decrease"]
Polarity = Literal["pro", "con"]
Status = Literal["open", "stable", "resolved"]

INCREASE: Direction = "increase"
DECREASE: Direction = "decrease"
PRO: Polarity = "pro"
CON: Polarity = "con"

OPEN: Status = "open"
STABLE: Status = "stable"
RESOLVED: Status = "resolved"

NEUTRAL_VOTE = 0.5


@dataclass(frozen=True)
class ForecastingQuestion:
    """A binary question; `outcome` stays None while the question is open."""

    id: str
    text: str
    outcome: Optional[bool] = None

    def resolved(self, outcome: bool) -> "ForecastingQuestion":
        if self.outcome is not None:
            raise ValueError(f"question {self.id} outcome already set")
        return replace(self, outcome=outcome)


@dataclass(frozen=True)
class ProposalArgument:
    """Root of a debate round: a forecast plus optional supporting evidence."""

    id: str
    forecast: float
    evidence: Optional[str] = None


@dataclass(frozen=True)
class AmendmentArgument:
    id: str
    direction: Direction
    text: Optional[str] = None


@dataclass(frozen=True)
class ProConArgument:
    id: str
    polarity: Polarity
    text: Optional[str] = None


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


Edge = tuple[str, str]


@dataclass(frozen=True)
class UpdateFramework:
    """One debate round. Immutable snapshot; mutation happens in `lifecycle`
    through copy-on-write helpers.

    `votes` holds explicit votes only; unvoted pro/con arguments default to
    the neutral 0.5, which keeps the vote function total per agent.
    """

    id: str
    proposal: ProposalArgument
    amendments: Mapping[str, AmendmentArgument] = field(default_factory=dict)
    pros_cons: Mapping[str, ProConArgument] = field(default_factory=dict)
    probabilistic_relation: frozenset[Edge] = frozenset()
    argumentative_relation: frozenset[Edge] = frozenset()
    agents: frozenset[str] = frozenset()
    votes: Mapping[str, Mapping[str, float]] = field(default_factory=dict)
    forecasts: Mapping[str, float] = field(default_factory=dict)
    status: Status = OPEN
    opened_at: Optional[datetime] = None
    round_deadline: Optional[datetime] = None
    group_forecast: Optional[float] = None

    # -- graph accessors -------------------------------------------------

    def argument_ids(self) -> set[str]:
        return {self.proposal.id} | set(self.amendments) | set(self.pros_cons)

    def increase_ids(self) -> list[str]:
        return sorted(a.id for a in self.amendments.values() if a.direction == INCREASE)

    def decrease_ids(self) -> list[str]:
        return sorted(a.id for a in self.amendments.values() if a.direction == DECREASE)

    def attackers_of(self, arg_id: str) -> list[str]:
        return sorted(
            src
            for src, dst in self.argumentative_relation
            if dst == arg_id and src in self.pros_cons and self.pros_cons[src].polarity == CON
        )

    def supporters_of(self, arg_id: str) -> list[str]:
        return sorted(
            src
            for src, dst in self.argumentative_relation
            if dst == arg_id and src in self.pros_cons and self.pros_cons[src].polarity == PRO
        )

    def effective_vote(self, agent: str, arg_id: str) -> float:
        return self.votes.get(agent, {}).get(arg_id, NEUTRAL_VOTE)

    def has_explicit_vote(self, agent: str, arg_id: str) -> bool:
        return arg_id in self.votes.get(agent, {})

    # -- copy-on-write updates (used by lifecycle) -----------------------

    def with_argument(
        self,
        argument: AmendmentArgument | ProConArgument,
        edges: Iterable[Edge],
    ) -> "UpdateFramework":
        edges = frozenset(edges)
        if isinstance(argument, AmendmentArgument):
            return replace(
                self,
                amendments={**self.amendments, argument.id: argument},
                probabilistic_relation=self.probabilistic_relation | edges,
            )
        return replace(
            self,
            pros_cons={**self.pros_cons, argument.id: argument},
            argumentative_relation=self.argumentative_relation | edges,
        )

    def with_vote(self, agent: str, arg_id: str, value: float) -> "UpdateFramework":
        per_agent = {**self.votes.get(agent, {}), arg_id: value}
        return replace(self, votes={**self.votes, agent: per_agent})

    def with_forecast(self, agent: str, value: float) -> "UpdateFramework":
        return replace(self, forecasts={**self.forecasts, agent: value})

    def with_status(self, status: Status) -> "UpdateFramework":
        return replace(self, status=status)

    def resolved_as(self, group_forecast: float) -> "UpdateFramework":
        return replace(self, status=RESOLVED, group_forecast=group_forecast)


@dataclass(frozen=True)
class DelegateFramework:
    """An update framework restricted to a single agent: identical graph,
    only that agent's votes and forecast carried over."""

    framework_id: str
    proposal: ProposalArgument
    amendments: Mapping[str, AmendmentArgument]
    pros_cons: Mapping[str, ProConArgument]
    probabilistic_relation: frozenset[Edge]
    argumentative_relation: frozenset[Edge]
    agent: str
    votes: Mapping[str, float] = field(default_factory=dict)
    forecast: Optional[float] = None

    def argument_ids(self) -> set[str]:
        return {self.proposal.id} | set(self.amendments) | set(self.pros_cons)

    def increase_ids(self) -> list[str]:
        return sorted(a.id for a in self.amendments.values() if a.direction == INCREASE)

    def decrease_ids(self) -> list[str]:
        return sorted(a.id for a in self.amendments.values() if a.direction == DECREASE)

    def attackers_of(self, arg_id: str) -> list[str]:
        return sorted(
            src
            for src, dst in self.argumentative_relation
            if dst == arg_id and src in self.pros_cons and self.pros_cons[src].polarity == CON
        )

    def supporters_of(self, arg_id: str) -> list[str]:
        return sorted(
            src
            for src, dst in self.argumentative_relation
            if dst == arg_id and src in self.pros_cons and self.pros_cons[src].polarity == PRO
        )

    def effective_vote(self, arg_id: str) -> float:
        return self.votes.get(arg_id, NEUTRAL_VOTE)


def delegate(framework: UpdateFramework, agent: str) -> DelegateFramework:
    """Restrict `framework` to one agent's votes and forecast."""
    if agent not in framework.agents:
        raise UnknownAgentError(f"agent {agent!r} not in framework {framework.id}")
    return DelegateFramework(
        framework_id=framework.id,
        proposal=framework.proposal,
        amendments=framework.amendments,
        pros_cons=framework.pros_cons,
        probabilistic_relation=framework.probabilistic_relation,
        argumentative_relation=framework.argumentative_relation,
        agent=agent,
        votes=dict(framework.votes.get(agent, {})),
        forecast=framework.forecasts.get(agent),
    )


@dataclass(frozen=True)
class ForecastingSession:
    """A forecasting question plus its ordered, non-concurrent debate rounds."""

    id: str
    question: ForecastingQuestion
    base_forecast: float
    frameworks: tuple[UpdateFramework, ...] = ()
    overall_deadline: Optional[datetime] = None
    per_round_deadline: Optional[float] = None  # seconds

    @property
    def closed(self) -> bool:
        return self.question.outcome is not None

    @property
    def current_forecast(self) -> float:
        """Latest group forecast, falling back to the base forecast."""
        for fw in reversed(self.frameworks):
            if fw.status == RESOLVED and fw.group_forecast is not None:
                return fw.group_forecast
        return self.base_forecast

    def open_framework(self) -> Optional[UpdateFramework]:
        for fw in self.frameworks:
            if fw.status != RESOLVED:
                return fw
        return None

    def framework(self, framework_id: str) -> Optional[UpdateFramework]:
        for fw in self.frameworks:
            if fw.id == framework_id:
                return fw
        return None

    def with_framework(self, fw: UpdateFramework) -> "ForecastingSession":
        for i, existing in enumerate(self.frameworks):
            if existing.id == fw.id:
                frameworks = self.frameworks[:i] + (fw,) + self.frameworks[i + 1 :]
                break
        else:
            frameworks = self.frameworks + (fw,)
        return replace(self, frameworks=frameworks)

    def with_outcome(self, outcome: bool) -> "ForecastingSession":
        return replace(self, question=self.question.resolved(outcome))


# ---------------------------------------------------------------------------
# Validation


def _has_cycle(nodes: set[str], edges: Iterable[Edge]) -> bool:
    adjacency: dict[str, list[str]] = {n: [] for n in nodes}
    indegree = {n: 0 for n in nodes}
    for src, dst in edges:
        if src in adjacency and dst in indegree:
            adjacency[src].append(dst)
            indegree[dst] += 1
    queue = [n for n, d in indegree.items() if d == 0]
    seen = 0
    while queue:
        node = queue.pop()
        seen += 1
        for nxt in adjacency[node]:
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                queue.append(nxt)
    return seen != len(nodes)


def validate_framework(
    u: UpdateFramework | DelegateFramework,
    grid: Optional[ForecastGrid] = None,
) -> ValidationReport:
    """Check every structural invariant; never raises, reports everything.

    An empty report means the framework is well-formed. Passing a grid also
    checks that forecasts sit on it.
    """
    violations: list[Violation] = []
    is_delegate = isinstance(u, DelegateFramework)

    proposal_id = u.proposal.id
    amendment_ids = set(u.amendments)
    procon_ids = set(u.pros_cons)

    # id disjointness across {P}, increase, decrease, pro, con sets
    groups = {
        "proposal": {proposal_id},
        "increase": {a.id for a in u.amendments.values() if a.direction == INCREASE},
        "decrease": {a.id for a in u.amendments.values() if a.direction == DECREASE},
        "pro": {a.id for a in u.pros_cons.values() if a.polarity == PRO},
        "con": {a.id for a in u.pros_cons.values() if a.polarity == CON},
    }
    names = list(groups)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            overlap = groups[a] & groups[b]
            for arg_id in sorted(overlap):
                violations.append(
                    Violation(
                        "disjointness",
                        f"id {arg_id!r} appears in both {a} and {b} sets",
                    )
                )

    for key, arg in u.amendments.items():
        if key != arg.id:
            violations.append(Violation("disjointness", f"amendment keyed {key!r} has id {arg.id!r}"))
    for key, arg in u.pros_cons.items():
        if key != arg.id:
            violations.append(Violation("disjointness", f"pro/con keyed {key!r} has id {arg.id!r}"))

    # probabilistic relation: amendment -> proposal only
    for src, dst in sorted(u.probabilistic_relation):
        if src not in amendment_ids:
            violations.append(
                Violation("edge_typing", f"probabilistic edge {src}->{dst} must source an amendment")
            )
        if dst != proposal_id:
            violations.append(
                Violation("edge_typing", f"probabilistic edge {src}->{dst} must target the proposal")
            )

    # argumentative relation: pro/con -> amendment or pro/con
    for src, dst in sorted(u.argumentative_relation):
        if src not in procon_ids:
            violations.append(
                Violation("edge_typing", f"argumentative edge {src}->{dst} must source a pro/con argument")
            )
        if dst not in amendment_ids and dst not in procon_ids:
            violations.append(
                Violation(
                    "edge_typing",
                    f"argumentative edge {src}->{dst} must target an amendment or pro/con argument",
                )
            )

    # acyclicity of the union graph
    nodes = {proposal_id} | amendment_ids | procon_ids
    union_edges = set(u.probabilistic_relation) | set(u.argumentative_relation)
    scoped = {(s, d) for s, d in union_edges if s in nodes and d in nodes}
    if _has_cycle(nodes, scoped):
        violations.append(Violation("acyclicity", "the union of the relations contains a cycle"))

    # votes: a total function over agents x pro/con arguments (explicit
    # entries plus the neutral default); entries outside that domain are
    # ill-typed
    if is_delegate:
        vote_maps = {u.agent: u.votes}
        agents: set[str] = {u.agent}
    else:
        vote_maps = {a: dict(m) for a, m in u.votes.items()}
        agents = set(u.agents)
    for agent, per_agent in sorted(vote_maps.items()):
        if agent not in agents:
            violations.append(Violation("vote_totality", f"votes recorded for unknown agent {agent!r}"))
        for arg_id, value in sorted(per_agent.items()):
            if arg_id not in procon_ids:
                violations.append(
                    Violation("vote_totality", f"vote by {agent!r} targets non-pro/con argument {arg_id!r}")
                )
            if not 0.0 <= value <= 1.0:
                violations.append(
                    Violation("vote_totality", f"vote by {agent!r} on {arg_id!r} outside [0,1]: {value}")
                )

    # agent count
    if is_delegate:
        if not u.agent:
            violations.append(Violation("agent_count", "delegate framework needs exactly one agent"))
    elif len(u.agents) < 2:
        violations.append(Violation("agent_count", f"needs more than one agent, got {len(u.agents)}"))

    # forecasts: range, grid, known agents
    forecast_items = (
        [(u.agent, u.forecast)] if is_delegate else sorted(u.forecasts.items())
    )
    for agent, value in forecast_items:
        if value is None:
            continue
        if not is_delegate and agent not in agents:
            violations.append(Violation("vote_totality", f"forecast recorded for unknown agent {agent!r}"))
        if not 0.0 <= value <= 1.0:
            violations.append(Violation("forecast_range", f"forecast of {agent!r} outside [0,1]: {value}"))
        elif grid is not None and not grid.contains(value):
            violations.append(Violation("forecast_range", f"forecast of {agent!r} off grid: {value}"))
    if not 0.0 <= u.proposal.forecast <= 1.0:
        violations.append(Violation("forecast_range", f"proposal forecast outside [0,1]: {u.proposal.forecast}"))
    elif grid is not None and not grid.contains(u.proposal.forecast):
        violations.append(Violation("forecast_range", f"proposal forecast off grid: {u.proposal.forecast}"))

    return ValidationReport(tuple(violations))


# ---------------------------------------------------------------------------
# Canonical JSON


def _argument_to_json(arg: AmendmentArgument | ProConArgument) -> dict:
    if isinstance(arg, AmendmentArgument):
        return {"id": arg.id, "direction": arg.direction, "text": arg.text}
    return {"id": arg.id, "polarity": arg.polarity, "text": arg.text}


def framework_to_json(u: UpdateFramework) -> dict:
    return {
        "id": u.id,
        "proposal": {
            "id": u.proposal.id,
            "forecast": u.proposal.forecast,
            "evidence": u.proposal.evidence,
        },
        "amendments": [_argument_to_json(u.amendments[k]) for k in sorted(u.amendments)],
        "pros_cons": [_argument_to_json(u.pros_cons[k]) for k in sorted(u.pros_cons)],
        "probabilistic_relation": [list(e) for e in sorted(u.probabilistic_relation)],
        "argumentative_relation": [list(e) for e in sorted(u.argumentative_relation)],
        "agents": sorted(u.agents),
        "votes": {
            agent: {arg: u.votes[agent][arg] for arg in sorted(u.votes[agent])}
            for agent in sorted(u.votes)
            if u.votes[agent]
        },
        "forecasts": {agent: u.forecasts[agent] for agent in sorted(u.forecasts)},
        "status": u.status,
        "opened_at": format_timestamp(u.opened_at) if u.opened_at else None,
        "round_deadline": format_timestamp(u.round_deadline) if u.round_deadline else None,
        "group_forecast": u.group_forecast,
    }


def framework_from_json(doc: dict) -> UpdateFramework:
    amendments = {
        a["id"]: AmendmentArgument(a["id"], a["direction"], a.get("text"))
        for a in doc.get("amendments", [])
    }
    pros_cons = {
        a["id"]: ProConArgument(a["id"], a["polarity"], a.get("text"))
        for a in doc.get("pros_cons", [])
    }
    proposal = doc["proposal"]
    return UpdateFramework(
        id=doc["id"],
        proposal=ProposalArgument(proposal["id"], proposal["forecast"], proposal.get("evidence")),
        amendments=amendments,
        pros_cons=pros_cons,
        probabilistic_relation=frozenset(tuple(e) for e in doc.get("probabilistic_relation", [])),
        argumentative_relation=frozenset(tuple(e) for e in doc.get("argumentative_relation", [])),
        agents=frozenset(doc.get("agents", [])),
        votes={a: dict(m) for a, m in doc.get("votes", {}).items()},
        forecasts=dict(doc.get("forecasts", {})),
        status=doc.get("status", OPEN),
        opened_at=parse_timestamp(doc["opened_at"]) if doc.get("opened_at") else None,
        round_deadline=parse_timestamp(doc["round_deadline"]) if doc.get("round_deadline") else None,
        group_forecast=doc.get("group_forecast"),
    )


def session_to_json(s: ForecastingSession) -> dict:
    return {
        "id": s.id,
        "question": {
            "id": s.question.id,
            "text": s.question.text,
            "outcome": s.question.outcome,
        },
        "base_forecast": s.base_forecast,
        "frameworks": [framework_to_json(fw) for fw in s.frameworks],
        "overall_deadline": format_timestamp(s.overall_deadline) if s.overall_deadline else None,
        "per_round_deadline": s.per_round_deadline,
    }


def session_from_json(doc: dict) -> ForecastingSession:
    q = doc["question"]
    return ForecastingSession(
        id=doc["id"],
        question=ForecastingQuestion(q["id"], q["text"], q.get("outcome")),
        base_forecast=doc["base_forecast"],
        frameworks=tuple(framework_from_json(f) for f in doc.get("frameworks", [])),
        overall_deadline=parse_timestamp(doc["overall_deadline"]) if doc.get("overall_deadline") else None,
        per_round_deadline=doc.get("per_round_deadline"),
    )
