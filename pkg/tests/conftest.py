"""Shared builders: the Tokyo example debate and randomized frameworks."""
from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

import pytest

from faf.aggregation import AggregationPolicy
from faf.grid import ForecastGrid
from faf.lifecycle import SessionConfig, SessionEngine
from faf.model import (
    AmendmentArgument,
    DelegateFramework,
    ForecastingQuestion,
    ProConArgument,
    ProposalArgument,
    UpdateFramework,
    delegate,
)

T0 = datetime(2021, 5, 1, tzinfo=timezone.utc)

# the running Olympics example: proposal at 0.75, three amendments
# (d1, d2 decrease; i1 increase), cons a1..a3, pros s1..s2
TOKYO_ARGUMENTS = [
    AmendmentArgument("d1", "decrease", "officials will ignore the poll"),
    AmendmentArgument("d2", "decrease", "the poll source is unreliable"),
    AmendmentArgument("i1", "increase", "opposition will amplify the pressure"),
    ProConArgument("a1", "con", "mass-death risk means they cannot proceed"),
    ProConArgument("a2", "con", "the government can block the event"),
    ProConArgument("a3", "con", "the government is strong enough to resist"),
    ProConArgument("s1", "pro", "this pollster has a track record of failure"),
    ProConArgument("s2", "pro", "anti-government sentiment is rising"),
]
TOKYO_EDGES = {
    "a1": [("a1", "d1")],
    "a2": [("a2", "d1")],
    "a3": [("a3", "i1")],
    "s1": [("s1", "d2")],
    "s2": [("s2", "i1")],
}
TOKYO_AGENTS = ["alice", "bob", "charlie"]
TOKYO_VOTES = {
    "alice": {"a1": 1.0, "a2": 0.5, "a3": 0.5, "s1": 0.5, "s2": 0.0},
    "bob": {"a1": 0.5, "a2": 0.5, "a3": 1.0, "s1": 0.0, "s2": 0.5},
    "charlie": {"a1": 0.5, "a2": 0.5, "a3": 0.5, "s1": 0.5, "s2": 0.5},
}


class ManualClock:
    def __init__(self, start: datetime = T0):
        self.now = start

    def __call__(self) -> datetime:
        return self.now

    def advance(self, **kwargs) -> None:
        self.now += timedelta(**kwargs)


def make_engine(policy: str = "mean", records=None, **overrides) -> tuple[SessionEngine, ManualClock]:
    clock = ManualClock()
    config = SessionConfig(
        session_id=overrides.get("session_id", "tokyo"),
        question=ForecastingQuestion("q-tokyo", "Will the games be cancelled or postponed?"),
        base_forecast=overrides.get("base_forecast", 0.15),
        opened_at=T0,
        overall_deadline=T0 + timedelta(days=14),
        per_round_seconds=overrides.get("per_round_seconds", 3 * 86400.0),
        grid=overrides.get("grid", ForecastGrid()),
        policy=AggregationPolicy(policy, overrides.get("policy_activation", 1)),
    )
    return SessionEngine(config, clock=clock, records=records), clock


def build_tokyo_framework(engine: SessionEngine, framework_id: str = "u1", votes=True):
    """Open the Tokyo debate round, add all arguments, and (optionally) cast
    the three-valued example votes."""
    engine.open_framework(
        ProposalArgument("p", 0.75, "a new poll shows 80% want cancellation"),
        TOKYO_AGENTS,
        framework_id=framework_id,
    )
    for argument in TOKYO_ARGUMENTS:
        engine.add_argument(framework_id, argument, edges=TOKYO_EDGES.get(argument.id, ()))
    if votes:
        for agent, per_agent in TOKYO_VOTES.items():
            for arg_id, value in per_agent.items():
                engine.cast_vote(framework_id, agent, arg_id, value)
    return engine.session.framework(framework_id)


@pytest.fixture
def tokyo_engine():
    engine, clock = make_engine()
    build_tokyo_framework(engine)
    return engine, clock


def tokyo_update_framework() -> UpdateFramework:
    engine, _ = make_engine()
    return build_tokyo_framework(engine)


def tokyo_delegate(agent: str = "alice") -> DelegateFramework:
    return delegate(tokyo_update_framework(), agent)


def random_delegate(rng: random.Random, max_args: int = 8) -> DelegateFramework:
    """A random acyclic delegate framework with up to `max_args` scorable
    arguments and uniform votes; edges only point at earlier arguments, so
    the graph is a DAG by construction."""
    n = rng.randint(1, max_args)
    amendments: dict[str, AmendmentArgument] = {}
    pros_cons: dict[str, ProConArgument] = {}
    edges: set[tuple[str, str]] = set()
    prob_edges: set[tuple[str, str]] = set()
    scorable: list[str] = []
    for i in range(n):
        arg_id = f"x{i}"
        kind = rng.choice(["amendment", "pro", "con"])
        if kind == "amendment":
            amendments[arg_id] = AmendmentArgument(arg_id, rng.choice(["increase", "decrease"]))
            if rng.random() < 0.8:
                prob_edges.add((arg_id, "p"))
        else:
            pros_cons[arg_id] = ProConArgument(arg_id, kind)
            for target in rng.sample(scorable, k=min(len(scorable), rng.randint(0, 2))):
                edges.add((arg_id, target))
        scorable.append(arg_id)
    votes = {
        arg_id: rng.random() for arg_id in pros_cons if rng.random() < 0.8
    }
    fp = rng.randint(1, 100) / 100
    return DelegateFramework(
        framework_id="rand",
        proposal=ProposalArgument("p", fp),
        amendments=amendments,
        pros_cons=pros_cons,
        probabilistic_relation=frozenset(prob_edges),
        argumentative_relation=frozenset(edges),
        agent="a1",
        votes=votes,
    )


def random_resolved_engine(rng: random.Random):
    """Drive the engine through a randomized debate to a resolved framework.

    Returns (engine, framework_id). Agents forecast a random point of their
    rational interval; agents left without a rational option are resolved
    away at the round deadline.
    """
    engine, clock = make_engine(base_forecast=rng.randint(1, 99) / 100)
    fp = rng.randint(1, 100) / 100
    agents = [f"agent{i}" for i in range(rng.randint(2, 4))]
    engine.open_framework(ProposalArgument("p", fp), agents, framework_id="r1")

    n_amendments = rng.randint(0, 3)
    for i in range(n_amendments):
        engine.add_argument(
            "r1", AmendmentArgument(f"m{i}", rng.choice(["increase", "decrease"]))
        )
    targets = [f"m{i}" for i in range(n_amendments)]
    if targets:
        for i in range(rng.randint(0, 4)):
            arg_id = f"pc{i}"
            engine.add_argument(
                "r1",
                ProConArgument(arg_id, rng.choice(["pro", "con"])),
                edges=[(arg_id, rng.choice(targets))],
            )
            targets.append(arg_id)

    fw = engine.session.framework("r1")
    for agent in agents:
        for arg_id in fw.pros_cons:
            engine.cast_vote("r1", agent, arg_id, rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]))

    from faf.rationality import confidence_score, rational_interval

    all_rational = True
    for agent in agents:
        d = engine.delegate_for("r1", agent)
        interval = rational_interval(fp, confidence_score(d), engine.grid)
        if interval.empty:
            all_rational = False
            continue
        choice = rng.randint(interval.lo_tick, interval.hi_tick)
        result = engine.submit_forecast("r1", agent, engine.grid.value(choice))
        assert result.accepted, "a forecast drawn from the rational interval must pass"
    if not all_rational:
        clock.advance(days=4)  # past the round deadline: resolve with exclusions
    engine.resolve_framework("r1")
    return engine, "r1"
