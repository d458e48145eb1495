#!/usr/bin/env python3
"""Drive a full debate round through the event-sourced engine.

Three agents argue about the Olympics question: a framework opens against a
15% base rate with a 75% proposal, arguments arrive (creating vote
obligations), votes come in, irrational forecasts get blocked with a
suggestion, and the stable round resolves into a group forecast. Closing the
session against the true outcome yields Brier scores and daily series.
"""
import json
from datetime import datetime, timedelta, timezone

from faf import (
    AmendmentArgument,
    ForecastingQuestion,
    ProConArgument,
    ProposalArgument,
    SessionConfig,
    SessionEngine,
    pending_obligations,
)

t0 = datetime(2021, 5, 1, tzinfo=timezone.utc)


class Clock:
    def __init__(self):
        self.now = t0

    def __call__(self):
        return self.now


clock = Clock()
engine = SessionEngine(
    SessionConfig(
        session_id="olympics",
        question=ForecastingQuestion("q1", "Cancelled or postponed?"),
        base_forecast=0.15,
        opened_at=t0,
        overall_deadline=t0 + timedelta(days=14),
        per_round_seconds=3 * 86400,
    ),
    clock=clock,
)

agents = ["alice", "bob", "charlie"]
engine.open_framework(ProposalArgument("p", 0.75, "the poll"), agents, framework_id="u1")
print("framework u1 open at Fp=0.75")

engine.add_argument("u1", AmendmentArgument("d1", "decrease"))
engine.add_argument("u1", AmendmentArgument("i1", "increase"))
engine.add_argument("u1", ProConArgument("a1", "con"), edges=[("a1", "d1")])
engine.add_argument("u1", ProConArgument("s2", "pro"), edges=[("s2", "i1")])
owed = pending_obligations(engine.session.framework("u1"))
print(f"after two pro/con arguments: {len(owed)} vote obligations outstanding")

for agent in agents:
    engine.cast_vote("u1", agent, "a1", {"alice": 1.0, "bob": 0.5, "charlie": 0.5}[agent])
    engine.cast_vote("u1", agent, "s2", {"alice": 0.0, "bob": 0.5, "charlie": 0.5}[agent])
print("all votes in; obligations cleared")
# alice's con vote kills the decrease amendment, so every confidence score
# here points upward: only forecasts above 0.75 can be rational

clock.now += timedelta(days=1)
result = engine.submit_forecast("u1", "alice", 0.30)
print(f"alice tries 0.30 -> blocked {result.verdict.violations}, suggestion {result.verdict.suggestion}")
print(f"  her rational interval: {result.verdict.rational_interval.to_json()}")
engine.submit_forecast("u1", "alice", result.verdict.suggestion)
engine.submit_forecast("u1", "bob", 0.80)
engine.submit_forecast("u1", "charlie", 0.80)
print(f"stable: {engine.check_stable('u1')}")

group = engine.resolve_framework("u1")
print(f"resolved: group forecast {group:.4f} replaces the session forecast")

clock.now += timedelta(days=1)
report = engine.close_session(True)
print(f"\nclosed with outcome=true; final forecast {report['final_forecast']:.4f}")
print("per-agent daily Brier:", json.dumps(report["daily_brier"]["agents"], indent=2))

replayed = SessionEngine.replay(engine.config, engine.events)
print(f"\nevent log has {len(engine.events)} events; replay hash == live hash: "
      f"{replayed.state_hash() == engine.state_hash()}")
