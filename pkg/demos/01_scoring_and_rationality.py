#!/usr/bin/env python3
"""Walk through argument scoring and forecast gating on the Olympics debate.

The proposal claims a 75% chance the games are cancelled or postponed. Three
amendments push back or forward, pro/con arguments attack and support them,
and a single agent's votes determine how strongly each amendment lands for
her, what her confidence in the proposal is, and which forecasts she may
rationally submit.
"""
from faf import (
    AmendmentArgument,
    ForecastGrid,
    ProConArgument,
    ProposalArgument,
    DelegateFramework,
    check_forecast,
    confidence_score,
    nearest_rational,
    rational_interval,
)
from faf.semantics import score_all

grid = ForecastGrid()

framework = DelegateFramework(
    framework_id="u1",
    proposal=ProposalArgument("p", 0.75, "a new poll shows 80% want cancellation"),
    amendments={
        "d1": AmendmentArgument("d1", "decrease", "officials will ignore the poll"),
        "d2": AmendmentArgument("d2", "decrease", "the pollster is unreliable"),
        "i1": AmendmentArgument("i1", "increase", "the opposition will pile on"),
    },
    pros_cons={
        "a1": ProConArgument("a1", "con", "they will not risk mass deaths"),
        "a2": ProConArgument("a2", "con", "the government can block the event"),
        "a3": ProConArgument("a3", "con", "the government can resist the opposition"),
        "s1": ProConArgument("s1", "pro", "this pollster has failed before"),
        "s2": ProConArgument("s2", "pro", "online sentiment backs the opposition"),
    },
    probabilistic_relation=frozenset({("d1", "p"), ("d2", "p"), ("i1", "p")}),
    argumentative_relation=frozenset(
        {("a1", "d1"), ("a2", "d1"), ("a3", "i1"), ("s1", "d2"), ("s2", "i1")}
    ),
    agent="alice",
    votes={"a1": 1.0, "s2": 0.0},  # alice is sure a1 holds and s2 does not
)

print("alice's argument strengths (amendments start from a neutral 0.5 base):")
for arg_id, strength in score_all(framework).items():
    print(f"  sigma({arg_id}) = {strength:.4f}")

c = confidence_score(framework)
print(f"\nconfidence score: mean increase strength - mean decrease strength = {c:+.4f}")
print("negative: on alice's own reading, 0.75 is an overshoot")

interval = rational_interval(0.75, c, grid)
print(f"\nrational forecasts for alice: [{interval.lo}, {interval.hi}] on the 0.01 grid")

for proposed in (0.70, 0.80, 0.30):
    verdict = check_forecast(framework, proposed, grid)
    if verdict.accepted:
        print(f"  {proposed:.2f} accepted")
    else:
        suggestion = nearest_rational(framework, proposed, grid)
        print(f"  {proposed:.2f} blocked ({', '.join(verdict.violations)}); nearest rational: {suggestion}")
