"""Gradual scoring of arguments (DF-QuAD).

Each argument gets a base score: the neutral 0.5 for amendments, the
delegate agent's vote for pro/con arguments. An argument's strength combines
its base score with the separately aggregated strengths of its attackers and
supporters, recursively over the acyclic argumentative relation.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import UnknownArgumentError
from .model import NEUTRAL_VOTE, DelegateFramework


def _check_unit(value: float, name: str) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0,1], got {value}")


def base_function(v1: float, v2: float) -> float:
    """Probabilistic sum: f(v1, v2) = v1 + v2 - v1*v2. Commutative, with 0 as
    identity and 1 absorbing."""
    _check_unit(v1, "v1")
    _check_unit(v2, "v2")
    if v1 == 1.0 or v2 == 1.0:
        return 1.0  # keep absorption exact; the formula loses it to rounding
    return v1 + v2 - v1 * v2


def aggregate_strengths(strengths: Sequence[float] | Iterable[float]) -> float:
    """Fold the base function over a strength list; empty list aggregates to 0."""
    result = 0.0
    first = True
    for v in strengths:
        _check_unit(v, "strength")
        result = v if first else base_function(result, v)
        first = False
    return result


def combine(v0: float, v_minus: float, v_plus: float) -> float:
    """Move the base score v0 toward 0 or 1 by the imbalance between
    attacker strength v_minus and supporter strength v_plus."""
    _check_unit(v0, "v0")
    _check_unit(v_minus, "v_minus")
    _check_unit(v_plus, "v_plus")
    if v_minus >= v_plus:
        return v0 - v0 * abs(v_plus - v_minus)
    return v0 + (1 - v0) * abs(v_plus - v_minus)


def base_scores(d: DelegateFramework) -> dict[str, float]:
    """Base score per scorable argument: 0.5 for amendments, the agent's
    (explicit or default) vote for pro/con arguments."""
    scores = {arg_id: NEUTRAL_VOTE for arg_id in d.amendments}
    for arg_id in d.pros_cons:
        scores[arg_id] = d.effective_vote(arg_id)
    return scores


def score_argument(d: DelegateFramework, arg_id: str) -> float:
    """Strength of one amendment or pro/con argument in a delegate framework.

    Memoized per call so shared sub-arguments are scored once; the framework
    graph must be acyclic (guarded by validation upstream).
    """
    if arg_id not in d.amendments and arg_id not in d.pros_cons:
        raise UnknownArgumentError(
            f"argument {arg_id!r} is not a scorable (amendment or pro/con) argument"
        )
    bases = base_scores(d)
    memo: dict[str, float] = {}

    def sigma(x: str) -> float:
        if x in memo:
            return memo[x]
        attacked = aggregate_strengths(sigma(a) for a in d.attackers_of(x))
        supported = aggregate_strengths(sigma(s) for s in d.supporters_of(x))
        memo[x] = combine(bases[x], attacked, supported)
        return memo[x]

    return sigma(arg_id)


def score_all(d: DelegateFramework) -> dict[str, float]:
    """Strengths of every amendment and pro/con argument, one shared memo."""
    bases = base_scores(d)
    memo: dict[str, float] = {}

    def sigma(x: str) -> float:
        if x in memo:
            return memo[x]
        attacked = aggregate_strengths(sigma(a) for a in d.attackers_of(x))
        supported = aggregate_strengths(sigma(s) for s in d.supporters_of(x))
        memo[x] = combine(bases[x], attacked, supported)
        return memo[x]

    return {arg_id: sigma(arg_id) for arg_id in sorted(bases)}
