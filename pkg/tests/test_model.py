"""Core graph model: structural validation, delegation, canonical JSON."""
from __future__ import annotations

import random

import pytest

from faf.errors import OffGridError, UnknownAgentError
from faf.grid import ForecastGrid
from faf.model import (
    AmendmentArgument,
    ForecastingQuestion,
    ProConArgument,
    ProposalArgument,
    UpdateFramework,
    delegate,
    framework_from_json,
    framework_to_json,
    session_from_json,
    session_to_json,
    validate_framework,
)

from conftest import random_delegate, tokyo_update_framework


def minimal_framework(**overrides) -> UpdateFramework:
    defaults = dict(
        id="u1",
        proposal=ProposalArgument("p", 0.75),
        agents=frozenset({"alice", "bob"}),
    )
    defaults.update(overrides)
    return UpdateFramework(**defaults)


class TestGrid:
    def test_percentage_grid(self):
        grid = ForecastGrid()
        assert grid.contains(0.75)
        assert grid.tick(0.75) == 75
        assert not grid.contains(0.755)
        assert grid.contains(0.0) and grid.contains(1.0)

    def test_from_step(self):
        assert ForecastGrid.from_step(0.01).denominator == 100
        assert ForecastGrid.from_step(0.05).denominator == 20
        with pytest.raises(ValueError):
            ForecastGrid.from_step(0.03)

    def test_snap(self):
        grid = ForecastGrid()
        assert grid.snap(0.754) == 0.75
        assert grid.snap(0.756) == 0.76
        assert grid.snap(0.755) == 0.76  # halfway rounds up
        with pytest.raises(OffGridError):
            grid.snap(1.2)

    def test_tick_bounds(self):
        grid = ForecastGrid()
        with pytest.raises(OffGridError):
            grid.tick(-0.01)
        with pytest.raises(OffGridError):
            grid.tick(1.01)


class TestValidation:
    def test_tokyo_framework_is_well_formed(self):
        report = validate_framework(tokyo_update_framework())
        assert report.ok, str(report)

    def test_pro_edge_to_proposal_is_ill_typed(self):
        fw = minimal_framework(
            pros_cons={"s1": ProConArgument("s1", "pro")},
            argumentative_relation=frozenset({("s1", "p")}),
        )
        report = validate_framework(fw)
        assert "edge_typing" in report.codes()

    def test_two_cycle_between_cons(self):
        fw = minimal_framework(
            pros_cons={"c1": ProConArgument("c1", "con"), "c2": ProConArgument("c2", "con")},
            argumentative_relation=frozenset({("c1", "c2"), ("c2", "c1")}),
        )
        report = validate_framework(fw)
        assert "acyclicity" in report.codes()

    def test_amendment_edge_must_target_proposal(self):
        fw = minimal_framework(
            amendments={
                "m1": AmendmentArgument("m1", "increase"),
                "m2": AmendmentArgument("m2", "decrease"),
            },
            probabilistic_relation=frozenset({("m1", "m2")}),
        )
        assert "edge_typing" in validate_framework(fw).codes()

    def test_duplicate_id_across_sets(self):
        fw = minimal_framework(
            amendments={"z": AmendmentArgument("z", "increase")},
            pros_cons={"z": ProConArgument("z", "con")},
        )
        assert "disjointness" in validate_framework(fw).codes()

    def test_single_agent_rejected(self):
        fw = minimal_framework(agents=frozenset({"alice"}))
        assert "agent_count" in validate_framework(fw).codes()

    def test_vote_on_unknown_argument(self):
        fw = minimal_framework(votes={"alice": {"ghost": 1.0}})
        assert "vote_totality" in validate_framework(fw).codes()

    def test_vote_by_unknown_agent(self):
        fw = minimal_framework(
            pros_cons={"c1": ProConArgument("c1", "con")},
            votes={"mallory": {"c1": 1.0}},
        )
        assert "vote_totality" in validate_framework(fw).codes()

    def test_vote_out_of_range(self):
        fw = minimal_framework(
            pros_cons={"c1": ProConArgument("c1", "con")},
            votes={"alice": {"c1": 1.5}},
        )
        assert "vote_totality" in validate_framework(fw).codes()

    def test_off_grid_forecast_flagged_with_grid(self):
        fw = minimal_framework(forecasts={"alice": 0.755})
        assert validate_framework(fw).ok
        assert "forecast_range" in validate_framework(fw, grid=ForecastGrid()).codes()


class TestDelegate:
    def test_only_agent_votes_carried_over(self):
        fw = tokyo_update_framework()
        d = delegate(fw, "alice")
        assert d.agent == "alice"
        assert d.votes == fw.votes["alice"]
        assert d.forecast is None

    def test_graph_identical_to_parent(self):
        fw = tokyo_update_framework()
        d = delegate(fw, "bob")
        assert d.argument_ids() == fw.argument_ids()
        assert d.argumentative_relation == fw.argumentative_relation
        assert d.probabilistic_relation == fw.probabilistic_relation

    def test_no_pro_con_args_means_empty_votes(self):
        fw = minimal_framework()
        assert delegate(fw, "alice").votes == {}

    def test_unknown_agent(self):
        with pytest.raises(UnknownAgentError):
            delegate(minimal_framework(), "mallory")

    def test_delegate_of_well_formed_framework_validates(self):
        rng = random.Random(7)
        for _ in range(50):
            d = random_delegate(rng)
            assert validate_framework(d).ok, str(validate_framework(d))
        fw = tokyo_update_framework()
        for agent in fw.agents:
            assert validate_framework(delegate(fw, agent)).ok


class TestCanonicalJson:
    def test_framework_round_trip(self):
        fw = tokyo_update_framework()
        doc = framework_to_json(fw)
        assert doc["proposal"]["forecast"] == 0.75
        assert [a["id"] for a in doc["amendments"]] == ["d1", "d2", "i1"]
        assert doc["status"] == "open"
        back = framework_from_json(doc)
        assert framework_to_json(back) == doc

    def test_session_round_trip(self):
        from conftest import make_engine, build_tokyo_framework

        engine, _ = make_engine()
        build_tokyo_framework(engine)
        doc = session_to_json(engine.session)
        assert doc["question"]["outcome"] is None
        assert doc["base_forecast"] == 0.15
        back = session_from_json(doc)
        assert session_to_json(back) == doc

    def test_field_names_are_snake_case_contract(self):
        doc = framework_to_json(tokyo_update_framework())
        for key in (
            "proposal",
            "amendments",
            "pros_cons",
            "probabilistic_relation",
            "argumentative_relation",
            "agents",
            "votes",
            "forecasts",
            "status",
        ):
            assert key in doc

    def test_question_outcome_immutable(self):
        q = ForecastingQuestion("q", "?", outcome=True)
        with pytest.raises(ValueError):
            q.resolved(False)
