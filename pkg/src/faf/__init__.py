"""Structured multi-agent forecasting debates.

Agents argue over a proposed probability through amendment and pro/con
arguments, vote on the pro/con arguments, and submit forecasts that are
gated by rationality constraints derived from their own argumentation;
rational forecasts aggregate into an accuracy-weighted group forecast.
"""
from .aggregation import (
    AgentRecord,
    AggregationPolicy,
    DailySeries,
    brier_score,
    build_daily_series,
    daily_brier,
    group_forecast,
    mean_group_forecast,
)
from .grid import ForecastGrid
from .lifecycle import (
    LifecycleEvent,
    PendingObligation,
    SessionConfig,
    SessionEngine,
    collectively_rational,
    pending_obligations,
)
from .model import (
    AmendmentArgument,
    DelegateFramework,
    ForecastingQuestion,
    ForecastingSession,
    ProConArgument,
    ProposalArgument,
    UpdateFramework,
    ValidationReport,
    delegate,
    validate_framework,
)
from .rationality import (
    RationalInterval,
    RationalityVerdict,
    check_forecast,
    confidence_score,
    nearest_rational,
    rational_interval,
)
from .replay import DebateScript, ReplayReport, emit_report, load_script, run_replay, synthesize_votes
from .semantics import aggregate_strengths, base_function, combine, score_argument

__version__ = "0.1.0"

__all__ = [
    "AgentRecord",
    "AggregationPolicy",
    "AmendmentArgument",
    "DailySeries",
    "DebateScript",
    "DelegateFramework",
    "ForecastGrid",
    "ForecastingQuestion",
    "ForecastingSession",
    "LifecycleEvent",
    "PendingObligation",
    "ProConArgument",
    "ProposalArgument",
    "RationalInterval",
    "RationalityVerdict",
    "ReplayReport",
    "SessionConfig",
    "SessionEngine",
    "UpdateFramework",
    "ValidationReport",
    "aggregate_strengths",
    "base_function",
    "brier_score",
    "build_daily_series",
    "check_forecast",
    "collectively_rational",
    "combine",
    "confidence_score",
    "daily_brier",
    "delegate",
    "emit_report",
    "group_forecast",
    "load_script",
    "mean_group_forecast",
    "nearest_rational",
    "pending_obligations",
    "rational_interval",
    "run_replay",
    "score_argument",
    "synthesize_votes",
    "validate_framework",
]
