"""HTTP/JSON front door: every lifecycle operation as an endpoint.

Agents identify themselves with a bearer agent-id header (`Authorization:
Bearer alice`) — identification, not authentication; the service is
explicitly not secured. All request and response bodies use the canonical
JSON shapes of the core model. Irrational forecasts come back as 409 with
the full verdict (violations, rational interval, nearest suggestion);
clients can poll `GET /frameworks/{id}/events?since=N` as a change feed.
"""
from __future__ import annotations

import threading
import uuid
from contextlib import asynccontextmanager
from datetime import timedelta
from typing import Optional

from fastapi import Body, FastAPI, Header, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .aggregation import AgentRecord, AggregationPolicy
from .config import ServiceConfig
from .errors import (
    FafError,
    FrameworkExistsError,
    MissingAgentError,
    MissingFieldError,
    UnknownFrameworkError,
)
from .grid import ForecastGrid
from .lifecycle import SESSION_CLOSED, SessionConfig, SessionEngine, pending_obligations
from .model import ForecastingQuestion, framework_to_json, session_to_json
from .rationality import check_forecast, confidence_score, rational_interval
from .store import FileStore, ensure_safe_id
from .timeutil import parse_timestamp, utcnow

# every lifecycle error code maps to exactly one HTTP status
_STATUS_BY_CODE = {
    "unknown_session": 404,
    "unknown_framework": 404,
    "unknown_agent": 404,
    "unknown_argument": 404,
    "vote_target_invalid": 422,
    "invalid_vote_value": 422,
    "off_grid": 422,
    "edge_typing": 422,
    "cycle": 422,
    "duplicate_argument": 422,
    "degenerate_proposal": 422,
    "invalid_framework": 422,
    "invalid_script": 422,
    "invalid_id": 422,
    "framework_already_open": 409,
    "framework_exists": 409,
    "framework_not_open": 409,
    "session_exists": 409,
    "framework_not_stable": 409,
    "deadline_passed": 409,
    "pending_obligations": 409,
    "session_closed": 409,
    "stale_sequence": 409,
    "empty_rational_interval": 409,
    "missing_agent": 401,
    "missing_field": 422,
    "corrupt_log": 500,
}


def _require(body: dict, *keys: str) -> list:
    values = []
    for key in keys:
        if key not in body:
            raise MissingFieldError(f"request body is missing {key!r}")
        values.append(body[key])
    return values


def api_error(code: str, message: str, status: Optional[int] = None, **extra) -> JSONResponse:
    status = status or _STATUS_BY_CODE.get(code, 500)
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "message": message, **extra},
    )


class _Registry:
    """Loaded engines plus the framework-id -> session-id index."""

    def __init__(self, store: FileStore, config: ServiceConfig):
        self.store = store
        self.config = config
        self.engines: dict[str, SessionEngine] = {}
        self.snapshot_seq: dict[str, int] = {}
        self.framework_index: dict[str, str] = {}
        self.lock = threading.Lock()

    def engine(self, session_id: str) -> SessionEngine:
        with self.lock:
            engine = self.engines.get(session_id)
            if engine is None:
                engine = self.store.load_engine(
                    session_id,
                    event_sink=lambda e, sid=session_id: self.store.append_event(sid, e),
                )
                self.engines[session_id] = engine
                self.snapshot_seq[session_id] = engine.last_seq
                for fw in engine.session.frameworks:
                    self.framework_index[fw.id] = session_id
            return engine

    def engine_for_framework(self, framework_id: str) -> tuple[SessionEngine, str]:
        session_id = self.framework_index.get(framework_id)
        if session_id is None:
            for sid in self.store.list_sessions():
                self.engine(sid)
            session_id = self.framework_index.get(framework_id)
        if session_id is None:
            raise UnknownFrameworkError(f"no framework {framework_id!r} in any session")
        return self.engine(session_id), session_id

    def register_framework(self, framework_id: str, session_id: str) -> None:
        with self.lock:
            self.framework_index[framework_id] = session_id

    def maybe_snapshot(self, session_id: str, force: bool = False) -> None:
        engine = self.engines.get(session_id)
        if engine is None:
            return
        since = engine.last_seq - self.snapshot_seq.get(session_id, 0)
        if force or since >= self.config.snapshot_interval:
            self.store.write_snapshot(engine)
            self.snapshot_seq[session_id] = engine.last_seq

    def flush(self) -> None:
        for session_id in list(self.engines):
            self.maybe_snapshot(session_id, force=True)


def _agent_from_bearer(authorization: Optional[str]) -> str:
    if not authorization or not authorization.lower().startswith("bearer "):
        raise MissingAgentError("missing bearer agent id (Authorization: Bearer <agent-id>)")
    return authorization[len("bearer ") :].strip()


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig.load()
    store = FileStore(config.store_root)
    registry = _Registry(store, config)

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        yield
        registry.flush()  # graceful shutdown: bring snapshots up to the log

    app = FastAPI(title="faf", version="0.1.0", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware,  # the web client is served separately; service is open by design
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store
    app.state.registry = registry
    app.state.config = config

    @app.exception_handler(FafError)
    async def faf_error_handler(request: Request, exc: FafError):
        return api_error(exc.code, exc.message if hasattr(exc, "message") else str(exc))

    # -- sessions --------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        question, base_forecast = _require(body, "question", "base_forecast")
        _require(question, "id", "text")
        session_id = body.get("id") or uuid.uuid4().hex[:12]
        now = utcnow()
        overall = (
            parse_timestamp(body["overall_deadline"])
            if body.get("overall_deadline")
            else now + timedelta(seconds=config.default_session_seconds)
        )
        grid = ForecastGrid.from_step(float(body.get("grid_step", config.grid_step)))
        session_config = SessionConfig(
            session_id=session_id,
            question=ForecastingQuestion(question["id"], question["text"]),
            base_forecast=float(base_forecast),
            opened_at=now,
            overall_deadline=overall,
            per_round_seconds=float(
                body.get("per_round_seconds", config.default_round_seconds)
            ),
            grid=grid,
            policy=AggregationPolicy(
                body.get("policy", config.policy),
                int(body.get("policy_activation", config.policy_activation)),
            ),
        )
        grid.tick(session_config.base_forecast)  # must sit on the grid
        store.create_session(session_config)
        return session_to_json(registry.engine(session_id).session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str, response: Response):
        engine = registry.engine(session_id)
        response.headers["ETag"] = engine.state_hash()
        return engine.state_json()

    @app.post("/sessions/{session_id}/frameworks", status_code=201)
    def open_framework(session_id: str, body: dict = Body(...)):
        engine = registry.engine(session_id)
        proposal, agents = _require(body, "proposal", "agents")
        explicit_id = body.get("id")
        if explicit_id:
            try:
                registry.engine_for_framework(explicit_id)
            except UnknownFrameworkError:
                pass
            else:
                raise FrameworkExistsError(
                    f"framework id {explicit_id!r} already exists (ids address frameworks globally)"
                )
        for agent in agents:
            ensure_safe_id(agent, "agent id")  # records become files at close
        fw = engine.open_framework(
            proposal,
            agents,
            framework_id=body.get("id"),
            round_deadline=(
                parse_timestamp(body["round_deadline"]) if body.get("round_deadline") else None
            ),
        )
        registry.register_framework(fw.id, session_id)
        registry.maybe_snapshot(session_id)
        return framework_to_json(fw)

    @app.post("/sessions/{session_id}/close")
    def close_session(session_id: str, body: dict = Body(...)):
        engine = registry.engine(session_id)
        (outcome,) = _require(body, "outcome")
        report = engine.close_session(bool(outcome))
        store.apply_record_updates(report["records"])
        registry.maybe_snapshot(session_id, force=True)
        return report

    # -- frameworks --------------------------------------------------------

    @app.get("/frameworks/{framework_id}")
    def get_framework(framework_id: str, response: Response):
        engine, _ = registry.engine_for_framework(framework_id)
        fw = engine.session.framework(framework_id)
        response.headers["ETag"] = engine.state_hash()
        doc = framework_to_json(fw)
        doc["pending_obligations"] = [
            {"agent": o.agent, "argument_id": o.argument_id} for o in pending_obligations(fw)
        ]
        return doc

    @app.post("/frameworks/{framework_id}/arguments")
    def add_argument(framework_id: str, body: dict = Body(...)):
        engine, session_id = registry.engine_for_framework(framework_id)
        (argument,) = _require(body, "argument")
        fw = engine.add_argument(framework_id, argument, body.get("edges", ()))
        registry.maybe_snapshot(session_id)
        return framework_to_json(fw)

    @app.post("/frameworks/{framework_id}/votes")
    def cast_vote(
        framework_id: str,
        body: dict = Body(...),
        authorization: Optional[str] = Header(None),
    ):
        agent = _agent_from_bearer(authorization)
        engine, session_id = registry.engine_for_framework(framework_id)
        argument_id, value = _require(body, "argument_id", "value")
        fw = engine.cast_vote(framework_id, agent, argument_id, float(value))
        registry.maybe_snapshot(session_id)
        return framework_to_json(fw)

    @app.post("/frameworks/{framework_id}/forecasts")
    def submit_forecast(
        framework_id: str,
        body: dict = Body(...),
        authorization: Optional[str] = Header(None),
    ):
        agent = _agent_from_bearer(authorization)
        engine, session_id = registry.engine_for_framework(framework_id)
        (value,) = _require(body, "value")
        result = engine.submit_forecast(framework_id, agent, float(value))
        registry.maybe_snapshot(session_id)
        if result.blocked:
            v = result.verdict
            return api_error(
                "forecast_blocked",
                "forecast violates the rationality constraints",
                status=409,
                violations=list(v.violations),
                suggestion=v.suggestion,
                rational_interval=v.rational_interval.to_json(),
                confidence_score=v.confidence,
                proposal_forecast=v.proposal_forecast,
            )
        return {"accepted": True, "verdict": result.verdict.to_json()}

    @app.post("/frameworks/{framework_id}/resolve")
    def resolve_framework(framework_id: str):
        engine, session_id = registry.engine_for_framework(framework_id)
        group = engine.resolve_framework(framework_id)
        registry.maybe_snapshot(session_id, force=True)
        return {
            "group_forecast": group,
            "framework": framework_to_json(engine.session.framework(framework_id)),
        }

    @app.get("/frameworks/{framework_id}/events")
    def framework_events(framework_id: str, since: int = Query(0)):
        engine, session_id = registry.engine_for_framework(framework_id)
        events = [
            e.to_json()
            for e in store.load_events(session_id, since=since)
            if e.payload.get("framework_id") == framework_id or e.kind == SESSION_CLOSED
        ]
        return {"events": events, "last_seq": engine.last_seq}

    @app.get("/frameworks/{framework_id}/agents/{agent_id}/rationality")
    def agent_rationality(framework_id: str, agent_id: str):
        engine, _ = registry.engine_for_framework(framework_id)
        d = engine.delegate_for(framework_id, agent_id)
        confidence = confidence_score(d)
        interval = rational_interval(d.proposal.forecast, confidence, engine.grid)
        fw = engine.session.framework(framework_id)
        verdict = (
            check_forecast(d, d.forecast, engine.grid).to_json()
            if d.forecast is not None
            else None
        )
        return {
            "agent_id": agent_id,
            "framework_id": framework_id,
            "confidence_score": confidence,
            "proposal_forecast": d.proposal.forecast,
            "rational_interval": interval.to_json(),
            "current_forecast": d.forecast,
            "current_verdict": verdict,
            "pending_votes": [
                o.argument_id for o in pending_obligations(fw, agent_id)
            ],
        }

    # -- agents --------------------------------------------------------------

    @app.get("/agents/{agent_id}/record")
    def agent_record(agent_id: str):
        record = store.agent_record(agent_id) or AgentRecord(agent_id)
        return record.to_json()

    return app


def serve_api(config: ServiceConfig) -> None:
    """Run the service until interrupted (uvicorn event loop)."""
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="info")
