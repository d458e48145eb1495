"""File-backed persistence: append-only event logs, session snapshots, and
cross-session agent records.

Layout under the store root:

    sessions/<id>/events.jsonl    one lifecycle event per line, append-only
    sessions/<id>/snapshot.json   {"seq", "config", "session"}
    agents/<id>.json              {"agent_id", "history", "brier"}

Appends take an exclusive file lock, verify the expected sequence number
against the log tail (a concurrent writer gets a stale-sequence error), and
fsync before acknowledging, so an acknowledged event survives a crash.
"""
from __future__ import annotations

import fcntl
import json
import os
import re
import threading
from pathlib import Path
from typing import Optional

from .aggregation import AgentRecord
from .errors import (
    CorruptLogError,
    InvalidIdError,
    SessionExistsError,
    StaleSequenceError,
    UnknownSessionError,
)
from .lifecycle import LifecycleEvent, SessionConfig, SessionEngine
from .model import ForecastingSession

_SAFE_NAME = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")


def ensure_safe_id(name: str, what: str) -> str:
    """Session and agent ids become file names; reject anything hostile."""
    if not _SAFE_NAME.match(name):
        raise InvalidIdError(
            f"{what} {name!r} must match [A-Za-z0-9][A-Za-z0-9_.-]* to be storable"
        )
    return name


def _read_last_seq(path: Path) -> int:
    """Sequence number of the last log line, scanning the file tail."""
    try:
        size = path.stat().st_size
    except FileNotFoundError:
        return 0
    if size == 0:
        return 0
    with path.open("rb") as fh:
        window = min(size, 65536)
        fh.seek(size - window)
        tail = fh.read(window)
    lines = [ln for ln in tail.split(b"\n") if ln.strip()]
    if not lines:
        return 0
    try:
        return json.loads(lines[-1])["seq"]
    except (json.JSONDecodeError, KeyError) as exc:
        raise CorruptLogError(f"unparseable tail line: {exc}", -1) from exc


def _atomic_write(path: Path, data: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with tmp.open("w", encoding="utf-8") as fh:
        fh.write(data)
        fh.flush()
        os.fsync(fh.fileno())
    tmp.replace(path)


class FileStore:
    def __init__(self, root: Path | str):
        self.root = Path(root)
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)
        (self.root / "agents").mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _session_dir(self, session_id: str) -> Path:
        return self.root / "sessions" / ensure_safe_id(session_id, "session id")

    def _events_path(self, session_id: str) -> Path:
        return self._session_dir(session_id) / "events.jsonl"

    def _snapshot_path(self, session_id: str) -> Path:
        return self._session_dir(session_id) / "snapshot.json"

    # -- sessions ----------------------------------------------------------

    def list_sessions(self) -> list[str]:
        return sorted(
            p.name for p in (self.root / "sessions").iterdir() if (p / "snapshot.json").exists()
        )

    def session_exists(self, session_id: str) -> bool:
        return self._snapshot_path(session_id).exists()

    def create_session(self, config: SessionConfig) -> None:
        session_dir = self._session_dir(config.session_id)
        if self.session_exists(config.session_id):
            raise SessionExistsError(f"session {config.session_id!r} already exists")
        session_dir.mkdir(parents=True, exist_ok=True)
        engine = SessionEngine(config)
        self._events_path(config.session_id).touch()
        _atomic_write(
            self._snapshot_path(config.session_id),
            json.dumps(
                {"seq": 0, "config": config.to_json(), "session": engine.state_json()},
                sort_keys=True,
            ),
        )

    def write_snapshot(self, engine: SessionEngine) -> None:
        """Persist the engine state; never ahead of the durable log."""
        _atomic_write(
            self._snapshot_path(engine.config.session_id),
            json.dumps(
                {
                    "seq": engine.last_seq,
                    "config": engine.config.to_json(),
                    "session": engine.state_json(),
                },
                sort_keys=True,
            ),
        )

    def load_snapshot(self, session_id: str) -> tuple[SessionConfig, dict, int]:
        path = self._snapshot_path(session_id)
        if not path.exists():
            raise UnknownSessionError(f"no session {session_id!r} in store {self.root}")
        doc = json.loads(path.read_text(encoding="utf-8"))
        return SessionConfig.from_json(doc["config"]), doc["session"], doc["seq"]

    # -- event log -----------------------------------------------------------

    def append_event(self, session_id: str, event: LifecycleEvent) -> int:
        """Durably append one event; the sequence must extend the log tail.

        The exclusive file lock plus tail re-read makes two racing writers
        resolve deterministically: one wins, the other sees stale_sequence.
        """
        path = self._events_path(session_id)
        if not path.parent.exists():
            raise UnknownSessionError(f"no session {session_id!r} in store {self.root}")
        line = json.dumps(event.to_json(), sort_keys=True, separators=(",", ":"))
        with self._lock_for(session_id):
            with path.open("a", encoding="utf-8") as fh:
                fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
                try:
                    last = _read_last_seq(path)
                    if event.seq != last + 1:
                        raise StaleSequenceError(
                            f"expected sequence {last + 1}, got {event.seq} (concurrent writer?)"
                        )
                    fh.write(line + "\n")
                    fh.flush()
                    os.fsync(fh.fileno())
                finally:
                    fcntl.flock(fh.fileno(), fcntl.LOCK_UN)
        return event.seq

    def load_events(self, session_id: str, since: int = 0) -> list[LifecycleEvent]:
        """Events with sequence > since; corrupt lines are reported with
        their line number."""
        path = self._events_path(session_id)
        if not path.exists():
            raise UnknownSessionError(f"no session {session_id!r} in store {self.root}")
        events: list[LifecycleEvent] = []
        with path.open("r", encoding="utf-8") as fh:
            for line_number, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    event = LifecycleEvent.from_json(json.loads(line))
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise CorruptLogError(str(exc), line_number) from exc
                if event.seq > since:
                    events.append(event)
        return events

    # -- hydration -------------------------------------------------------------

    def _engine_kwargs(self, session_id: str, kwargs: dict) -> dict:
        kwargs.setdefault("records", self.agent_record)
        kwargs.setdefault("history", lambda: self.load_events(session_id))
        return kwargs

    def load_engine(self, session_id: str, **kwargs) -> SessionEngine:
        """Snapshot plus trailing events; equal to a pure replay from scratch."""
        config, state, seq = self.load_snapshot(session_id)
        trailing = self.load_events(session_id, since=seq)
        return SessionEngine.from_snapshot(
            config, state, seq, trailing, **self._engine_kwargs(session_id, kwargs)
        )

    def replay_engine(self, session_id: str, **kwargs) -> SessionEngine:
        """Rebuild state purely from the event log (determinism checks)."""
        config, _, _ = self.load_snapshot(session_id)
        events = self.load_events(session_id)
        return SessionEngine.replay(
            config, events, **self._engine_kwargs(session_id, kwargs)
        )

    def load_session(self, session_id: str) -> ForecastingSession:
        return self.load_engine(session_id).session

    # -- agent records -----------------------------------------------------------

    def _agent_path(self, agent_id: str) -> Path:
        return self.root / "agents" / f"{ensure_safe_id(agent_id, 'agent id')}.json"

    def agent_record(self, agent_id: str) -> Optional[AgentRecord]:
        path = self._agent_path(agent_id)
        if not path.exists():
            return None
        return AgentRecord.from_json(json.loads(path.read_text(encoding="utf-8")))

    def save_agent_record(self, record: AgentRecord) -> None:
        _atomic_write(self._agent_path(record.agent_id), json.dumps(record.to_json(), sort_keys=True))

    def apply_record_updates(self, records: dict[str, dict]) -> None:
        """Persist the merged records a session-close report carries."""
        for doc in records.values():
            self.save_agent_record(AgentRecord.from_json(doc))
