"""Service configuration: JSON file with environment-variable overrides."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Mapping, Optional


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8040
    store_root: str = "faf-store"
    grid_step: float = 0.01
    policy: str = "mean"
    policy_activation: int = 1
    default_round_seconds: float = 86400.0
    default_session_seconds: float = 14 * 86400.0
    snapshot_interval: int = 20

    ENV_PREFIX = "FAF_"

    @classmethod
    def load(
        cls,
        path: Optional[str | Path] = None,
        env: Optional[Mapping[str, str]] = None,
    ) -> "ServiceConfig":
        """File values override defaults; FAF_<FIELD> variables override both."""
        values: dict = {}
        if path is not None:
            values.update(json.loads(Path(path).read_text(encoding="utf-8")))
        env = os.environ if env is None else env
        for f in fields(cls):
            raw = env.get(cls.ENV_PREFIX + f.name.upper())
            if raw is not None:
                values[f.name] = raw
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**values)
        cfg.port = int(cfg.port)
        cfg.grid_step = float(cfg.grid_step)
        cfg.policy_activation = int(cfg.policy_activation)
        cfg.default_round_seconds = float(cfg.default_round_seconds)
        cfg.default_session_seconds = float(cfg.default_session_seconds)
        cfg.snapshot_interval = int(cfg.snapshot_interval)
        if cfg.policy not in ("mean", "brier"):
            raise ValueError(f"policy must be 'mean' or 'brier', got {cfg.policy!r}")
        return cfg
