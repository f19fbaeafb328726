"""Service configuration: file + HIDSS_* environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

RETRAIN_POLICIES = ("manual", "on-outcome")

ENV_PREFIX = "HIDSS_"


@dataclass(frozen=True)
class ServiceConfig:
    pattern_catalog_path: str = ""     # empty -> packaged default catalog
    criteria_catalog_path: str = ""
    mentors_path: str = ""
    storage_path: str = "hidss_events.jsonl"
    hybrid_weight: float = 0.5
    k_min: int = 3
    contested_threshold: float = 2.5
    trimmed_aggregation: bool = True
    match_weight_dimension: float = 2.0
    match_weight_industry: float = 1.0
    match_weight_secondary: float = 0.5
    cart_max_depth: int = 6
    cart_min_leaf: int = 5
    cart_min_impurity_decrease: float = 1e-7
    listen_host: str = "127.0.0.1"
    listen_port: int = 8040
    retrain_policy: str = "manual"
    fsync_on_append: bool = False

    def validate(self) -> None:
        if not 0.0 <= self.hybrid_weight <= 1.0:
            raise ValueError("hybrid_weight must be in [0, 1]")
        if self.k_min < 1:
            raise ValueError("k_min must be >= 1")
        if self.contested_threshold < 0:
            raise ValueError("contested_threshold must be >= 0")
        if min(self.match_weight_dimension, self.match_weight_industry, self.match_weight_secondary) < 0:
            raise ValueError("matching weights must be >= 0")
        if self.cart_max_depth < 1 or self.cart_min_leaf < 1 or self.cart_min_impurity_decrease < 0:
            raise ValueError("bad CART parameters")
        if self.retrain_policy not in RETRAIN_POLICIES:
            raise ValueError(f"retrain_policy must be one of {RETRAIN_POLICIES}")
        if not 1 <= self.listen_port <= 65535:
            raise ValueError("listen_port out of range")

    @classmethod
    def load(cls, path: str | Path | None = None, env: dict | None = None) -> "ServiceConfig":
        """Config file values, then HIDSS_* environment overrides, validated."""
        values: dict = {}
        if path is not None:
            values.update(json.loads(Path(path).read_text()))
        env = os.environ if env is None else env
        config = cls(**values)
        overrides = {}
        for f in fields(cls):
            raw = env.get(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            if f.type == "bool":
                overrides[f.name] = raw.lower() in ("1", "true", "yes")
            elif f.type == "int":
                overrides[f.name] = int(raw)
            elif f.type == "float":
                overrides[f.name] = float(raw)
            else:
                overrides[f.name] = raw
        config = replace(config, **overrides)
        config.validate()
        return config
