"""Engine configuration: one small JSON document, flag-overridable."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import FormatError
from .genre import GENRES


@dataclass(frozen=True)
class EngineConfig:
    k_default: int = 3
    target_count: int = 6
    extract_weights: tuple[float, float, float] = (0.3, 0.3, 0.4)
    required_genres: tuple[str, ...] = GENRES
    mattr_window: int = 50
    mtld_threshold: float = 0.720

    def snapshot(self) -> dict:
        return {
            "k_default": self.k_default,
            "target_count": self.target_count,
            "extract_weights": list(self.extract_weights),
            "required_genres": list(self.required_genres),
            "mattr_window": self.mattr_window,
            "mtld_threshold": self.mtld_threshold,
        }


def load_config(path: str | Path) -> EngineConfig:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    cfg = EngineConfig()
    known = cfg.snapshot().keys()
    unknown = set(payload) - set(known)
    if unknown:
        raise FormatError(f"unknown config keys: {sorted(unknown)}")
    for genre in payload.get("required_genres", []):
        if genre not in GENRES:
            raise FormatError(f"unknown genre {genre!r} in required_genres")
    updates: dict = {}
    if "k_default" in payload:
        updates["k_default"] = int(payload["k_default"])
    if "target_count" in payload:
        updates["target_count"] = int(payload["target_count"])
    if "extract_weights" in payload:
        w = payload["extract_weights"]
        if len(w) != 3:
            raise FormatError("extract_weights needs exactly three numbers")
        updates["extract_weights"] = tuple(float(x) for x in w)
    if "required_genres" in payload:
        updates["required_genres"] = tuple(payload["required_genres"])
    if "mattr_window" in payload:
        updates["mattr_window"] = int(payload["mattr_window"])
    if "mtld_threshold" in payload:
        updates["mtld_threshold"] = float(payload["mtld_threshold"])
    return replace(cfg, **updates)
