"""Weighted z-score aggregation of features into five quality facets.

Weights and normalization statistics live in a schema-versioned JSON config;
the shipped default uses uniform magnitudes with signs fixed by what each
feature means for its facet (frequent words help understandability, long
sentences hurt conciseness, and so on). Scores land on a clipped 1-7 scale
with 4.0 at the reference-corpus mean.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources as _importlib_resources
from pathlib import Path
from typing import Optional

from .errors import FormatError
from .features import FEATURE_NAMES, FeatureVector

FACET_ORDER = ("understandability", "consistency", "fluency", "diversity", "conciseness")

WEIGHTS_SCHEMA = 1


@dataclass(frozen=True)
class Scale:
    midpoint: float = 4.0
    gain: float = 1.5
    lo: float = 1.0
    hi: float = 7.0


@dataclass(frozen=True)
class FacetWeights:
    version: str
    scale: Scale
    facets: dict[str, dict[str, float]]
    norms: dict[str, tuple[float, float]]  # feature -> (mean, sd)

    def validate(self) -> None:
        for facet in FACET_ORDER:
            if facet not in self.facets:
                raise FormatError(f"missing facet {facet!r} in weights config")
        for facet, fws in self.facets.items():
            if facet not in FACET_ORDER:
                raise FormatError(f"unknown facet {facet!r}")
            if not fws:
                raise FormatError(f"facet {facet!r} has no features")
            for name in fws:
                if name not in FEATURE_NAMES:
                    raise FormatError(f"unknown feature {name!r} in facet {facet!r}")
                if name not in self.norms:
                    raise FormatError(f"feature {name!r} is weighted but has no norms")
        for name, (mean, sd) in self.norms.items():
            if sd <= 0:
                raise FormatError(f"norms for {name!r} need sd > 0, got {sd}")

    def zscore(self, name: str, value: float) -> float:
        mean, sd = self.norms[name]
        return (value - mean) / sd


def load_weights(path: str | Path) -> FacetWeights:
    return parse_weights(json.loads(Path(path).read_text(encoding="utf-8")))


def parse_weights(payload: dict) -> FacetWeights:
    if payload.get("schema") != WEIGHTS_SCHEMA:
        raise FormatError(f"unsupported weights schema {payload.get('schema')!r}")
    scale_raw = payload.get("scale", {})
    scale = Scale(
        midpoint=float(scale_raw.get("midpoint", 4.0)),
        gain=float(scale_raw.get("gain", 1.5)),
        lo=float(scale_raw.get("min", 1.0)),
        hi=float(scale_raw.get("max", 7.0)),
    )
    norms = {
        name: (float(v["mean"]), float(v["sd"])) for name, v in payload.get("norms", {}).items()
    }
    facets = {
        facet: {name: float(w) for name, w in fws.items()}
        for facet, fws in payload.get("facets", {}).items()
    }
    weights = FacetWeights(
        version=str(payload.get("version", "unversioned")),
        scale=scale,
        facets=facets,
        norms=norms,
    )
    weights.validate()
    return weights


def dump_weights(weights: FacetWeights) -> dict:
    return {
        "schema": WEIGHTS_SCHEMA,
        "version": weights.version,
        "scale": {
            "midpoint": weights.scale.midpoint,
            "gain": weights.scale.gain,
            "min": weights.scale.lo,
            "max": weights.scale.hi,
        },
        "facets": {f: dict(sorted(ws.items())) for f, ws in sorted(weights.facets.items())},
        "norms": {
            name: {"mean": mean, "sd": sd} for name, (mean, sd) in sorted(weights.norms.items())
        },
    }


@lru_cache(maxsize=None)
def default_weights() -> FacetWeights:
    text = (_importlib_resources.files("draftcoach") / "resources" / "facet_weights.json").read_text(
        encoding="utf-8"
    )
    return parse_weights(json.loads(text))


@dataclass(frozen=True)
class FacetReport:
    scores: dict[str, Optional[float]]  # facet -> 1..7 score, None when undefined
    overall: Optional[float]
    per_sentence: list[dict[str, Optional[float]]] = field(default_factory=list)
    weights_version: str = "unversioned"
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "facets": {f: self.scores[f] for f in FACET_ORDER},
            "overall": self.overall,
            "per_sentence": [
                {f: bars.get(f) for f in FACET_ORDER} for bars in self.per_sentence
            ],
            "weights_version": self.weights_version,
            "flags": list(self.flags),
        }


def _facet_score(
    fv: FeatureVector, weights: FacetWeights, facet: str
) -> tuple[Optional[float], Optional[str]]:
    fws = weights.facets[facet]
    values = fv.as_dict()
    items = sorted(fws.items())
    total_mag = sum(abs(w) for _, w in items)
    defined = [(name, w) for name, w in items if values[name] is not None]
    if not defined:
        return None, f"facet_undefined:{facet}"
    mag = sum(abs(w) for _, w in defined)
    factor = total_mag / mag
    raw = sum(w * factor * weights.zscore(name, values[name]) for name, w in defined)
    flag = None
    if len(defined) < len(items):
        missing = ",".join(name for name, _ in items if values[name] is None)
        flag = f"facet_renormalized:{facet}:{missing}"
    scale = weights.scale
    score = scale.midpoint + scale.gain * raw
    score = min(max(score, scale.lo), scale.hi)
    return score, flag


def facet_scores(fv: FeatureVector, weights: FacetWeights) -> dict[str, Optional[float]]:
    return {facet: _facet_score(fv, weights, facet)[0] for facet in FACET_ORDER}


def facets(
    fv: FeatureVector,
    weights: FacetWeights,
    per_sentence_fvs: Optional[list[FeatureVector]] = None,
) -> FacetReport:
    """Aggregate a feature vector (plus optional per-sentence vectors) into a report.

    Undefined features drop out with the remaining weights renormalized within
    the facet; a facet with nothing defined is None and flagged, and the
    overall score is the mean of the defined facets.
    """
    scores: dict[str, Optional[float]] = {}
    flags: list[str] = []
    for facet in FACET_ORDER:
        score, flag = _facet_score(fv, weights, facet)
        scores[facet] = score
        if flag:
            flags.append(flag)
    defined = [scores[f] for f in FACET_ORDER if scores[f] is not None]
    overall = sum(defined) / len(defined) if defined else None
    if overall is None:
        flags.append("overall_undefined")
    bars = []
    if per_sentence_fvs:
        bars = [facet_scores(sfv, weights) for sfv in per_sentence_fvs]
    return FacetReport(
        scores=scores,
        overall=overall,
        per_sentence=bars,
        weights_version=weights.version,
        flags=tuple(flags),
    )
