"""Rule-table revision tips keyed on missing genres and the weakest facet.

The tables are data (JSON resource), editable without code changes.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources as _importlib_resources
from pathlib import Path
from typing import Optional

from .facets import FACET_ORDER, FacetReport
from .genre import GENRES


@lru_cache(maxsize=None)
def default_rules() -> dict:
    text = (_importlib_resources.files("draftcoach") / "resources" / "guidance_rules.json").read_text(
        encoding="utf-8"
    )
    return json.loads(text)


def load_rules(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def generate(
    report: FacetReport,
    missing_genres: set[str],
    rules: Optional[dict] = None,
) -> list[str]:
    """Deterministic tips: one per missing genre (canonical order), then one
    for the lowest-scoring defined facet."""
    rules = rules or default_rules()
    tips: list[str] = []
    for genre in GENRES:
        if genre in missing_genres:
            tip = rules.get("missing_genre", {}).get(genre)
            if tip:
                tips.append(tip)
    defined = [(f, report.scores[f]) for f in FACET_ORDER if report.scores[f] is not None]
    if defined:
        lowest = min(defined, key=lambda item: (item[1], FACET_ORDER.index(item[0])))
        tip = rules.get("low_facet", {}).get(lowest[0])
        if tip:
            tips.append(tip)
    if not tips:
        fallback = rules.get("default")
        if fallback:
            tips.append(fallback)
    return tips
