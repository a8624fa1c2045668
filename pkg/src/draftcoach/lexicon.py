"""Word-frequency lexicons: TSV files mapping lemma to a frequency score.

The shipped files are small demo lexicons; swap in licensed frequency norms
with the same format (`lemma<TAB>score`, ``#`` comments) for serious use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources as _importlib_resources
from pathlib import Path

from .errors import FormatError


@dataclass(frozen=True)
class Lexicon:
    name: str
    entries: dict[str, float] = field(default_factory=dict)

    def score(self, lemma: str) -> float | None:
        return self.entries.get(lemma.lower())

    def __len__(self) -> int:
        return len(self.entries)


def parse_lexicon(lines, name: str) -> Lexicon:
    entries: dict[str, float] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise FormatError(f"expected `lemma<TAB>score`, got {line!r}", line=lineno)
        lemma, raw_score = parts
        try:
            score = float(raw_score)
        except ValueError:
            raise FormatError(f"bad score {raw_score!r}", line=lineno) from None
        if not math.isfinite(score) or score < 0:
            raise FormatError(f"score must be finite and non-negative, got {raw_score}", line=lineno)
        entries[lemma.strip().lower()] = score
    return Lexicon(name=name, entries=entries)


def load_lexicon(path: str | Path, name: str | None = None) -> Lexicon:
    path = Path(path)
    return parse_lexicon(path.read_text(encoding="utf-8").splitlines(), name or path.stem)


def _resource_lines(filename: str) -> list[str]:
    text = (_importlib_resources.files("draftcoach") / "resources" / filename).read_text(
        encoding="utf-8"
    )
    return text.splitlines()


@lru_cache(maxsize=None)
def default_spoken_lexicon() -> Lexicon:
    """Demo stand-in for spoken-corpus frequency norms."""
    return parse_lexicon(_resource_lines("lexicon_spoken.tsv"), "spoken-demo")


@lru_cache(maxsize=None)
def default_subtlex_lexicon() -> Lexicon:
    """Demo stand-in for subtitle-corpus frequency norms."""
    return parse_lexicon(_resource_lines("lexicon_subtlex.tsv"), "subtlex-demo")
