"""Five-genre sentence classification for abstract organization detection.

Position-aware naive Bayes over unigram+bigram lemma features: small,
deterministic, and trainable in seconds on CPU. Training data uses the
RCT-style format (blank-line separated records, ``###doc_id`` header,
``LABEL<TAB>sentence`` lines); foreign label sets map onto the five genres
via a tab-separated mapping file.
"""

from __future__ import annotations

import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources as _importlib_resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import DegenerateCorpus, FormatError
from .textcore import Sentence, WordClass, tokenize

GENRES = ("background", "objective", "method", "result", "conclusion")
_GENRE_RANK = {g: i for i, g in enumerate(GENRES)}

POSITION_BUCKETS = 5


@dataclass(frozen=True)
class OrganizationScheme:
    labels: tuple[str, ...]

    def missing(self, required: Iterable[str]) -> set[str]:
        return set(required) - set(self.labels)


def completeness(scheme: OrganizationScheme, required: Iterable[str]) -> set[str]:
    """Required genres that the scheme does not cover."""
    return scheme.missing(required)


@dataclass(frozen=True)
class RctRecord:
    doc_id: str
    sentences: tuple[tuple[str, str], ...]  # (label, text)


def parse_rct(
    lines: Iterable[str],
    label_map: Optional[dict[str, str]] = None,
) -> list[RctRecord]:
    """Parse RCT-style training data; labels must land in the five genres."""
    records: list[RctRecord] = []
    doc_id: Optional[str] = None
    current: list[tuple[str, str]] = []

    def flush() -> None:
        nonlocal doc_id, current
        if current:
            records.append(RctRecord(doc_id=doc_id or f"doc{len(records)}", sentences=tuple(current)))
        doc_id = None
        current = []

    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("###"):
            flush()
            doc_id = line[3:].strip()
            continue
        parts = line.split("\t", 1)
        if len(parts) != 2:
            raise FormatError("expected `LABEL<TAB>sentence`", line=lineno)
        label, text = parts[0].strip(), parts[1].strip()
        if label_map and label in label_map:
            label = label_map[label]
        label = label.lower()
        if label not in GENRES:
            raise FormatError(f"unknown genre label {parts[0]!r}", line=lineno)
        if not text:
            raise FormatError("empty sentence text", line=lineno)
        current.append((label, text))
    flush()
    return records


def load_label_map(path: str | Path) -> dict[str, str]:
    """`foreign_label<TAB>genre` lines; lookups are exact on the foreign label."""
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or parts[1].lower() not in GENRES:
            raise FormatError("expected `foreign_label<TAB>genre`", line=lineno)
        mapping[parts[0]] = parts[1].lower()
    return mapping


def _sentence_features(text: str) -> list[str]:
    lemmas = [t.lemma for t in tokenize(text) if t.word_class is not WordClass.PUNCT]
    feats = list(lemmas)
    feats.extend(f"{a}__{b}" for a, b in zip(lemmas, lemmas[1:]))
    return feats


def _position_bucket(index: int, count: int) -> int:
    if count <= 1:
        return 0
    return min(POSITION_BUCKETS * index // count, POSITION_BUCKETS - 1)


@dataclass
class GenreModel:
    alpha: float
    class_counts: dict[str, int]
    feature_counts: dict[str, dict[str, int]]  # genre -> feature -> count
    feature_totals: dict[str, int]  # genre -> total feature tokens
    bucket_counts: dict[str, list[int]]  # genre -> counts per position bucket
    vocab: set[str] = field(default_factory=set)

    @property
    def genres(self) -> list[str]:
        return [g for g in GENRES if self.class_counts.get(g)]

    def class_scores(self, text: str, index: int = 0, count: int = 1) -> dict[str, float]:
        """Log-posterior scores (up to a constant) for each trained genre."""
        feats = _sentence_features(text)
        bucket = _position_bucket(index, count)
        total_docs = sum(self.class_counts.values())
        v = len(self.vocab)
        scores: dict[str, float] = {}
        for g in self.genres:
            score = math.log(self.class_counts[g] / total_docs)
            denom = self.feature_totals[g] + self.alpha * v
            counts = self.feature_counts[g]
            for f in feats:
                score += math.log((counts.get(f, 0) + self.alpha) / denom)
            b_total = self.class_counts[g] + self.alpha * POSITION_BUCKETS
            score += math.log((self.bucket_counts[g][bucket] + self.alpha) / b_total)
            scores[g] = score
        return scores

    def classify_one(self, text: str, index: int = 0, count: int = 1) -> str:
        scores = self.class_scores(text, index, count)
        return max(scores, key=lambda g: (scores[g], -_GENRE_RANK[g]))

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "alpha": self.alpha,
            "class_counts": self.class_counts,
            "feature_counts": self.feature_counts,
            "feature_totals": self.feature_totals,
            "bucket_counts": self.bucket_counts,
            "vocab": sorted(self.vocab),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "GenreModel":
        if payload.get("schema") != 1:
            raise FormatError(f"unsupported genre model schema {payload.get('schema')!r}")
        return cls(
            alpha=float(payload["alpha"]),
            class_counts={k: int(v) for k, v in payload["class_counts"].items()},
            feature_counts={
                g: {f: int(c) for f, c in fc.items()}
                for g, fc in payload["feature_counts"].items()
            },
            feature_totals={k: int(v) for k, v in payload["feature_totals"].items()},
            bucket_counts={k: list(map(int, v)) for k, v in payload["bucket_counts"].items()},
            vocab=set(payload["vocab"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), sort_keys=True), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "GenreModel":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def train(records: Sequence[RctRecord], alpha: float = 1.0) -> GenreModel:
    """Count-based fit; order-independent and deterministic."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    class_counts: Counter[str] = Counter()
    feature_counts: dict[str, Counter[str]] = defaultdict(Counter)
    feature_totals: Counter[str] = Counter()
    bucket_counts: dict[str, list[int]] = defaultdict(lambda: [0] * POSITION_BUCKETS)
    vocab: set[str] = set()

    for rec in records:
        count = len(rec.sentences)
        for i, (label, text) in enumerate(rec.sentences):
            feats = _sentence_features(text)
            class_counts[label] += 1
            feature_counts[label].update(feats)
            feature_totals[label] += len(feats)
            bucket_counts[label][_position_bucket(i, count)] += 1
            vocab.update(feats)

    if len(class_counts) < 2:
        raise DegenerateCorpus(
            f"need examples of at least two genres, got {sorted(class_counts) or 'none'}"
        )
    return GenreModel(
        alpha=alpha,
        class_counts=dict(class_counts),
        feature_counts={g: dict(c) for g, c in feature_counts.items()},
        feature_totals=dict(feature_totals),
        bucket_counts={g: list(b) for g, b in bucket_counts.items()},
        vocab=vocab,
    )


def classify(model: GenreModel, sentences: Sequence[Sentence | str]) -> OrganizationScheme:
    """One genre per draft sentence; ties break toward the canonical order."""
    texts = [s.text if isinstance(s, Sentence) else s for s in sentences]
    n = len(texts)
    labels = tuple(model.classify_one(t, i, n) for i, t in enumerate(texts))
    return OrganizationScheme(labels=labels)


@lru_cache(maxsize=None)
def default_model() -> GenreModel:
    """Model trained on the small bundled seed corpus; replace via train-genre."""
    text = (_importlib_resources.files("draftcoach") / "resources" / "genre_seed.rct").read_text(
        encoding="utf-8"
    )
    return train(parse_rct(text.splitlines()))
