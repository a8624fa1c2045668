"""Flow-map alignment: abstract sentences against source sentences.

The similarity backend is pluggable. The default is TF-IDF over lemmas
fitted on source plus abstract (deterministic, no model downloads); an
optional HTTP embedding-service backend falls back to the default on
failure, setting a warning flag in the output metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

import numpy as np

from .errors import EmptyInput, InvalidK
from .textcore import Document


class SimilarityBackend(Protocol):
    name: str

    def similarity_matrix(
        self, rows: Sequence[Sequence[str]], cols: Sequence[Sequence[str]]
    ) -> np.ndarray: ...


class BackendUnavailable(Exception):
    """Raised by remote backends when the service cannot be reached."""


class TfidfBackend:
    """Cosine over L2-normalized TF-IDF lemma vectors, fitted on both sides.

    Smoothed idf (log((1+N)/(1+df)) + 1) keeps every weight positive, so
    identical sentences always score exactly 1.0.
    """

    name = "tfidf"

    def similarity_matrix(
        self, rows: Sequence[Sequence[str]], cols: Sequence[Sequence[str]]
    ) -> np.ndarray:
        corpus = list(rows) + list(cols)
        vocab: dict[str, int] = {}
        for sent in corpus:
            for lemma in sent:
                vocab.setdefault(lemma, len(vocab))
        n_docs = len(corpus)
        df = np.zeros(len(vocab))
        for sent in corpus:
            for v in {vocab[lemma] for lemma in sent}:
                df[v] += 1
        idf = np.log((1.0 + n_docs) / (1.0 + df)) + 1.0

        def matrix(sents: Sequence[Sequence[str]]) -> np.ndarray:
            m = np.zeros((len(sents), len(vocab)))
            for i, sent in enumerate(sents):
                for lemma in sent:
                    m[i, vocab[lemma]] += 1.0
            m *= idf
            norms = np.linalg.norm(m, axis=1, keepdims=True)
            norms[norms == 0.0] = 1.0
            return m / norms

        return matrix(rows) @ matrix(cols).T


class MatrixBackend:
    """Test backend: returns a pre-built matrix regardless of the inputs."""

    name = "matrix"

    def __init__(self, sim: np.ndarray):
        self.sim = np.asarray(sim, dtype=float)

    def similarity_matrix(self, rows, cols) -> np.ndarray:
        return self.sim


class EmbeddingServiceBackend:
    """Client for an external sentence-embedding service.

    Request body: {"sentences": [...]}; response: {"vectors": [[...], ...]}
    with the configured dimension. Any transport error or timeout raises
    BackendUnavailable so callers can fall back.
    """

    name = "embedding-service"

    def __init__(self, endpoint: str, dimension: int, timeout: float = 5.0):
        self.endpoint = endpoint
        self.dimension = dimension
        self.timeout = timeout

    def _embed(self, texts: list[str]) -> np.ndarray:
        import requests

        try:
            resp = requests.post(
                self.endpoint, json={"sentences": texts}, timeout=self.timeout
            )
            resp.raise_for_status()
            vectors = np.asarray(resp.json()["vectors"], dtype=float)
        except Exception as exc:  # noqa: BLE001 - any transport failure falls back
            raise BackendUnavailable(str(exc)) from exc
        if vectors.shape != (len(texts), self.dimension):
            raise BackendUnavailable(
                f"expected {(len(texts), self.dimension)} vectors, got {vectors.shape}"
            )
        return vectors

    def similarity_matrix(self, rows, cols) -> np.ndarray:
        texts = [" ".join(s) for s in list(rows) + list(cols)]
        vectors = self._embed(texts)
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        vectors = vectors / norms
        return vectors[: len(rows)] @ vectors[len(rows) :].T


@dataclass(frozen=True)
class AlignmentMap:
    sim: np.ndarray  # m x n
    k: int
    intensity: tuple[float, ...]  # per abstract sentence: mean of top-k scores
    topk_idx: tuple[tuple[int, ...], ...]  # score-descending, ties by lower index
    meta: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.sim.shape[0]

    @property
    def n(self) -> int:
        return self.sim.shape[1]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "sim": [[float(x) for x in row] for row in self.sim],
            "intensity": list(self.intensity),
            "topk_idx": [list(row) for row in self.topk_idx],
            "meta": dict(self.meta),
        }


def _topk_row(row: np.ndarray, k: int) -> tuple[tuple[int, ...], float]:
    order = sorted(range(len(row)), key=lambda j: (-row[j], j))
    idx = tuple(order[:k])
    return idx, float(sum(row[j] for j in idx) / k)


def build(
    abstract: Document,
    source: Document,
    k: int,
    backend: Optional[SimilarityBackend] = None,
) -> AlignmentMap:
    """Similarity matrix plus per-row top-k summaries.

    Intensity averages the raw (possibly signed) top-k scores; the choice is
    recorded in the output metadata.
    """
    if not abstract.sentences or not source.sentences:
        raise EmptyInput("both documents need at least one sentence")
    n = len(source.sentences)
    if not 1 <= k <= n:
        raise InvalidK(f"k must be in 1..{n}, got {k}", field="k")

    meta = {"intensity_rule": "mean of raw top-k cosine scores"}
    chosen = backend or TfidfBackend()
    rows = [s.lemmas() for s in abstract.sentences]
    cols = [s.lemmas() for s in source.sentences]
    try:
        sim = np.asarray(chosen.similarity_matrix(rows, cols), dtype=float)
    except BackendUnavailable as exc:
        fallback = TfidfBackend()
        sim = np.asarray(fallback.similarity_matrix(rows, cols), dtype=float)
        meta["backend_fallback"] = True
        meta["backend_error"] = str(exc)
        chosen = fallback
    meta["backend"] = chosen.name

    if sim.shape != (len(abstract.sentences), n):
        raise ValueError(f"backend returned shape {sim.shape}, expected {(len(rows), n)}")

    topk: list[tuple[int, ...]] = []
    intensity: list[float] = []
    for i in range(sim.shape[0]):
        idx, mean = _topk_row(sim[i], k)
        topk.append(idx)
        intensity.append(mean)
    return AlignmentMap(
        sim=sim, k=k, intensity=tuple(intensity), topk_idx=tuple(topk), meta=meta
    )


def hover(amap: AlignmentMap, abstract_idx: int) -> tuple[list[float], list[int]]:
    """Row scores and top-k indices for one abstract sentence (pure read)."""
    if not 0 <= abstract_idx < amap.m:
        raise IndexError(f"abstract index {abstract_idx} out of range 0..{amap.m - 1}")
    return [float(x) for x in amap.sim[abstract_idx]], list(amap.topk_idx[abstract_idx])
