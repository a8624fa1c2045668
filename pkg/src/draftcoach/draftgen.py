"""Extractive first-draft prompt: a stand-in for an abstractive summarizer.

Scores every source sentence by paragraph-leading position, nucleus depth in
the rhetorical tree (when one is supplied), and TF-IDF centrality; keeps the
top ``target_count`` in source order. An external abstractive service can be
slotted behind the same endpoint later; it is disabled by default.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .align import TfidfBackend
from .discourse import RstNode
from .textcore import Document

DEFAULT_WEIGHTS = (0.3, 0.3, 0.4)  # position, nucleus depth, centrality
DEFAULT_TARGET_COUNT = 6


@dataclass(frozen=True)
class DraftPrompt:
    sentences: tuple[tuple[int, str], ...]  # (source sentence index, text)
    target_count: int

    @property
    def text(self) -> str:
        return " ".join(t for _, t in self.sentences)

    def to_dict(self) -> dict:
        return {
            "target_count": self.target_count,
            "sentences": [{"index": i, "text": t} for i, t in self.sentences],
        }


def satellite_depths(tree: RstNode) -> dict[int, int]:
    """Per leaf EDU id: number of ancestors where the leaf sits on the
    satellite side. Shallower (more nuclear) sentences get higher bonuses."""
    depths: dict[int, int] = {}

    def walk(node: RstNode, depth: int) -> None:
        if node.is_leaf:
            depths[node.edu_id] = depth
            return
        left, right = node.children
        walk(left, depth + (1 if node.nuclearity == "SN" else 0))
        walk(right, depth + (1 if node.nuclearity == "NS" else 0))

    walk(tree, 0)
    return depths


def _centrality(doc: Document) -> list[float]:
    """Mean TF-IDF cosine of each sentence to every other sentence."""
    n = len(doc.sentences)
    if n == 1:
        return [0.0]
    lemma_rows = [s.lemmas() for s in doc.sentences]
    sim = TfidfBackend().similarity_matrix(lemma_rows, lemma_rows)
    np.fill_diagonal(sim, 0.0)
    return [float(sim[i].sum() / (n - 1)) for i in range(n)]


def extract(
    doc: Document,
    target_count: int = DEFAULT_TARGET_COUNT,
    rst: Optional[RstNode] = None,
    weights: Sequence[float] = DEFAULT_WEIGHTS,
) -> DraftPrompt:
    """Pick the most draft-worthy sentences, preserving source order.

    Deterministic for fixed weights; score ties go to the earlier sentence.
    When ``target_count`` exceeds the sentence count, every sentence is kept.
    """
    if target_count < 1:
        raise ValueError("target_count must be >= 1")
    alpha, beta, gamma = weights

    first_of_paragraph = {lo for lo, _ in doc.paragraphs}
    depths = satellite_depths(rst) if rst is not None else {}
    centrality = _centrality(doc)

    scores = []
    for s in doc.sentences:
        position = 1.0 if s.index in first_of_paragraph else 0.0
        # leaves are sentence EDUs numbered index+1
        nucleus = 1.0 / (1.0 + depths[s.index + 1]) if (s.index + 1) in depths else 0.0
        scores.append(alpha * position + beta * nucleus + gamma * centrality[s.index])

    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    chosen = sorted(order[: min(target_count, len(scores))])
    return DraftPrompt(
        sentences=tuple((i, doc.sentences[i].text) for i in chosen),
        target_count=target_count,
    )
