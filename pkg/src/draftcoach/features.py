"""Linguistic feature inventory behind the five quality facets.

Conventions (fixed so numbers are reproducible; see README for rationale):

* ``word_count`` and sentence lengths count every token, punctuation
  included; lexical statistics (TTR/MATTR/MTLD, frequency, density) run on
  word tokens only;
* clause boundaries are commas, semicolons, and any extra break positions
  the caller supplies (typically discourse-unit starts); clause length
  counts word tokens;
* features that need at least two sentences, or at least one scored token,
  are ``None`` when undefined — never an exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields as dataclass_fields
from typing import Callable, Optional, Protocol, Sequence

import numpy as np

from . import kernels
from .lexicon import Lexicon
from .textcore import Document, Sentence, THIRD_PERSON_PRONOUNS, WordClass

MTLD_THRESHOLD = 0.720
MATTR_WINDOW = 50


@dataclass(frozen=True)
class FeatureVector:
    frequency_all: Optional[float] = None
    frequency_function: Optional[float] = None
    frequency_content_subtlex: Optional[float] = None
    frequency_all_subtlex: Optional[float] = None
    rouge3_source: Optional[float] = None
    adj_sent_similarity: Optional[float] = None
    repeated_lemma_pronoun_ratio: Optional[float] = None
    adj_function_overlap: Optional[float] = None
    ttr_all: Optional[float] = None
    mattr_function: Optional[float] = None
    content_token_count: Optional[float] = None
    mtld_function: Optional[float] = None
    mtld_all: Optional[float] = None
    mtld_content: Optional[float] = None
    lexical_density: Optional[float] = None
    ttr_content: Optional[float] = None
    mean_sentence_length: Optional[float] = None
    mean_clause_length: Optional[float] = None
    word_count: Optional[float] = None
    sd_dependents_nsubj: Optional[float] = None
    sd_dependents_clause: Optional[float] = None
    sd_dependents_pobj: Optional[float] = None

    def as_dict(self) -> dict[str, Optional[float]]:
        return {f.name: getattr(self, f.name) for f in dataclass_fields(self)}


FEATURE_NAMES = tuple(f.name for f in dataclass_fields(FeatureVector))


class ParseProvider(Protocol):
    """Optional dependency-parse source for the syntactic diversity trio."""

    def dependent_spread(self, doc: Document) -> tuple[
        Optional[float], Optional[float], Optional[float]
    ]:
        """(sd per nominal subject, sd per clause, sd per prepositional object)."""
        ...


SimilarityFn = Callable[[Sequence[str], Sequence[str]], float]


def rouge_n(candidate: Sequence, reference: Sequence, n: int) -> float:
    """Recall-oriented n-gram overlap: clipped matches over reference n-grams.

    Returns 0.0 when the reference is shorter than n tokens.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(reference) < n:
        return 0.0
    ids, vocab = kernels.intern_ids(list(candidate) + list(reference))
    match, total = kernels.ngram_overlap(
        ids[: len(candidate)], ids[len(candidate) :], n, vocab
    )
    return match / total


def ttr(lemmas: Sequence[str]) -> Optional[float]:
    if not lemmas:
        return None
    return len(set(lemmas)) / len(lemmas)


def mattr(lemmas: Sequence[str], window: int = MATTR_WINDOW) -> Optional[float]:
    if window < 1:
        raise ValueError("window must be >= 1")
    if not lemmas:
        return None
    ids, vocab = kernels.intern_ids(lemmas)
    return kernels.mattr(ids, window, vocab)


def mtld(lemmas: Sequence[str], threshold: float = MTLD_THRESHOLD) -> Optional[float]:
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must be in (0, 1)")
    if not lemmas:
        return None
    ids, vocab = kernels.intern_ids(lemmas)
    return kernels.mtld(ids, threshold, vocab)


def _filtered_lemmas(doc: Document, word_class: Optional[WordClass]) -> list[str]:
    out: list[str] = []
    for s in doc.sentences:
        out.extend(s.lemmas(word_class))
    return out


def frequency_feature(
    doc: Document, lexicon: Lexicon, word_class: Optional[WordClass] = None
) -> Optional[float]:
    """Mean lexicon score over tokens that have one; None if nothing scored."""
    scores = [s for lemma in _filtered_lemmas(doc, word_class) if (s := lexicon.score(lemma)) is not None]
    if not scores:
        return None
    return sum(scores) / len(scores)


def bag_of_lemmas_similarity(a: Sequence[str], b: Sequence[str]) -> float:
    """Cosine over lemma count vectors; the default adjacent-similarity backend."""
    if not a or not b:
        return 0.0
    from collections import Counter

    ca, cb = Counter(a), Counter(b)
    dot = sum(v * cb.get(k, 0) for k, v in ca.items())
    na = math.sqrt(sum(v * v for v in ca.values()))
    nb = math.sqrt(sum(v * v for v in cb.values()))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)


def fluency_features(
    doc: Document,
    similarity: SimilarityFn = bag_of_lemmas_similarity,
    binary_overlap: bool = False,
) -> tuple[Optional[float], Optional[float], Optional[float]]:
    """(adjacent-sentence similarity, repeated lemma+pronoun ratio, adjacent
    function-word overlap); the pairwise features are None for one sentence.

    ``binary_overlap`` switches the overlap from shared-type counts to a 0/1
    indicator per sentence pair.
    """
    sents = doc.sentences
    repeated = _repeated_ratio(doc)
    if len(sents) < 2:
        return None, repeated, None
    sims = []
    overlaps = []
    for prev, cur in zip(sents, sents[1:]):
        sims.append(similarity(prev.lemmas(), cur.lemmas()))
        shared = len(set(prev.lemmas(WordClass.FUNCTION)) & set(cur.lemmas(WordClass.FUNCTION)))
        overlaps.append(min(shared, 1) if binary_overlap else shared)
    return sum(sims) / len(sims), repeated, sum(overlaps) / len(overlaps)


def _repeated_ratio(doc: Document) -> Optional[float]:
    """(repeat occurrences of content lemmas + third-person pronoun tokens)
    over the total token count."""
    total_tokens = sum(len(s.tokens) for s in doc.sentences)
    if total_tokens == 0:
        return None
    from collections import Counter

    content = Counter(_filtered_lemmas(doc, WordClass.CONTENT))
    repeats = sum(c - 1 for c in content.values() if c >= 2)
    pronouns = sum(
        1
        for s in doc.sentences
        for t in s.tokens
        if t.is_word and t.lemma in THIRD_PERSON_PRONOUNS
    )
    return (repeats + pronouns) / total_tokens


ClauseBreaks = dict[int, frozenset[int]]  # sentence index -> extra break token positions


def clause_lengths(sentence: Sentence, extra_breaks: frozenset[int] = frozenset()) -> list[int]:
    """Word-token lengths of comma/semicolon/extra-break delimited segments."""
    lengths: list[int] = []
    current = 0
    for i, tok in enumerate(sentence.tokens):
        if i in extra_breaks and i > 0 and current > 0:
            lengths.append(current)
            current = 0
        if tok.word_class is WordClass.PUNCT:
            if ("," in tok.surface or ";" in tok.surface) and current > 0:
                lengths.append(current)
                current = 0
            continue
        current += 1
    if current > 0:
        lengths.append(current)
    return lengths


def conciseness_features(
    doc: Document, clause_breaks: Optional[ClauseBreaks] = None
) -> tuple[float, Optional[float], float]:
    """(mean sentence length, mean clause length, total token count)."""
    sent_lengths = [len(s.tokens) for s in doc.sentences]
    all_clauses: list[int] = []
    for s in doc.sentences:
        extra = clause_breaks.get(s.index, frozenset()) if clause_breaks else frozenset()
        all_clauses.extend(clause_lengths(s, extra))
    mean_clause = sum(all_clauses) / len(all_clauses) if all_clauses else None
    return (
        sum(sent_lengths) / len(sent_lengths),
        mean_clause,
        float(sum(sent_lengths)),
    )


def compute_features(
    doc: Document,
    source: Optional[Document] = None,
    spoken_lexicon: Optional[Lexicon] = None,
    subtlex_lexicon: Optional[Lexicon] = None,
    similarity: SimilarityFn = bag_of_lemmas_similarity,
    clause_breaks: Optional[ClauseBreaks] = None,
    parse_provider: Optional[ParseProvider] = None,
    binary_overlap: bool = False,
) -> FeatureVector:
    """Assemble the full feature vector for one draft (or one sentence-as-doc)."""
    all_lemmas = _filtered_lemmas(doc, None)
    content_lemmas = _filtered_lemmas(doc, WordClass.CONTENT)
    function_lemmas = _filtered_lemmas(doc, WordClass.FUNCTION)

    adj_sim, repeated, adj_overlap = fluency_features(doc, similarity, binary_overlap)
    mean_sent, mean_clause, word_count = conciseness_features(doc, clause_breaks)

    rouge3 = None
    if source is not None:
        rouge3 = rouge_n(all_lemmas, _filtered_lemmas(source, None), 3)

    sd_nsubj = sd_clause = sd_pobj = None
    if parse_provider is not None:
        sd_nsubj, sd_clause, sd_pobj = parse_provider.dependent_spread(doc)

    n_words = len(all_lemmas)
    return FeatureVector(
        frequency_all=frequency_feature(doc, spoken_lexicon) if spoken_lexicon else None,
        frequency_function=(
            frequency_feature(doc, spoken_lexicon, WordClass.FUNCTION) if spoken_lexicon else None
        ),
        frequency_content_subtlex=(
            frequency_feature(doc, subtlex_lexicon, WordClass.CONTENT) if subtlex_lexicon else None
        ),
        frequency_all_subtlex=(
            frequency_feature(doc, subtlex_lexicon) if subtlex_lexicon else None
        ),
        rouge3_source=rouge3,
        adj_sent_similarity=adj_sim,
        repeated_lemma_pronoun_ratio=repeated,
        adj_function_overlap=adj_overlap,
        ttr_all=ttr(all_lemmas),
        mattr_function=mattr(function_lemmas),
        content_token_count=float(len(content_lemmas)),
        mtld_function=mtld(function_lemmas),
        mtld_all=mtld(all_lemmas),
        mtld_content=mtld(content_lemmas),
        lexical_density=(len(content_lemmas) / n_words) if n_words else None,
        ttr_content=ttr(content_lemmas),
        mean_sentence_length=mean_sent,
        mean_clause_length=mean_clause,
        word_count=word_count,
        sd_dependents_nsubj=sd_nsubj,
        sd_dependents_clause=sd_clause,
        sd_dependents_pobj=sd_pobj,
    )


def sentence_view(doc: Document, index: int) -> Document:
    """Wrap one sentence as a single-sentence document for per-sentence bars."""
    s = doc.sentences[index]
    reindexed = Sentence(index=0, text=s.text, start=s.start, tokens=s.tokens)
    return Document(raw=doc.raw, sentences=(reindexed,), paragraphs=((0, 1),))
