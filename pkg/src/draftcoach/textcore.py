"""Deterministic text decomposition: paragraphs, sentences, tokens, word classes.

All functions here are pure. The tokenizer is rule-based on purpose so that
every downstream number is reproducible from the raw string alone:

* words are runs of word characters, keeping internal hyphens/apostrophes
  ("state-of-the-art", "Pentagon's" are single tokens);
* punctuation runs are kept as tokens of class ``PUNCT`` (they count toward
  raw token totals but are excluded from lexical statistics);
* spans are character offsets into the original string, so slicing the raw
  text with a token span always returns the surface form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from importlib import resources as _importlib_resources
from pathlib import Path
from typing import Iterable, Optional

from .errors import EmptyInput


class WordClass(Enum):
    CONTENT = "content"
    FUNCTION = "function"
    PUNCT = "punct"


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    word_class: Optional[WordClass]
    span: tuple[int, int]  # character offsets into the document raw text

    @property
    def is_word(self) -> bool:
        return self.word_class is not WordClass.PUNCT


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    start: int  # character offset of `text` in the document raw text
    tokens: tuple[Token, ...] = field(default_factory=tuple)

    @property
    def end(self) -> int:
        return self.start + len(self.text)

    def gap_before(self, i: int) -> str:
        """Raw text between token i-1 and token i (sentence-local lookup).

        For i == 0 returns the text before the first token within this
        sentence. EDU and clause rules use this to see adjacent punctuation.
        """
        lo = self.start if i == 0 else self.tokens[i - 1].span[1]
        hi = self.tokens[i].span[0]
        return self.text[lo - self.start : hi - self.start]

    def word_tokens(self) -> list[Token]:
        return [t for t in self.tokens if t.is_word]

    def lemmas(self, word_class: Optional[WordClass] = None) -> list[str]:
        """Lemmas of word tokens, optionally restricted to one word class."""
        if word_class is None:
            return [t.lemma for t in self.tokens if t.is_word]
        return [t.lemma for t in self.tokens if t.word_class is word_class]


@dataclass(frozen=True)
class Document:
    raw: str
    sentences: tuple[Sentence, ...]
    paragraphs: tuple[tuple[int, int], ...]  # half-open sentence-index ranges

    def paragraph_of(self, sentence_index: int) -> int:
        for p, (lo, hi) in enumerate(self.paragraphs):
            if lo <= sentence_index < hi:
                return p
        raise IndexError(f"sentence {sentence_index} outside any paragraph")

    def paragraph_sentences(self, p: int) -> list[Sentence]:
        lo, hi = self.paragraphs[p]
        return list(self.sentences[lo:hi])


_TOKEN_RE = re.compile(r"\w+(?:['’\-]\w+)*|[^\w\s]+")
_WORD_RE = re.compile(r"\w")

# Naive suffix stripping mangles a handful of common words badly enough to
# break function-word membership; these map straight to a fixed point.
_LEMMA_EXCEPTIONS = {
    "running": "run",
    "sitting": "sit",
    "getting": "get",
    "putting": "put",
    "setting": "set",
    "beginning": "begin",
    "planning": "plan",
    "stopped": "stop",
    "dropped": "drop",
    "having": "have",
    "does": "do",
    "during": "during",
    "nothing": "nothing",
    "something": "something",
    "anything": "anything",
    "everything": "everything",
    "concerning": "concerning",
    "regarding": "regarding",
    "according": "according",
    "whereas": "whereas",
    "indeed": "indeed",
    "perhaps": "perhaps",
    "always": "always",
    "sometimes": "sometimes",
    "themselves": "themselves",
    "ourselves": "ourselves",
    "yourselves": "yourselves",
    "series": "series",
    "species": "species",
    "news": "news",
}

_ES_CLUSTERS = ("ses", "xes", "zes", "ches", "shes")


def _strip_once(w: str) -> str:
    if w.endswith(("'s", "’s")):
        return w[:-2]
    if w.endswith(("s'", "s’")):
        return w[:-1]
    if w in _LEMMA_EXCEPTIONS:
        return _LEMMA_EXCEPTIONS[w]
    if w.endswith("ies") and len(w) >= 5:
        return w[:-3] + "y"
    if w.endswith(_ES_CLUSTERS) and len(w) - 2 >= 3:
        return w[:-2]
    if w.endswith("s") and not w.endswith(("ss", "us", "is")) and len(w) >= 4:
        return w[:-1]
    if w.endswith("ing") and len(w) - 3 >= 3:
        return w[:-3]
    if w.endswith("ed") and len(w) - 2 >= 3:
        return w[:-2]
    return w


def lemmatize(surface: str) -> str:
    """Lowercase and strip plural/-ing/-ed suffixes to a fixed point.

    Deliberately crude (no dictionary): the goal is a stable, idempotent
    lemma space, not dictionary citation forms. "running" -> "run" via the
    exception table; unlisted doubled stems stay doubled ("humming" ->
    "humm") and that convention is relied on by the tests.
    """
    w = surface.lower()
    while True:
        nxt = _strip_once(w)
        if nxt == w:
            return w
        w = nxt


def tokenize(text: str, offset: int = 0) -> list[Token]:
    """Split text into word and punctuation tokens with absolute spans.

    Tokens are untagged (``word_class`` is PUNCT or None); `tag` fills in
    content/function for word tokens.
    """
    out = []
    for m in _TOKEN_RE.finditer(text):
        surface = m.group(0)
        wc = None if _WORD_RE.search(surface) else WordClass.PUNCT
        out.append(
            Token(
                surface=surface,
                lemma=lemmatize(surface),
                word_class=wc,
                span=(offset + m.start(), offset + m.end()),
            )
        )
    return out


def tag(sentence: Sentence, function_words: frozenset[str]) -> Sentence:
    """Return a copy of the sentence with every word token classed.

    Pure membership test: a word token is FUNCTION iff its lemma is in the
    list, CONTENT otherwise. Punctuation tokens keep class PUNCT.
    """
    if not sentence.tokens:
        raise ValueError("cannot tag a sentence with no tokens")
    tagged = []
    for t in sentence.tokens:
        if t.word_class is WordClass.PUNCT:
            tagged.append(t)
        else:
            wc = WordClass.FUNCTION if t.lemma in function_words else WordClass.CONTENT
            tagged.append(replace(t, word_class=wc))
    return replace(sentence, tokens=tuple(tagged))


_PARA_SPLIT_RE = re.compile(r"\n[ \t]*\n+")
_TERMINAL_RE = re.compile(r"[.!?]+")
_CLOSERS = "\"'”’)]"
_OPEN_QUOTES = "\"'“‘«"


def _sentence_break_positions(text: str, abbreviations: frozenset[str]) -> list[int]:
    """Positions just after a sentence terminator where a new sentence starts."""
    breaks = []
    for m in _TERMINAL_RE.finditer(text):
        end = m.end()
        while end < len(text) and text[end] in _CLOSERS:
            end += 1
        j = end
        while j < len(text) and text[j].isspace():
            j += 1
        if j == end or j >= len(text):
            continue  # no whitespace after terminator, or end of block
        nxt = text[j]
        if not (nxt.isupper() or nxt in _OPEN_QUOTES):
            continue
        if m.group(0).endswith(".") and _ends_with_abbreviation(text[: m.end()], abbreviations):
            continue
        breaks.append(end)
    return breaks


def _ends_with_abbreviation(head: str, abbreviations: frozenset[str]) -> bool:
    low = head.lower()
    for abbr in abbreviations:
        if not low.endswith(abbr):
            continue
        i = len(low) - len(abbr)
        if i == 0 or not (low[i - 1].isalnum() or low[i - 1] == "."):
            return True
    return False


def segment(
    raw: str,
    abbreviations: Optional[frozenset[str]] = None,
) -> Document:
    """Decompose raw text into paragraphs and sentences with tokens.

    Sentence boundaries sit at ``. ! ?`` runs followed by whitespace and an
    uppercase letter or opening quote; entries in the abbreviation list
    (e.g. "dr.") suppress the split. Paragraphs split on blank lines.
    """
    if not raw or not raw.strip():
        raise EmptyInput("input text is empty")
    if abbreviations is None:
        abbreviations = default_abbreviations()

    sentences: list[Sentence] = []
    paragraphs: list[tuple[int, int]] = []

    para_bounds = []
    prev = 0
    for m in _PARA_SPLIT_RE.finditer(raw):
        para_bounds.append((prev, m.start()))
        prev = m.end()
    para_bounds.append((prev, len(raw)))

    for p_start, p_end in para_bounds:
        block = raw[p_start:p_end]
        if not block.strip():
            continue
        first_sentence = len(sentences)
        cuts = [0] + _sentence_break_positions(block, abbreviations) + [len(block)]
        for lo, hi in zip(cuts, cuts[1:]):
            piece = block[lo:hi]
            lstrip = len(piece) - len(piece.lstrip())
            text = piece.strip()
            if not text:
                continue
            start = p_start + lo + lstrip
            tokens = tokenize(text, offset=start)
            if not tokens:
                continue
            sentences.append(
                Sentence(index=len(sentences), text=text, start=start, tokens=tuple(tokens))
            )
        if len(sentences) > first_sentence:
            paragraphs.append((first_sentence, len(sentences)))

    if not sentences:
        raise EmptyInput("input text contains no sentences")
    return Document(raw=raw, sentences=tuple(sentences), paragraphs=tuple(paragraphs))


def build_document(
    raw: str,
    function_words: Optional[frozenset[str]] = None,
    abbreviations: Optional[frozenset[str]] = None,
) -> Document:
    """segment + tag in one call; the form every downstream module consumes."""
    if function_words is None:
        function_words = default_function_words()
    doc = segment(raw, abbreviations=abbreviations)
    tagged = tuple(tag(s, function_words) for s in doc.sentences)
    return replace(doc, sentences=tagged)


def load_word_list(source: str | Path | Iterable[str]) -> frozenset[str]:
    """Load a one-entry-per-line word list; ``#`` starts a comment line.

    Entries are lowercased. Accepts a path or any iterable of lines.
    """
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    else:
        lines = list(source)
    entries = set()
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries.add(line.lower())
    return frozenset(entries)


def _resource_text(name: str) -> str:
    return (_importlib_resources.files("draftcoach") / "resources" / name).read_text(
        encoding="utf-8"
    )


@lru_cache(maxsize=None)
def default_function_words() -> frozenset[str]:
    return load_word_list(_resource_text("function_words.txt").splitlines())


@lru_cache(maxsize=None)
def default_abbreviations() -> frozenset[str]:
    return load_word_list(_resource_text("abbreviations.txt").splitlines())


# Third-person pronouns counted by the repeated-lemma fluency feature.
THIRD_PERSON_PRONOUNS = frozenset(
    {
        "he", "she", "it", "they", "him", "her", "them",
        "his", "its", "their", "himself", "herself", "itself", "themselves",
    }
)
