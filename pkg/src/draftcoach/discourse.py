"""Discourse segmentation and rhetorical-structure parsing.

The pipeline mirrors the classic two-stage design: segment sentences into
elementary discourse units (EDUs), then build a binary tree over them with a
linear-time shift-reduce pass. Both stages have deterministic rule/heuristic
modes that need no training data, plus small self-contained learned modes:
a regularized logistic boundary classifier and an averaged-perceptron
transition classifier.

By default documents are parsed at sentence granularity (one EDU per
sentence, paragraphs parsed independently and then folded together);
EDU-level parsing is available per sentence.
"""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import DegenerateCorpus, FormatError, UnknownRelation
from .textcore import Document, Sentence, WordClass, build_document

DEFAULT_RELATIONS = (
    "background",
    "contrast",
    "elaboration",
    "joint",
    "sequence",
    "attribution",
    "explanation",
    "cause",
    "condition",
    "comparison",
    "enablement",
    "evaluation",
    "summary",
    "temporal",
    "topic-change",
    "same-unit",
)

NUCLEARITIES = ("NN", "NS", "SN")

# segmentation cues: subordinators always open a unit, coordinators only
# after a comma (so "hopes and dreams" stays whole)
SUBORDINATOR_CUES = frozenset(
    {"because", "although", "though", "unless", "whereas", "while", "whenever"}
)
COORDINATOR_CUES = frozenset({"and", "but", "or", "nor", "so", "yet"})

# relation cues checked near the start of the right-hand span when reducing
_RELATION_CUES = (
    ("however", "contrast", "NN"),
    ("but", "contrast", "NN"),
    ("whereas", "contrast", "NN"),
    ("yet", "contrast", "NN"),
    ("because", "explanation", "NS"),
    ("since", "explanation", "NS"),
    ("therefore", "cause", "NS"),
    ("thus", "cause", "NS"),
    ("hence", "cause", "NS"),
    ("if", "condition", "NS"),
    ("unless", "condition", "NS"),
    ("example", "elaboration", "NS"),
    ("instance", "elaboration", "NS"),
    ("then", "sequence", "NN"),
    ("next", "sequence", "NN"),
    ("finally", "sequence", "NN"),
    ("second", "sequence", "NN"),
    ("third", "sequence", "NN"),
    ("also", "joint", "NN"),
    ("moreover", "joint", "NN"),
    ("furthermore", "joint", "NN"),
    ("and", "joint", "NN"),
    ("meanwhile", "temporal", "NN"),
    ("when", "temporal", "NS"),
    ("after", "temporal", "NS"),
    ("before", "temporal", "NS"),
)

DEFAULT_REDUCE = ("elaboration", "NS")


@dataclass(frozen=True)
class Edu:
    id: int  # 1-based, strictly increasing in text order
    text: str
    sentence_index: int
    token_span: tuple[int, int]  # token index range within the sentence


@dataclass(frozen=True)
class RstNode:
    span: tuple[int, int]  # inclusive EDU-id range
    edu_id: Optional[int] = None  # set for leaves
    relation: Optional[str] = None  # set for internal nodes
    nuclearity: Optional[str] = None  # set for internal nodes
    children: tuple["RstNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.edu_id is not None

    def leaves(self) -> list["RstNode"]:
        if self.is_leaf:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]

    def internal_nodes(self) -> list["RstNode"]:
        if self.is_leaf:
            return []
        nodes = [self]
        for child in self.children:
            nodes.extend(child.internal_nodes())
        return nodes

    def validate(self) -> None:
        if self.is_leaf:
            if self.children or self.span != (self.edu_id, self.edu_id):
                raise ValueError(f"malformed leaf {self}")
            return
        if len(self.children) != 2:
            raise ValueError("internal nodes must have exactly two children")
        left, right = self.children
        if left.span[1] + 1 != right.span[0]:
            raise ValueError(f"non-contiguous child spans {left.span} / {right.span}")
        if self.span != (left.span[0], right.span[1]):
            raise ValueError(f"span {self.span} is not the union of child spans")
        if self.relation is None or self.nuclearity not in NUCLEARITIES:
            raise ValueError(f"internal node missing labels: {self}")
        left.validate()
        right.validate()


def leaf(edu_id: int) -> RstNode:
    return RstNode(span=(edu_id, edu_id), edu_id=edu_id)


def internal(relation: str, nuclearity: str, left: RstNode, right: RstNode) -> RstNode:
    return RstNode(
        span=(left.span[0], right.span[1]),
        relation=relation,
        nuclearity=nuclearity,
        children=(left, right),
    )


# --- EDU segmentation ---------------------------------------------------


def _gap_has(sentence: Sentence, i: int, chars: str) -> bool:
    prev = sentence.tokens[i - 1] if i > 0 else None
    if prev is not None and prev.word_class is WordClass.PUNCT:
        if any(c in prev.surface for c in chars):
            return True
    return any(c in sentence.gap_before(i) for c in chars)


def rule_boundaries(sentence: Sentence) -> list[int]:
    """Token indices that open an EDU under the cue rules (always includes 0)."""
    bounds = [0]
    for i, tok in enumerate(sentence.tokens):
        if i == 0 or not tok.is_word:
            continue
        if tok.lemma in SUBORDINATOR_CUES:
            bounds.append(i)
        elif tok.lemma in COORDINATOR_CUES and _gap_has(sentence, i, ","):
            bounds.append(i)
        elif _gap_has(sentence, i, ";"):
            bounds.append(i)
    return sorted(set(bounds))


def segment_edus(
    sentence: Sentence,
    model: Optional["BoundaryModel"] = None,
    first_id: int = 1,
) -> list[Edu]:
    """Split one tagged sentence into EDUs (rule fallback or learned model)."""
    if model is not None:
        bounds = model.boundaries(sentence)
    else:
        bounds = rule_boundaries(sentence)
    if not bounds or bounds[0] != 0:
        bounds = [0] + bounds
    edges = bounds + [len(sentence.tokens)]
    edus = []
    for k, (lo, hi) in enumerate(zip(edges, edges[1:])):
        if hi <= lo:
            continue
        start_char = sentence.tokens[lo].span[0]
        end_char = sentence.tokens[hi - 1].span[1]
        text = sentence.text[start_char - sentence.start : end_char - sentence.start]
        edus.append(
            Edu(
                id=first_id + len(edus),
                text=text,
                sentence_index=sentence.index,
                token_span=(lo, hi),
            )
        )
    return edus


def sentence_edus(doc: Document) -> list[Edu]:
    """One EDU per sentence: the default document-level granularity."""
    return [
        Edu(
            id=s.index + 1,
            text=s.text,
            sentence_index=s.index,
            token_span=(0, len(s.tokens)),
        )
        for s in doc.sentences
    ]


# --- boundary classifier --------------------------------------------------


def _boundary_features(sentence: Sentence, i: int) -> list[str]:
    toks = sentence.tokens
    tok = toks[i]
    feats = [
        f"lemma={tok.lemma}",
        f"prev={toks[i - 1].lemma if i > 0 else '^'}",
        f"next={toks[i + 1].lemma if i + 1 < len(toks) else '$'}",
        f"pos_bucket={min(5 * i // max(len(toks), 1), 4)}",
    ]
    if tok.word_class is WordClass.PUNCT:
        feats.append("is_punct")
    if _gap_has(sentence, i, ","):
        feats.append("comma_before")
    if _gap_has(sentence, i, ";"):
        feats.append("semicolon_before")
    if tok.lemma in SUBORDINATOR_CUES or tok.lemma in COORDINATOR_CUES:
        feats.append("is_cue")
    return feats


@dataclass
class BoundaryModel:
    """Regularized logistic classifier: does this token open a new EDU?

    Scores are deterministic; the first token of a sentence is always a
    boundary and never consulted. With overwhelming regularization all
    weights (bias included) shrink to zero and prediction degenerates to
    "no internal boundaries".
    """

    weights: dict[str, float] = field(default_factory=dict)
    bias: float = 0.0
    reg: float = 1.0

    def score(self, feats: Iterable[str]) -> float:
        return self.bias + sum(self.weights.get(f, 0.0) for f in feats)

    def boundaries(self, sentence: Sentence) -> list[int]:
        out = [0]
        for i in range(1, len(sentence.tokens)):
            if self.score(_boundary_features(sentence, i)) > 0.0:
                out.append(i)
        return out


def train_boundary(
    corpus: Sequence[tuple[Sentence, Iterable[int]]],
    reg: float = 1.0,
    epochs: int = 300,
    lr: float = 0.5,
) -> BoundaryModel:
    """Fit the boundary classifier on (sentence, gold boundary indices) pairs.

    Sentence-initial positions are forced boundaries and excluded from the
    examples. Full-batch gradient descent; deterministic for a fixed corpus.
    """
    examples: list[tuple[list[str], int]] = []
    n_pos = 0
    for sentence, bounds in corpus:
        bound_set = set(bounds)
        for i in range(1, len(sentence.tokens)):
            y = 1 if i in bound_set else 0
            n_pos += y
            examples.append((_boundary_features(sentence, i), y))
    if not examples or n_pos == 0:
        raise DegenerateCorpus("no positive EDU-boundary examples in corpus")
    if reg <= 0:
        raise ValueError("reg must be positive")

    weights: dict[str, float] = defaultdict(float)
    bias = 0.0
    n = len(examples)
    shrink = 1.0 / (1.0 + lr * reg / n)  # proximal L2 step: stable for any reg
    for _ in range(epochs):
        grad: dict[str, float] = defaultdict(float)
        grad_bias = 0.0
        for feats, y in examples:
            s = bias + sum(weights[f] for f in feats)
            p = 1.0 / (1.0 + math.exp(-max(min(s, 35.0), -35.0)))
            err = p - y
            for f in feats:
                grad[f] += err
            grad_bias += err
        for f in sorted(set(list(weights.keys()) + list(grad.keys()))):
            weights[f] = (weights[f] - lr * grad[f] / n) * shrink
        bias = (bias - lr * grad_bias / n) * shrink
    return BoundaryModel(weights=dict(weights), bias=bias, reg=reg)


# --- transitions and parsing ----------------------------------------------

SHIFT = ("shift",)


def reduce_action(relation: str, nuclearity: str) -> tuple[str, str, str]:
    return ("reduce", relation, nuclearity)


def _leading_cue(edu: Edu, window: int = 4) -> Optional[tuple[str, str, str]]:
    lemmas = [
        w.lower()
        for w in re.findall(r"[\w'’-]+", edu.text)[:window]
    ]
    for cue, relation, nuc in _RELATION_CUES:
        if cue in lemmas:
            return cue, relation, nuc
    return None


def _cue_label(right_first_edu: Edu) -> tuple[str, str]:
    hit = _leading_cue(right_first_edu)
    if hit:
        return hit[1], hit[2]
    return DEFAULT_REDUCE


def parse_with_actions(
    edus: Sequence[Edu],
    model: Optional["RelationModel"] = None,
) -> tuple[RstNode, list[tuple]]:
    """Shift-reduce parse; returns the tree plus the executed transition log.

    Heuristic mode (no model): scan left to right, reduce the stack top when
    an incoming EDU opens with a cue, fold the remainder right-to-left at the
    end, and label every reduce from the right-hand span's leading cue
    (default: elaboration, nucleus on the left). Exactly n shifts and n-1
    reduces for n EDUs.
    """
    if not edus:
        raise ValueError("cannot parse an empty EDU list")
    ids = [e.id for e in edus]
    if any(b <= a for a, b in zip(ids, ids[1:])):
        raise ValueError("EDU ids must be strictly increasing")

    if model is not None:
        return model.parse(edus)

    first_edu = {e.id: e for e in edus}

    def right_first(node: RstNode) -> Edu:
        return first_edu[node.span[0]]

    actions: list[tuple] = []
    stack: list[RstNode] = []

    def do_reduce() -> None:
        right = stack.pop()
        left = stack.pop()
        relation, nuc = _cue_label(right_first(right))
        actions.append(reduce_action(relation, nuc))
        stack.append(internal(relation, nuc, left, right))

    for edu in edus:
        if len(stack) >= 2 and _leading_cue(edu) is not None:
            do_reduce()
        actions.append(SHIFT)
        stack.append(leaf(edu.id))
    while len(stack) > 1:
        do_reduce()
    tree = stack[0]
    tree.validate()
    return tree, actions


def parse(edus: Sequence[Edu], model: Optional["RelationModel"] = None) -> RstNode:
    tree, _ = parse_with_actions(edus, model)
    return tree


def replay(edus: Sequence[Edu], actions: Sequence[tuple]) -> RstNode:
    """Execute a recorded transition sequence over the EDU list."""
    stack: list[RstNode] = []
    buffer = list(edus)
    pos = 0
    for action in actions:
        if action[0] == "shift":
            if pos >= len(buffer):
                raise ValueError("shift with empty buffer")
            stack.append(leaf(buffer[pos].id))
            pos += 1
        elif action[0] == "reduce":
            if len(stack) < 2:
                raise ValueError("reduce with fewer than two stack items")
            _, relation, nuc = action
            right = stack.pop()
            left = stack.pop()
            stack.append(internal(relation, nuc, left, right))
        else:
            raise ValueError(f"unknown action {action!r}")
    if pos != len(buffer) or len(stack) != 1:
        raise ValueError("action sequence did not consume all EDUs into one tree")
    tree = stack[0]
    tree.validate()
    return tree


def oracle_actions(tree: RstNode) -> list[tuple]:
    """Post-order transition sequence that rebuilds the tree via replay."""
    actions: list[tuple] = []

    def walk(node: RstNode) -> None:
        if node.is_leaf:
            actions.append(SHIFT)
            return
        walk(node.children[0])
        walk(node.children[1])
        actions.append(reduce_action(node.relation, node.nuclearity))

    walk(tree)
    return actions


def satellite_spans(
    tree: RstNode,
    relation: str,
    inventory: Sequence[str] = DEFAULT_RELATIONS,
) -> list[tuple[int, int]]:
    """Spans of satellite children under internal nodes with this relation.

    Multinuclear (NN) nodes contribute nothing. Pre-order document order.
    """
    if relation not in inventory:
        raise UnknownRelation(f"relation {relation!r} not in inventory")
    spans = []
    for node in tree.internal_nodes():
        if node.relation != relation:
            continue
        if node.nuclearity == "NS":
            spans.append(node.children[1].span)
        elif node.nuclearity == "SN":
            spans.append(node.children[0].span)
    return spans


def relation_counts(tree: RstNode) -> dict[str, int]:
    return dict(Counter(node.relation for node in tree.internal_nodes()))


def parse_document(
    doc: Document,
    model: Optional["RelationModel"] = None,
    paragraph: Optional[int] = None,
) -> tuple[RstNode, list[Edu]]:
    """Sentence-granularity tree for a paragraph or the whole document.

    Paragraphs are parsed independently; for the full document their roots
    fold right-to-left under topic-change (both halves nuclear).
    """
    edus = sentence_edus(doc)
    if paragraph is not None:
        lo, hi = doc.paragraphs[paragraph]
        tree = parse(edus[lo:hi], model)
        return tree, edus[lo:hi]
    para_trees = [parse(edus[lo:hi], model) for lo, hi in doc.paragraphs]
    while len(para_trees) > 1:
        right = para_trees.pop()
        left = para_trees.pop()
        para_trees.append(internal("topic-change", "NN", left, right))
    tree = para_trees[0]
    tree.validate()
    return tree, edus


def tree_to_dict(node: RstNode, edus: Optional[Sequence[Edu]] = None) -> dict:
    by_id = {e.id: e for e in edus} if edus else {}
    if node.is_leaf:
        out: dict = {"kind": "leaf", "span": list(node.span), "edu": node.edu_id}
        if node.edu_id in by_id:
            e = by_id[node.edu_id]
            out["text"] = e.text
            out["sentence_index"] = e.sentence_index
        return out
    return {
        "kind": "internal",
        "span": list(node.span),
        "relation": node.relation,
        "nuclearity": node.nuclearity,
        "children": [tree_to_dict(c, edus) for c in node.children],
    }


# --- gold data formats ----------------------------------------------------


@dataclass(frozen=True)
class GoldDocument:
    doc_id: str
    edu_texts: tuple[str, ...]


def parse_gold_edus(lines: Iterable[str]) -> list[GoldDocument]:
    """`doc_id<TAB>edu_id<TAB>text` lines grouped by doc id in file order."""
    docs: dict[str, list[tuple[int, str]]] = {}
    order: list[str] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise FormatError("expected `doc_id<TAB>edu_id<TAB>text`", line=lineno)
        doc_id, edu_id_raw, text = parts
        try:
            edu_id = int(edu_id_raw)
        except ValueError:
            raise FormatError(f"bad edu id {edu_id_raw!r}", line=lineno) from None
        if doc_id not in docs:
            docs[doc_id] = []
            order.append(doc_id)
        docs[doc_id].append((edu_id, text.strip()))
    out = []
    for doc_id in order:
        items = sorted(docs[doc_id])
        out.append(GoldDocument(doc_id=doc_id, edu_texts=tuple(t for _, t in items)))
    return out


def gold_boundary_corpus(
    gold: Sequence[GoldDocument],
) -> list[tuple[Sentence, list[int]]]:
    """Convert gold EDU docs into (tagged sentence, boundary indices) pairs."""
    corpus = []
    for gdoc in gold:
        joined = " ".join(gdoc.edu_texts)
        starts = set()
        offset = 0
        for text in gdoc.edu_texts:
            starts.add(offset)
            offset += len(text) + 1
        doc = build_document(joined)
        for sentence in doc.sentences:
            bounds = [
                i
                for i, tok in enumerate(sentence.tokens)
                if tok.span[0] in starts and i > 0
            ]
            corpus.append((sentence, bounds))
    return corpus


_SEXPR_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_gold_tree(text: str, inventory: Sequence[str] = DEFAULT_RELATIONS) -> RstNode:
    """Nested parenthesized form: ``(relation nuclearity left right)``, leaves
    are integer EDU ids."""
    tokens = _SEXPR_TOKEN.findall(text)
    pos = 0

    def next_token() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("unexpected end of tree expression")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_node() -> RstNode:
        tok = next_token()
        if tok == "(":
            relation = next_token()
            if relation not in inventory:
                raise UnknownRelation(f"relation {relation!r} not in inventory")
            nuc = next_token()
            if nuc not in NUCLEARITIES:
                raise FormatError(f"bad nuclearity {nuc!r}")
            left = parse_node()
            right = parse_node()
            if next_token() != ")":
                raise FormatError("expected `)`")
            return internal(relation, nuc, left, right)
        if tok == ")":
            raise FormatError("unexpected `)`")
        try:
            return leaf(int(tok))
        except ValueError:
            raise FormatError(f"expected EDU id or `(`, got {tok!r}") from None

    node = parse_node()
    if pos != len(tokens):
        raise FormatError("trailing tokens after tree expression")
    node.validate()
    return node


def serialize_tree(node: RstNode) -> str:
    if node.is_leaf:
        return str(node.edu_id)
    left, right = node.children
    return (
        f"({node.relation} {node.nuclearity} "
        f"{serialize_tree(left)} {serialize_tree(right)})"
    )


# --- transition classifier --------------------------------------------------


def _span_features(prefix: str, node: RstNode, first_edu: dict[int, Edu]) -> list[str]:
    e_first = first_edu[node.span[0]]
    words = re.findall(r"[\w'’-]+", e_first.text.lower())
    feats = [f"{prefix}_first={words[0] if words else ''}"]
    cue = _leading_cue(e_first)
    feats.append(f"{prefix}_cue={cue[0] if cue else '-'}")
    length = node.span[1] - node.span[0] + 1
    feats.append(f"{prefix}_len={min(length, 4)}")
    return feats


def _state_features(
    stack: list[RstNode], buf: Sequence[Edu], pos: int, first_edu: dict[int, Edu]
) -> list[str]:
    feats = [f"stack={min(len(stack), 4)}", f"buffer={'y' if pos < len(buf) else 'n'}"]
    if stack:
        feats.extend(_span_features("s1", stack[-1], first_edu))
    if len(stack) > 1:
        feats.extend(_span_features("s2", stack[-2], first_edu))
    if pos < len(buf):
        b = buf[pos]
        words = re.findall(r"[\w'’-]+", b.text.lower())
        feats.append(f"b1_first={words[0] if words else ''}")
        cue = _leading_cue(b)
        feats.append(f"b1_cue={cue[0] if cue else '-'}")
    return feats


class _AveragedPerceptron:
    def __init__(self) -> None:
        self.weights: dict[str, dict[str, float]] = defaultdict(dict)
        self.totals: dict[str, dict[str, float]] = defaultdict(dict)
        self.steps = 0

    def score(self, feats: Sequence[str], label: str) -> float:
        w = self.weights[label]
        return sum(w.get(f, 0.0) for f in feats)

    def predict(self, feats: Sequence[str], labels: Sequence[str]) -> str:
        return max(labels, key=lambda lb: (self.score(feats, lb), -labels.index(lb)))

    def update(self, feats: Sequence[str], gold: str, guess: str) -> None:
        self.steps += 1
        if gold == guess:
            return
        for f in feats:
            self.weights[gold][f] = self.weights[gold].get(f, 0.0) + 1.0
            self.weights[guess][f] = self.weights[guess].get(f, 0.0) - 1.0
            self.totals[gold][f] = self.totals[gold].get(f, 0.0) + self.steps
            self.totals[guess][f] = self.totals[guess].get(f, 0.0) - self.steps

    def average(self) -> None:
        if self.steps == 0:
            return
        for label, w in self.weights.items():
            t = self.totals[label]
            for f in list(w.keys()):
                w[f] -= t.get(f, 0.0) / self.steps


@dataclass
class RelationModel:
    """Learned transition classifier: shift/reduce plus reduce labels."""

    structure: _AveragedPerceptron
    labeler: _AveragedPerceptron
    labels: tuple[str, ...]  # "relation|nuclearity" pairs seen in training

    def parse(self, edus: Sequence[Edu]) -> tuple[RstNode, list[tuple]]:
        first_edu = {e.id: e for e in edus}
        stack: list[RstNode] = []
        actions: list[tuple] = []
        pos = 0
        while pos < len(edus) or len(stack) > 1:
            feats = _state_features(stack, edus, pos, first_edu)
            if pos >= len(edus):
                choice = "reduce"
            elif len(stack) < 2:
                choice = "shift"
            else:
                choice = self.structure.predict(feats, ("shift", "reduce"))
            if choice == "shift":
                stack.append(leaf(edus[pos].id))
                actions.append(SHIFT)
                pos += 1
            else:
                label = self.labeler.predict(feats, self.labels)
                relation, nuc = label.split("|")
                right = stack.pop()
                left = stack.pop()
                stack.append(internal(relation, nuc, left, right))
                actions.append(reduce_action(relation, nuc))
        tree = stack[0]
        tree.validate()
        return tree, actions


def train_relations(
    pairs: Sequence[tuple[Sequence[Edu], RstNode]],
    epochs: int = 5,
) -> RelationModel:
    """Train the transition classifier from (EDU list, gold tree) pairs."""
    if not pairs:
        raise DegenerateCorpus("no training trees")
    label_set: set[str] = set()
    for _, tree in pairs:
        for node in tree.internal_nodes():
            label_set.add(f"{node.relation}|{node.nuclearity}")
    if not label_set:
        raise DegenerateCorpus("gold trees contain no internal nodes")
    labels = tuple(sorted(label_set))

    structure = _AveragedPerceptron()
    labeler = _AveragedPerceptron()
    for _ in range(epochs):
        for edus, tree in pairs:
            first_edu = {e.id: e for e in edus}
            stack: list[RstNode] = []
            pos = 0
            for action in oracle_actions(tree):
                feats = _state_features(stack, edus, pos, first_edu)
                forced = pos >= len(edus) or len(stack) < 2
                if action[0] == "shift":
                    if not forced:
                        guess = structure.predict(feats, ("shift", "reduce"))
                        structure.update(feats, "shift", guess)
                    stack.append(leaf(edus[pos].id))
                    pos += 1
                else:
                    _, relation, nuc = action
                    if not forced:
                        guess = structure.predict(feats, ("shift", "reduce"))
                        structure.update(feats, "reduce", guess)
                    gold_label = f"{relation}|{nuc}"
                    guess_label = labeler.predict(feats, labels)
                    labeler.update(feats, gold_label, guess_label)
                    right = stack.pop()
                    left = stack.pop()
                    stack.append(internal(relation, nuc, left, right))
    structure.average()
    labeler.average()
    return RelationModel(structure=structure, labeler=labeler, labels=labels)
