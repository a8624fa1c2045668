#!/usr/bin/env python3
"""Regenerate resources/facet_weights.json.

Uniform weight magnitudes within each facet, signs per feature semantics;
normalization stats fitted from the bundled norm corpus. The syntactic trio
keeps (0, 1) placeholder norms because the default pipeline leaves those
features undefined.
"""

import json
import math
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from draftcoach.features import FEATURE_NAMES, compute_features  # noqa: E402
from draftcoach.lexicon import default_spoken_lexicon, default_subtlex_lexicon  # noqa: E402
from draftcoach import discourse  # noqa: E402
from draftcoach.textcore import build_document  # noqa: E402

RES = Path(__file__).resolve().parents[1] / "src" / "draftcoach" / "resources"

FACET_SIGNS = {
    "understandability": {
        "frequency_all": 1,
        "frequency_function": 1,
        "frequency_content_subtlex": 1,
        "frequency_all_subtlex": 1,
    },
    "consistency": {"rouge3_source": 1},
    "fluency": {
        "adj_sent_similarity": 1,
        "repeated_lemma_pronoun_ratio": 1,
        "adj_function_overlap": 1,
    },
    "diversity": {
        "ttr_all": 1,
        "mattr_function": 1,
        "content_token_count": 1,
        "mtld_function": 1,
        "mtld_all": 1,
        "mtld_content": 1,
        "lexical_density": 1,
        "ttr_content": 1,
        "sd_dependents_nsubj": 1,
        "sd_dependents_clause": 1,
        "sd_dependents_pobj": 1,
    },
    "conciseness": {
        "mean_sentence_length": -1,
        "mean_clause_length": -1,
        "word_count": -1,
    },
}


def clause_breaks(doc):
    out = {}
    for s in doc.sentences:
        edus = discourse.segment_edus(s)
        starts = frozenset(e.token_span[0] for e in edus if e.token_span[0] > 0)
        if starts:
            out[s.index] = starts
    return out


def corpus_vectors():
    corpus = RES / "norm_corpus"
    spoken = default_spoken_lexicon()
    subtlex = default_subtlex_lexicon()
    for abstract_path in sorted(corpus.glob("*.abstract.txt")):
        intro_path = corpus / abstract_path.name.replace(".abstract.", ".intro.")
        doc = build_document(abstract_path.read_text(encoding="utf-8"))
        source = build_document(intro_path.read_text(encoding="utf-8"))
        yield compute_features(
            doc,
            source=source,
            spoken_lexicon=spoken,
            subtlex_lexicon=subtlex,
            clause_breaks=clause_breaks(doc),
        )


def main() -> None:
    vectors = [fv.as_dict() for fv in corpus_vectors()]
    norms = {}
    for name in FEATURE_NAMES:
        values = [v[name] for v in vectors if v[name] is not None]
        if len(values) >= 2:
            mean = sum(values) / len(values)
            var = sum((x - mean) ** 2 for x in values) / (len(values) - 1)
            sd = math.sqrt(var)
            if sd > 0:
                norms[name] = {"mean": mean, "sd": sd}
                continue
        norms[name] = {"mean": 0.0, "sd": 1.0}

    facets = {}
    for facet, signs in FACET_SIGNS.items():
        magnitude = 1.0 / len(signs)
        facets[facet] = {name: sign * magnitude for name, sign in sorted(signs.items())}

    payload = {
        "schema": 1,
        "version": "default-uniform-1",
        "scale": {"midpoint": 4.0, "gain": 1.5, "min": 1.0, "max": 7.0},
        "facets": facets,
        "norms": {name: norms[name] for name in sorted(norms)},
    }
    out = RES / "facet_weights.json"
    out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out} (norms from {len(vectors)} corpus abstracts)")


if __name__ == "__main__":
    main()
