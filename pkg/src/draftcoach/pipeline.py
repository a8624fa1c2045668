"""The analysis engine: one object wiring text decomposition, genre
classification, facet scoring, alignment, parsing, and guidance into the
payloads the service and CLI both serve.

There is exactly one serialization path for the analyze payload, so the CLI
``--json`` output and the service response are schema-identical by
construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from . import align as align_mod
from . import discourse, draftgen, facets as facets_mod, features as features_mod
from . import genre as genre_mod, guidance as guidance_mod
from .config import EngineConfig
from .errors import AnalysisUnavailable, EmptyInput
from .facets import FacetWeights
from .genre import GenreModel
from .lexicon import Lexicon, default_spoken_lexicon, default_subtlex_lexicon
from .textcore import Document, build_document

PAYLOAD_SCHEMA = 1


@dataclass
class AnalysisEngine:
    config: EngineConfig = field(default_factory=EngineConfig)
    weights: Optional[FacetWeights] = None
    spoken_lexicon: Optional[Lexicon] = None
    subtlex_lexicon: Optional[Lexicon] = None
    genre_model: Optional[GenreModel] = None
    boundary_model: Optional[discourse.BoundaryModel] = None
    relation_model: Optional[discourse.RelationModel] = None
    similarity_backend: Optional[align_mod.SimilarityBackend] = None
    guidance_rules: Optional[dict] = None

    @classmethod
    def default(cls, config: Optional[EngineConfig] = None) -> "AnalysisEngine":
        return cls(
            config=config or EngineConfig(),
            weights=facets_mod.default_weights(),
            spoken_lexicon=default_spoken_lexicon(),
            subtlex_lexicon=default_subtlex_lexicon(),
            genre_model=genre_mod.default_model(),
        )

    # -- building blocks ---------------------------------------------------

    def document(self, text: str) -> Document:
        return build_document(text)

    def clause_breaks(self, doc: Document) -> features_mod.ClauseBreaks:
        """EDU-opening token positions per sentence, used as clause breaks."""
        out: features_mod.ClauseBreaks = {}
        for s in doc.sentences:
            edus = discourse.segment_edus(s, model=self.boundary_model)
            starts = frozenset(e.token_span[0] for e in edus if e.token_span[0] > 0)
            if starts:
                out[s.index] = starts
        return out

    def feature_vector(
        self, doc: Document, source: Optional[Document]
    ) -> features_mod.FeatureVector:
        return features_mod.compute_features(
            doc,
            source=source,
            spoken_lexicon=self.spoken_lexicon,
            subtlex_lexicon=self.subtlex_lexicon,
            clause_breaks=self.clause_breaks(doc),
        )

    def config_snapshot(self) -> dict:
        snap = self.config.snapshot()
        snap["weights_version"] = self.weights.version if self.weights else None
        snap["lexicons"] = [
            lx.name for lx in (self.spoken_lexicon, self.subtlex_lexicon) if lx is not None
        ]
        return snap

    # -- payloads ------------------------------------------------------------

    def analyze(self, draft_text: str, source: Optional[Document] = None) -> dict:
        """Full analysis payload for one draft: organization, facets,
        per-sentence bars, and guidance."""
        if self.genre_model is None:
            raise AnalysisUnavailable("genre model is not loaded; train or supply one")
        if self.weights is None:
            raise AnalysisUnavailable("facet weights are not loaded")
        if not draft_text or not draft_text.strip():
            raise EmptyInput("draft text is empty")

        doc = self.document(draft_text)
        scheme = genre_mod.classify(self.genre_model, list(doc.sentences))
        missing = genre_mod.completeness(scheme, self.config.required_genres)
        missing_sorted = [g for g in genre_mod.GENRES if g in missing]

        fv = self.feature_vector(doc, source)
        sentence_fvs = [
            self.feature_vector(features_mod.sentence_view(doc, i), source)
            for i in range(len(doc.sentences))
        ]
        report = facets_mod.facets(fv, self.weights, per_sentence_fvs=sentence_fvs)
        tips = guidance_mod.generate(report, missing, rules=self.guidance_rules)

        report_dict = report.to_dict()
        return {
            "schema": PAYLOAD_SCHEMA,
            "sentences": [s.text for s in doc.sentences],
            "organization": {
                "labels": list(scheme.labels),
                "missing": missing_sorted,
                "required": list(self.config.required_genres),
            },
            "facets": report_dict["facets"],
            "overall": report_dict["overall"],
            "per_sentence": report_dict["per_sentence"],
            "features": fv.as_dict(),
            "guidance": tips,
            "flags": report_dict["flags"],
            "weights_version": report_dict["weights_version"],
        }

    def rst_payload(self, doc: Document, paragraph: Optional[int] = None) -> dict:
        tree, edus = discourse.parse_document(doc, self.relation_model, paragraph=paragraph)
        counts = discourse.relation_counts(tree)
        per_paragraph = []
        if paragraph is None:
            for p in range(len(doc.paragraphs)):
                ptree, _ = discourse.parse_document(doc, self.relation_model, paragraph=p)
                per_paragraph.append(discourse.relation_counts(ptree))
        sat = {
            rel: [list(span) for span in discourse.satellite_spans(tree, rel)]
            for rel in sorted(counts)
        }
        return {
            "scope": "full" if paragraph is None else f"paragraph_{paragraph}",
            "tree": discourse.tree_to_dict(tree, edus),
            "relation_counts": dict(sorted(counts.items())),
            "paragraph_relation_counts": per_paragraph,
            "satellite_spans": sat,
        }

    def reference_payload(self, source: Document, reference_text: str, k: int) -> dict:
        if self.genre_model is None:
            raise AnalysisUnavailable("genre model is not loaded; train or supply one")
        ref_doc = self.document(reference_text)
        scheme = genre_mod.classify(self.genre_model, list(ref_doc.sentences))
        amap = align_mod.build(ref_doc, source, k, backend=self.similarity_backend)
        return {
            "organization": {"labels": list(scheme.labels)},
            "alignment": amap.to_dict(),
            "sentences": [s.text for s in ref_doc.sentences],
            "source_sentences": [s.text for s in source.sentences],
        }

    def prompt_payload(self, source: Document, target_count: Optional[int] = None) -> dict:
        tree, _ = discourse.parse_document(source, self.relation_model)
        prompt = draftgen.extract(
            source,
            target_count or self.config.target_count,
            rst=tree,
            weights=self.config.extract_weights,
        )
        return prompt.to_dict()


def dumps_payload(payload: dict) -> str:
    """Canonical serialization: the byte-stable form used for golden files."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
