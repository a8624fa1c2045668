import math

import pytest
from hypothesis import given, settings, strategies as st

from draftcoach import facets as facets_mod
from draftcoach import features as F
from draftcoach.facets import FACET_ORDER, FacetWeights, Scale, facets, parse_weights
from draftcoach.features import FeatureVector
from draftcoach.lexicon import Lexicon
from draftcoach.textcore import build_document

import oracles


def doc(text: str):
    return build_document(text)


class TestRouge:
    def test_identity(self):
        toks = "x y z w".split()
        assert F.rouge_n(toks, toks, 3) == 1.0

    def test_spec_half(self):
        assert F.rouge_n("a b c d".split(), "a b c e".split(), 3) == 0.5

    def test_disjoint(self):
        assert F.rouge_n("a b c".split(), "d e f".split(), 2) == 0.0

    def test_short_reference(self):
        assert F.rouge_n("a b c".split(), "a b".split(), 3) == 0.0

    def test_clipped_multiset(self):
        # candidate repeats a gram more often than the reference has it
        assert F.rouge_n("a a a".split(), "a a b".split(), 1) == pytest.approx(2 / 3)

    def test_matches_oracle_random(self):
        import random

        rng = random.Random(5)
        for _ in range(50):
            cand = [f"w{rng.randrange(6)}" for _ in range(rng.randrange(0, 25))]
            ref = [f"w{rng.randrange(6)}" for _ in range(rng.randrange(1, 25))]
            n = rng.randrange(1, 4)
            assert F.rouge_n(cand, ref, n) == pytest.approx(
                oracles.rouge_n(cand, ref, n), abs=1e-12
            )


class TestTtr:
    def test_spec_example(self):
        lemmas = [t.lemma for t in doc("the cat sat on the mat").sentences[0].tokens]
        assert F.ttr(lemmas) == pytest.approx(5 / 6)

    def test_all_unique(self):
        assert F.ttr("a b c d".split()) == 1.0

    def test_single_repeated(self):
        assert F.ttr(["x"] * 4) == 0.25

    def test_empty_is_none(self):
        assert F.ttr([]) is None


class TestMattr:
    def test_short_text_equals_ttr(self):
        toks = "a b b".split()
        assert F.mattr(toks, 50) == F.ttr(toks)

    def test_periodic_window_two(self):
        assert F.mattr("a b a b a b".split(), 2) == 1.0

    def test_window_one_always_one(self):
        assert F.mattr("a a b b".split(), 1) == 1.0

    def test_hand_computed(self):
        # windows of "a a b": {a}, {a,b} -> (1/2 + 2/2) / 2
        assert F.mattr("a a b".split(), 2) == pytest.approx(0.75)

    def test_bad_window(self):
        with pytest.raises(ValueError):
            F.mattr("a b".split(), 0)


def engineered_mtld_stream() -> list[str]:
    """Five segments; running TTR first dips below .720 exactly at token 10."""
    stream = []
    for seg in range(5):
        words = [f"s{seg}w{i}" for i in range(7)]
        stream.extend(words + words[:3])
    return stream


class TestMtld:
    def test_engineered_stream_is_ten(self):
        stream = engineered_mtld_stream()
        assert len(stream) == 50
        assert F.mtld(stream, 0.720) == pytest.approx(10.0, abs=1e-9)
        assert oracles.mtld(stream, 0.720) == pytest.approx(10.0, abs=1e-9)

    def test_all_identical(self):
        assert F.mtld(["x"] * 10, 0.720) == pytest.approx(2.0)
        assert oracles.mtld(["x"] * 10, 0.720) == pytest.approx(2.0)

    def test_never_dipping_convention(self):
        toks = [f"w{i}" for i in range(8)]
        assert F.mtld(toks, 0.720) == 8.0

    def test_threshold_validation(self):
        with pytest.raises(ValueError):
            F.mtld("a b".split(), 1.5)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=120))
    def test_matches_step_trace_oracle(self, ids):
        toks = [f"w{i}" for i in ids]
        assert F.mtld(toks, 0.720) == pytest.approx(oracles.mtld(toks), abs=1e-9)


class TestFrequency:
    def test_hand_computed(self):
        lex = Lexicon("toy", {"cat": 2.0, "the": 10.0})
        assert F.frequency_feature(doc("the cat dog"), lex) == pytest.approx(6.0)

    def test_no_scored_tokens(self):
        lex = Lexicon("toy", {"zzz": 1.0})
        assert F.frequency_feature(doc("the cat dog"), lex) is None

    def test_constant_score(self):
        lex = Lexicon("toy", {"the": 3.5, "cat": 3.5, "dog": 3.5})
        assert F.frequency_feature(doc("the cat dog"), lex) == pytest.approx(3.5)

    def test_class_filter(self):
        from draftcoach.textcore import WordClass

        lex = Lexicon("toy", {"cat": 2.0, "the": 10.0})
        assert F.frequency_feature(doc("the cat dog"), lex, WordClass.FUNCTION) == 10.0


class TestFluency:
    def test_identical_sentences(self):
        sim, _, _ = F.fluency_features(doc("The cat sat. The cat sat."))
        assert sim == pytest.approx(1.0)

    def test_disjoint_sentences(self):
        sim, _, _ = F.fluency_features(doc("Alpha beta gamma. Delta epsilon zeta."))
        assert sim == 0.0

    def test_spec_hand_counts(self):
        d = doc("The cat sat. The cat ran.")
        sim, repeated, overlap = F.fluency_features(d)
        assert repeated == pytest.approx(1 / 8)
        assert overlap == 1.0
        assert sim == pytest.approx(2 / 3)

    def test_single_sentence_pairwise_undefined(self):
        sim, repeated, overlap = F.fluency_features(doc("Only one sentence here."))
        assert sim is None and overlap is None
        assert repeated is not None

    def test_pronouns_counted(self):
        d = doc("It sat there.")
        _, repeated, _ = F.fluency_features(d)
        # tokens: It sat there . -> 4; one third-person pronoun, no repeats
        assert repeated == pytest.approx(1 / 4)

    def test_binary_overlap_variant(self):
        d = doc("The cat sat on it. The big cat ran to it.")
        assert F.fluency_features(d)[2] == 2.0  # shared {the, it}
        assert F.fluency_features(d, binary_overlap=True)[2] == 1.0


class TestConciseness:
    def test_clause_rule(self):
        mean_sent, mean_clause, words = F.conciseness_features(doc("A b, c d."))
        assert mean_clause == pytest.approx(2.0)
        assert words == 6.0  # A b , c d .
        assert mean_sent == pytest.approx(6.0)

    def test_two_sentences_mean(self):
        d = doc("One two three four. Five six seven eight nine ten.")
        mean_sent, _, words = F.conciseness_features(d)
        assert mean_sent == pytest.approx(6.0)  # (5 + 7) / 2 with terminal periods
        assert words == 12.0

    def test_extra_breaks(self):
        d = doc("Alpha beta gamma delta.")
        _, mean_clause, _ = F.conciseness_features(d, clause_breaks={0: frozenset({2})})
        assert mean_clause == pytest.approx(2.0)


class TestComputeFeatures:
    def test_full_vector_defined(self):
        source = doc("Alpha beta gamma delta. Epsilon zeta eta theta.")
        draft = doc("Alpha beta gamma. Delta epsilon zeta, eta theta iota.")
        lex = Lexicon("toy", {"alpha": 5.0, "beta": 4.0})
        fv = F.compute_features(draft, source=source, spoken_lexicon=lex, subtlex_lexicon=lex)
        assert fv.word_count == 12.0
        assert fv.rouge3_source is not None
        assert fv.sd_dependents_nsubj is None
        for name in ("ttr_all", "mtld_all", "lexical_density", "mean_sentence_length"):
            assert getattr(fv, name) is not None

    def test_sentence_view_pairwise_undefined(self):
        d = doc("First sentence here. Second sentence there.")
        view = F.sentence_view(d, 1)
        fv = F.compute_features(view)
        assert fv.adj_sent_similarity is None
        assert fv.word_count == 4.0


def uniform_weights(norms_value=(0.0, 1.0)) -> FacetWeights:
    facets_map = {
        "understandability": {
            "frequency_all": 0.25,
            "frequency_function": 0.25,
            "frequency_content_subtlex": 0.25,
            "frequency_all_subtlex": 0.25,
        },
        "consistency": {"rouge3_source": 1.0},
        "fluency": {
            "adj_sent_similarity": 1 / 3,
            "repeated_lemma_pronoun_ratio": 1 / 3,
            "adj_function_overlap": 1 / 3,
        },
        "diversity": {"ttr_all": 0.5, "mtld_all": 0.5},
        "conciseness": {
            "mean_sentence_length": -1 / 3,
            "mean_clause_length": -1 / 3,
            "word_count": -1 / 3,
        },
    }
    norms = {}
    for fws in facets_map.values():
        for name in fws:
            norms[name] = norms_value
    w = FacetWeights(version="test", scale=Scale(), facets=facets_map, norms=norms)
    w.validate()
    return w


def z_vector(**values) -> FeatureVector:
    return FeatureVector(**values)


class TestFacets:
    def test_all_zero_z_gives_midpoint(self):
        w = uniform_weights()
        fv = z_vector(
            frequency_all=0.0,
            frequency_function=0.0,
            frequency_content_subtlex=0.0,
            frequency_all_subtlex=0.0,
            rouge3_source=0.0,
            adj_sent_similarity=0.0,
            repeated_lemma_pronoun_ratio=0.0,
            adj_function_overlap=0.0,
            ttr_all=0.0,
            mtld_all=0.0,
            mean_sentence_length=0.0,
            mean_clause_length=0.0,
            word_count=0.0,
        )
        report = facets(fv, w)
        assert all(report.scores[f] == 4.0 for f in FACET_ORDER)
        assert report.overall == 4.0

    def test_hand_computed_spreadsheet(self):
        w = uniform_weights()
        fv = z_vector(
            frequency_all=1.0,
            frequency_function=-1.0,
            frequency_content_subtlex=2.0,
            frequency_all_subtlex=0.0,
            rouge3_source=1.0,
            adj_sent_similarity=0.6,
            repeated_lemma_pronoun_ratio=0.3,
            adj_function_overlap=-0.9,
            ttr_all=2.0,
            mtld_all=-1.0,
            mean_sentence_length=1.0,
            mean_clause_length=1.0,
            word_count=4.0,
        )
        report = facets(fv, w)
        assert report.scores["understandability"] == pytest.approx(4 + 1.5 * 0.25 * 2.0)
        assert report.scores["consistency"] == pytest.approx(5.5)
        assert report.scores["fluency"] == pytest.approx(4 + 1.5 * (0.6 + 0.3 - 0.9) / 3)
        assert report.scores["diversity"] == pytest.approx(4 + 1.5 * 0.5)
        assert report.scores["conciseness"] == pytest.approx(4 - 1.5 * 2.0)  # clipped at 1.0
        assert report.scores["conciseness"] == 1.0
        expected_overall = sum(report.scores[f] for f in FACET_ORDER) / 5
        assert report.overall == expected_overall

    def test_overall_is_exact_mean(self):
        w = uniform_weights()
        fv = z_vector(rouge3_source=0.7, ttr_all=0.2, mtld_all=0.1)
        report = facets(fv, w)
        defined = [report.scores[f] for f in FACET_ORDER if report.scores[f] is not None]
        assert abs(report.overall - sum(defined) / len(defined)) < 1e-12

    def test_undefined_features_renormalize(self):
        w = uniform_weights()
        # only one of the two diversity features defined: weight scales to 1.0
        fv = z_vector(ttr_all=1.0)
        report = facets(fv, w)
        assert report.scores["diversity"] == pytest.approx(4 + 1.5 * 1.0)
        assert any(f.startswith("facet_renormalized:diversity") for f in report.flags)

    def test_fully_undefined_facet_flagged(self):
        w = uniform_weights()
        fv = z_vector(ttr_all=1.0)
        report = facets(fv, w)
        assert report.scores["consistency"] is None
        assert "facet_undefined:consistency" in report.flags
        defined = [s for s in report.scores.values() if s is not None]
        assert report.overall == pytest.approx(sum(defined) / len(defined))

    def test_monotone_in_positive_feature(self):
        w = uniform_weights()
        low = facets(z_vector(ttr_all=0.5, mtld_all=0.0), w).scores["diversity"]
        high = facets(z_vector(ttr_all=1.0, mtld_all=0.0), w).scores["diversity"]
        assert high > low

    def test_feature_reordering_invariant(self):
        base = uniform_weights()
        reordered = FacetWeights(
            version="test",
            scale=Scale(),
            facets={
                f: dict(reversed(list(ws.items()))) for f, ws in base.facets.items()
            },
            norms=base.norms,
        )
        fv = z_vector(
            frequency_all=0.3,
            frequency_function=1.1,
            frequency_content_subtlex=-0.4,
            frequency_all_subtlex=0.9,
            rouge3_source=0.2,
            ttr_all=0.5,
            mtld_all=-0.25,
            mean_sentence_length=0.75,
            mean_clause_length=-0.5,
            word_count=0.1,
            adj_sent_similarity=0.0,
            repeated_lemma_pronoun_ratio=0.0,
            adj_function_overlap=0.0,
        )
        a = facets(fv, base)
        b = facets(fv, reordered)
        assert a.scores == b.scores

    def test_default_weights_load_and_validate(self):
        w = facets_mod.default_weights()
        assert w.version
        assert set(w.facets) == set(FACET_ORDER)

    def test_parse_weights_rejects_unknown_feature(self):
        from draftcoach.errors import FormatError

        payload = {
            "schema": 1,
            "version": "x",
            "facets": {
                "understandability": {"nope": 1.0},
                "consistency": {"rouge3_source": 1.0},
                "fluency": {"adj_sent_similarity": 1.0},
                "diversity": {"ttr_all": 1.0},
                "conciseness": {"word_count": -1.0},
            },
            "norms": {},
        }
        with pytest.raises(FormatError):
            parse_weights(payload)

    def test_zscore_normalization(self):
        w = FacetWeights(
            version="t",
            scale=Scale(),
            facets={
                "understandability": {"frequency_all": 1.0},
                "consistency": {"rouge3_source": 1.0},
                "fluency": {"adj_sent_similarity": 1.0},
                "diversity": {"ttr_all": 1.0},
                "conciseness": {"word_count": -1.0},
            },
            norms={
                "frequency_all": (10.0, 2.0),
                "rouge3_source": (0.0, 1.0),
                "adj_sent_similarity": (0.0, 1.0),
                "ttr_all": (0.0, 1.0),
                "word_count": (100.0, 50.0),
            },
        )
        fv = z_vector(frequency_all=14.0, word_count=200.0)
        report = facets(fv, w)
        assert report.scores["understandability"] == pytest.approx(4 + 1.5 * 2.0)
        assert report.scores["conciseness"] == pytest.approx(4 - 1.5 * 2.0)
