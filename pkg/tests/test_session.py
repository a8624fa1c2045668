import json
import random

import pytest

from draftcoach import session as S
from draftcoach.errors import AnalysisUnavailable, EmptyInput, NotFound
from draftcoach.pipeline import AnalysisEngine

SOURCE = (
    "Writing a clear abstract is hard for newcomers. Many copy sentences from the "
    "introduction instead of condensing ideas.\n\nWe built a feedback loop that scores "
    "drafts on several facets. The loop highlights weak sentences and missing moves."
)
DRAFT = (
    "Newcomers struggle to write clear abstracts. We built a scoring loop for drafts. "
    "The loop points at weak sentences. Scores improved across revisions."
)


@pytest.fixture()
def engine() -> AnalysisEngine:
    return AnalysisEngine.default()


@pytest.fixture()
def store(tmp_path, engine) -> S.ProjectStore:
    return S.ProjectStore(tmp_path / "data", engine=engine)


class TestProjects:
    def test_create_and_get(self, store):
        p = store.create_project(SOURCE, reference_abstract="A tiny reference.")
        loaded = store.get_project(p.id)
        assert loaded.source_text == SOURCE
        assert loaded.reference_abstract == "A tiny reference."
        assert loaded.config["weights_version"]

    def test_distinct_ids(self, store):
        a = store.create_project(SOURCE)
        b = store.create_project(SOURCE)
        assert a.id != b.id

    def test_empty_source(self, store):
        with pytest.raises(EmptyInput):
            store.create_project("   ")

    def test_unknown_project(self, store):
        with pytest.raises(NotFound):
            store.get_project("nope")


class TestDrafts:
    def test_draft_numbers_increment(self, store):
        p = store.create_project(SOURCE)
        assert store.add_draft(p.id, "One draft.").draft_no == 1
        assert store.add_draft(p.id, "Two drafts.").draft_no == 2
        assert store.add_draft(p.id, "Three drafts.").draft_no == 3

    def test_unknown_project_add(self, store):
        with pytest.raises(NotFound):
            store.add_draft("missing", "text")

    def test_get_draft_roundtrip(self, store):
        p = store.create_project(SOURCE)
        store.add_draft(p.id, DRAFT)
        rec = store.get_draft(p.id, 1)
        assert rec.text == DRAFT
        assert not rec.analyzed


class TestAnalyze:
    def test_analysis_fills_record_and_history(self, store):
        p = store.create_project(SOURCE)
        store.add_draft(p.id, DRAFT)
        rec = store.analyze_draft(p.id, 1)
        assert rec.analyzed
        assert rec.analysis["organization"]["labels"]
        hist = store.history(p.id)
        assert len(hist.rows) == 1
        assert hist.rows[0] == rec.analysis["organization"]["labels"]
        assert hist.series[0] == rec.analysis["overall"]

    def test_analyze_twice_identical_payload(self, store):
        p = store.create_project(SOURCE)
        store.add_draft(p.id, DRAFT)
        first = store.analyze_draft(p.id, 1).analysis
        second = store.analyze_draft(p.id, 1).analysis
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
        # re-analysis appends a second history event
        assert len(store.history(p.id).rows) == 2

    def test_missing_draft(self, store):
        p = store.create_project(SOURCE)
        with pytest.raises(NotFound):
            store.analyze_draft(p.id, 5)

    def test_engine_without_genre_model(self, tmp_path):
        engine = AnalysisEngine.default()
        engine.genre_model = None
        store = S.ProjectStore(tmp_path / "d2", engine=engine)
        p = store.create_project(SOURCE)
        store.add_draft(p.id, DRAFT)
        with pytest.raises(AnalysisUnavailable) as err:
            store.analyze_draft(p.id, 1)
        assert "genre model" in str(err.value)

    def test_no_engine(self, tmp_path):
        store = S.ProjectStore(tmp_path / "d3", engine=None)
        p = store.create_project(SOURCE)
        store.add_draft(p.id, DRAFT)
        with pytest.raises(AnalysisUnavailable):
            store.analyze_draft(p.id, 1)


class TestHistory:
    def test_empty_history(self, store):
        p = store.create_project(SOURCE)
        hist = store.history(p.id)
        assert hist.rows == [] and hist.series == []

    def test_three_analyses_in_order(self, store):
        p = store.create_project(SOURCE)
        for i in range(3):
            store.add_draft(p.id, DRAFT + f" Extra revision number {i} adds words.")
            store.analyze_draft(p.id, i + 1)
        hist = store.history(p.id)
        assert len(hist.rows) == 3
        assert [e["draft_no"] for e in hist.entries] == [1, 2, 3]

    def test_rows_equal_stored_schemes(self, store):
        p = store.create_project(SOURCE)
        store.add_draft(p.id, DRAFT)
        store.analyze_draft(p.id, 1)
        hist = store.history(p.id)
        stored = store.get_draft(p.id, 1).analysis["organization"]["labels"]
        assert hist.rows == [stored]


class FaultInjector:
    """Wraps session._write_text; raises at a chosen write call and stage."""

    def __init__(self, real, fail_at_call: int, stage: str):
        self.real = real
        self.calls = 0
        self.fail_at_call = fail_at_call
        self.stage = stage  # "before_tmp" | "mid_write" | "before_replace"

    def __call__(self, path, text):
        self.calls += 1
        if self.calls == self.fail_at_call:
            if self.stage == "before_tmp":
                raise OSError("injected: crash before any bytes written")
            if self.stage == "mid_write":
                tmp = path.with_name(path.name + ".tmp")
                tmp.write_text(text[: max(1, len(text) // 2)], encoding="utf-8")
                raise OSError("injected: crash mid temp write")
            tmp = path.with_name(path.name + ".tmp")
            tmp.write_text(text, encoding="utf-8")
            raise OSError("injected: crash before rename")
        return self.real(path, text)


def snapshot(store: S.ProjectStore, pid: str) -> tuple:
    hist = store.history(pid)
    drafts = [(r.draft_no, r.text, r.analyzed) for r in store.drafts(pid)]
    return (json.dumps(hist.to_dict(), sort_keys=True), drafts)


class TestCrashSafety:
    def test_randomized_interruptions_reload_committed_state(self, tmp_path, engine, monkeypatch):
        rng = random.Random(99)
        root = tmp_path / "crash"
        store = S.ProjectStore(root, engine=engine)
        p = store.create_project(SOURCE)
        store.add_draft(p.id, DRAFT)
        store.analyze_draft(p.id, 1)
        committed = snapshot(store, p.id)

        real = S._write_text
        stages = ["before_tmp", "mid_write", "before_replace"]
        for trial in range(30):
            stage = stages[trial % 3]
            fail_at = rng.randrange(1, 3)
            injector = FaultInjector(real, fail_at, stage)
            monkeypatch.setattr(S, "_write_text", injector)
            op = trial % 2
            try:
                if op == 0:
                    store.analyze_draft(p.id, 1)
                else:
                    store.add_draft(p.id, "Interrupted draft write attempt.")
            except OSError:
                pass
            monkeypatch.setattr(S, "_write_text", real)

            reloaded = S.ProjectStore(root, engine=engine)
            snap = snapshot(reloaded, p.id)
            if snap != committed:
                # the operation fully committed before the injection point
                committed = snap
            # every stored json must parse (no torn files)
            for f in (root / "projects" / p.id).rglob("*.json"):
                json.loads(f.read_text(encoding="utf-8"))

    def test_orphan_analysis_is_ignored(self, tmp_path, engine, monkeypatch):
        root = tmp_path / "orphan"
        store = S.ProjectStore(root, engine=engine)
        p = store.create_project(SOURCE)
        store.add_draft(p.id, DRAFT)

        real = S._write_text
        calls = {"n": 0}

        def fail_history(path, text):
            calls["n"] += 1
            real(path, text)
            if path.name == "history.json":
                raise AssertionError("history write should not be reached")
            if path.name == "1.json":
                raise OSError("injected: crash after analysis write, before history")

        monkeypatch.setattr(S, "_write_text", fail_history)
        with pytest.raises(OSError):
            store.analyze_draft(p.id, 1)
        monkeypatch.setattr(S, "_write_text", real)

        reloaded = S.ProjectStore(root, engine=engine)
        rec = reloaded.get_draft(p.id, 1)
        assert not rec.analyzed  # orphaned analyses/1.json is not committed state
        assert reloaded.history(p.id).rows == []
