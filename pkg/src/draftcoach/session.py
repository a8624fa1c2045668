"""Project persistence: one directory per project, schema-versioned JSON and
plain-text files, write-temp-then-rename discipline throughout.

The history file is the commit point for an analysis: an interrupted
analyze leaves at most an orphaned analysis file that the loader ignores, so
any reload sees the last fully committed state. Writers take a per-project
file lock; readers never lock (renames are atomic).
"""

from __future__ import annotations

import json
import os
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from filelock import FileLock

from .errors import AnalysisUnavailable, EmptyInput, FormatError, NotFound
from .pipeline import AnalysisEngine
from .textcore import build_document

STORE_SCHEMA = 1


def _write_text(path: Path, text: str) -> None:
    """Atomic replace: write a sibling temp file, fsync, rename over target."""
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _write_json(path: Path, payload: dict) -> None:
    _write_text(path, json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))


def _read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class Project:
    id: str
    created_at: str
    source_text: str
    reference_abstract: Optional[str]
    config: dict = field(default_factory=dict)


@dataclass(frozen=True)
class DraftRecord:
    draft_no: int
    text: str
    analysis: Optional[dict] = None
    analyzed_at: Optional[str] = None

    @property
    def analyzed(self) -> bool:
        return self.analysis is not None

    def to_dict(self) -> dict:
        return {
            "draft_no": self.draft_no,
            "text": self.text,
            "analyzed": self.analyzed,
            "analyzed_at": self.analyzed_at,
        }


@dataclass(frozen=True)
class History:
    rows: list[list[str]]  # one organization scheme per analysis event, oldest first
    series: list[Optional[float]]  # overall score per analysis event
    entries: list[dict]

    def to_dict(self) -> dict:
        return {"rows": self.rows, "series": self.series, "entries": self.entries}


class ProjectStore:
    def __init__(self, root: str | Path, engine: Optional[AnalysisEngine] = None):
        self.root = Path(root)
        self.engine = engine
        (self.root / "projects").mkdir(parents=True, exist_ok=True)

    # -- paths ---------------------------------------------------------------

    def _pdir(self, project_id: str) -> Path:
        return self.root / "projects" / project_id

    def _lock(self, project_id: str) -> FileLock:
        return FileLock(str(self._pdir(project_id) / ".lock"))

    def _require(self, project_id: str) -> Path:
        pdir = self._pdir(project_id)
        if not (pdir / "project.json").exists():
            raise NotFound(f"project {project_id!r} does not exist")
        return pdir

    # -- projects --------------------------------------------------------------

    def create_project(
        self, source_text: str, reference_abstract: Optional[str] = None
    ) -> Project:
        if not source_text or not source_text.strip():
            raise EmptyInput("source text is empty")
        build_document(source_text)  # validates early: must contain sentences
        project_id = uuid.uuid4().hex[:12]
        while self._pdir(project_id).exists():
            project_id = uuid.uuid4().hex[:12]
        pdir = self._pdir(project_id)
        (pdir / "drafts").mkdir(parents=True)
        (pdir / "analyses").mkdir()
        config = self.engine.config_snapshot() if self.engine else {}
        project = Project(
            id=project_id,
            created_at=_now(),
            source_text=source_text,
            reference_abstract=reference_abstract,
            config=config,
        )
        _write_json(
            pdir / "project.json",
            {
                "schema": STORE_SCHEMA,
                "id": project.id,
                "created_at": project.created_at,
                "source_text": project.source_text,
                "reference_abstract": project.reference_abstract,
                "config": project.config,
            },
        )
        return project

    def get_project(self, project_id: str) -> Project:
        pdir = self._require(project_id)
        payload = _read_json(pdir / "project.json")
        if payload.get("schema") != STORE_SCHEMA:
            raise FormatError(f"unsupported project schema {payload.get('schema')!r}")
        return Project(
            id=payload["id"],
            created_at=payload["created_at"],
            source_text=payload["source_text"],
            reference_abstract=payload.get("reference_abstract"),
            config=payload.get("config", {}),
        )

    def list_projects(self) -> list[str]:
        base = self.root / "projects"
        return sorted(p.name for p in base.iterdir() if (p / "project.json").exists())

    # -- drafts ---------------------------------------------------------------

    def _draft_numbers(self, pdir: Path) -> list[int]:
        out = []
        for p in (pdir / "drafts").glob("*.txt"):
            try:
                out.append(int(p.stem))
            except ValueError:
                continue
        return sorted(out)

    def add_draft(self, project_id: str, text: str) -> DraftRecord:
        pdir = self._require(project_id)
        with self._lock(project_id):
            numbers = self._draft_numbers(pdir)
            draft_no = (numbers[-1] + 1) if numbers else 1
            _write_text(pdir / "drafts" / f"{draft_no}.txt", text)
        return DraftRecord(draft_no=draft_no, text=text)

    def _history_entries(self, pdir: Path) -> list[dict]:
        path = pdir / "history.json"
        if not path.exists():
            return []
        payload = _read_json(path)
        return payload.get("entries", [])

    def get_draft(self, project_id: str, draft_no: int) -> DraftRecord:
        pdir = self._require(project_id)
        path = pdir / "drafts" / f"{draft_no}.txt"
        if not path.exists():
            raise NotFound(f"draft {draft_no} does not exist in project {project_id!r}")
        text = path.read_text(encoding="utf-8")
        analysis = None
        analyzed_at = None
        entries = [e for e in self._history_entries(pdir) if e["draft_no"] == draft_no]
        if entries:
            analysis_path = pdir / "analyses" / f"{draft_no}.json"
            if analysis_path.exists():
                analysis = _read_json(analysis_path)
                analyzed_at = entries[-1]["analyzed_at"]
        return DraftRecord(draft_no=draft_no, text=text, analysis=analysis, analyzed_at=analyzed_at)

    def drafts(self, project_id: str) -> list[DraftRecord]:
        pdir = self._require(project_id)
        return [self.get_draft(project_id, n) for n in self._draft_numbers(pdir)]

    # -- analysis ----------------------------------------------------------------

    def analyze_draft(self, project_id: str, draft_no: int) -> DraftRecord:
        """Run the engine on a stored draft and commit (analysis, history row).

        The history append is the commit point; a crash after the analysis
        write but before it leaves the draft un-analyzed on reload.
        """
        if self.engine is None:
            raise AnalysisUnavailable("store has no analysis engine attached")
        project = self.get_project(project_id)
        pdir = self._pdir(project_id)
        draft_path = pdir / "drafts" / f"{draft_no}.txt"
        if not draft_path.exists():
            raise NotFound(f"draft {draft_no} does not exist in project {project_id!r}")

        with self._lock(project_id):
            text = draft_path.read_text(encoding="utf-8")
            source = build_document(project.source_text)
            payload = self.engine.analyze(text, source)
            config_changed = project.config != self.engine.config_snapshot()
            if config_changed and "config_changed" not in payload["flags"]:
                payload = dict(payload)
                payload["flags"] = list(payload["flags"]) + ["config_changed"]

            _write_json(pdir / "analyses" / f"{draft_no}.json", payload)
            entries = self._history_entries(pdir)
            entries.append(
                {
                    "draft_no": draft_no,
                    "labels": payload["organization"]["labels"],
                    "overall": payload["overall"],
                    "analyzed_at": _now(),
                    "config_changed": config_changed,
                }
            )
            _write_json(pdir / "history.json", {"schema": STORE_SCHEMA, "entries": entries})
        return self.get_draft(project_id, draft_no)

    def history(self, project_id: str) -> History:
        pdir = self._require(project_id)
        entries = self._history_entries(pdir)
        return History(
            rows=[list(e["labels"]) for e in entries],
            series=[e["overall"] for e in entries],
            entries=entries,
        )
