"""HTTP service exposing the pipeline under /v1.

Stateless request handling over the project store; every error body carries
``{code, message, field?}``. The frontend is served as static assets when a
UI directory is present.
"""

from __future__ import annotations

from importlib import resources as _importlib_resources
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .errors import (
    AnalysisUnavailable,
    DraftcoachError,
    EmptyInput,
    FormatError,
    InvalidK,
    NotFound,
    UnknownRelation,
)
from .session import ProjectStore
from .textcore import build_document

_STATUS_BY_ERROR = {
    NotFound: 404,
    InvalidK: 422,
    EmptyInput: 422,
    FormatError: 422,
    UnknownRelation: 422,
    AnalysisUnavailable: 409,
}


class InvalidScope(DraftcoachError):
    code = "invalid_scope"

    def __init__(self, scope: str):
        super().__init__(
            f"scope must be `full` or `paragraph_<i>`, got {scope!r}", field="scope"
        )


class ProjectIn(BaseModel):
    source_text: str
    reference_abstract: Optional[str] = None


class DraftIn(BaseModel):
    text: str


class PromptIn(BaseModel):
    target_count: Optional[int] = None


def strategies_text() -> str:
    return (_importlib_resources.files("draftcoach") / "resources" / "strategies_tips.txt").read_text(
        encoding="utf-8"
    )


def create_app(store: ProjectStore, ui_dir: Optional[str | Path] = None) -> FastAPI:
    if store.engine is None:
        raise ValueError("the service needs a store with an analysis engine attached")
    app = FastAPI(title="draftcoach", version="1")
    engine = store.engine

    @app.exception_handler(DraftcoachError)
    async def _domain_error(_req: Request, exc: DraftcoachError):
        status = 422
        for cls, code in _STATUS_BY_ERROR.items():
            if isinstance(exc, cls):
                status = code
                break
        body = {"code": exc.code, "message": exc.message}
        if exc.field:
            body["field"] = exc.field
        return JSONResponse(status_code=status, content=body)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(x) for x in first.get("loc", []) if x != "body")
        return JSONResponse(
            status_code=422,
            content={
                "code": "validation",
                "message": first.get("msg", "invalid request"),
                "field": loc or None,
            },
        )

    @app.post("/v1/projects")
    def create_project(body: ProjectIn):
        project = store.create_project(body.source_text, body.reference_abstract)
        return {"project_id": project.id}

    @app.get("/v1/projects/{project_id}")
    def get_project(project_id: str):
        project = store.get_project(project_id)
        return {
            "project_id": project.id,
            "created_at": project.created_at,
            "has_reference": project.reference_abstract is not None,
            "config": project.config,
            "source_sentences": [s.text for s in build_document(project.source_text).sentences],
        }

    @app.get("/v1/projects/{project_id}/rst")
    def get_rst(project_id: str, scope: str = "full"):
        project = store.get_project(project_id)
        doc = build_document(project.source_text)
        if scope == "full":
            paragraph = None
        elif scope.startswith("paragraph_"):
            try:
                paragraph = int(scope.split("_", 1)[1])
            except ValueError:
                raise InvalidScope(scope) from None
            if not 0 <= paragraph < len(doc.paragraphs):
                raise NotFound(f"paragraph {paragraph} does not exist")
        else:
            raise InvalidScope(scope)
        return engine.rst_payload(doc, paragraph=paragraph)

    @app.post("/v1/projects/{project_id}/drafts")
    def add_draft(project_id: str, body: DraftIn):
        record = store.add_draft(project_id, body.text)
        return record.to_dict()

    @app.post("/v1/projects/{project_id}/drafts/{draft_no}/analyze")
    def analyze(project_id: str, draft_no: int):
        record = store.analyze_draft(project_id, draft_no)
        return record.analysis

    @app.get("/v1/projects/{project_id}/history")
    def history(project_id: str):
        return store.history(project_id).to_dict()

    @app.get("/v1/projects/{project_id}/reference")
    def reference(project_id: str, k: Optional[int] = None):
        project = store.get_project(project_id)
        if not project.reference_abstract:
            raise NotFound(f"project {project_id!r} has no reference abstract")
        source = build_document(project.source_text)
        if k is None:
            k = min(engine.config.k_default, len(source.sentences))
        return engine.reference_payload(source, project.reference_abstract, k)

    @app.post("/v1/projects/{project_id}/prompt")
    def prompt(project_id: str, body: Optional[PromptIn] = None):
        project = store.get_project(project_id)
        source = build_document(project.source_text)
        target = body.target_count if body and body.target_count else None
        return engine.prompt_payload(source, target)

    @app.get("/v1/strategies")
    def strategies():
        return {"text": strategies_text()}

    ui_path = Path(ui_dir) if ui_dir else None
    if ui_path and ui_path.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_path), html=True), name="ui")

    return app
