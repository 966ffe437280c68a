"""HTTP configuration service: models, sessions, answers, derivation.

Wraps the session engine in a small JSON API for the browser configurator
and other clients.  Models are registered once and shared read-only;
sessions live in memory, are mutated under a per-session lock, and expire
after an idle period.  Domain conflicts come back as 409 with the clashing
refs so clients can explain consequences without re-implementing any rules.
"""

from __future__ import annotations

import sys
import threading
import time
import uuid
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .errors import (
    ArityViolationError,
    MandatoryExclusionError,
    NoSuchAnswerError,
    RefNotInModelError,
    UnknownAreaError,
    UnresolvedTagError,
    VarkitError,
)
from .io import parse_model
from .model import ValidationReport, validate_model
from .product import (
    derive_customized_product,
    export_graph_text,
    parse_product_model,
    write_product_model,
)
from .session import Configuration, new_session

DEFAULT_SESSION_TTL = 86400.0

MODEL_SUFFIX = ".vml.xml"


class SessionCreate(BaseModel):
    model_id: str
    area: str


class AnswerBody(BaseModel):
    variant: str
    values: list[str] = []


class _SessionRecord:
    def __init__(self, session_id: str, model_id: str, session):
        self.session_id = session_id
        self.model_id = model_id
        self.session = session
        self.lock = threading.Lock()
        self.created = datetime.now(timezone.utc)
        self.updated = self.created
        self.touched = time.monotonic()


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


def _finding_payload(f) -> dict:
    return {"code": f.code, "where": f.where, "message": f.message}


def _report_payload(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "errors": [_finding_payload(f) for f in report.errors],
        "warnings": [_finding_payload(f) for f in report.warnings],
    }


def _edge_payload(edge) -> dict:
    return {"from": edge.source, "to": edge.target, "label": edge.label}


def create_app(
    model_dir: str | None = None,
    session_ttl: float = DEFAULT_SESSION_TTL,
    ui_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="varkit configuration service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    models: dict[str, object] = {}
    sessions: dict[str, _SessionRecord] = {}
    registry_lock = threading.Lock()

    if model_dir:
        for path in sorted(Path(model_dir).glob(f"*{MODEL_SUFFIX}")):
            try:
                model = parse_model(path.read_bytes())
            except VarkitError as exc:
                print(f"skipping {path.name}: {exc}", file=sys.stderr)
                continue
            report = validate_model(model)
            if report.errors:
                print(f"skipping {path.name}: {len(report.errors)} validation errors", file=sys.stderr)
                continue
            models[path.name[: -len(MODEL_SUFFIX)]] = model

    @app.exception_handler(RequestValidationError)
    def _on_bad_body(request: Request, exc: RequestValidationError):
        return _error(400, "BAD_REQUEST", "malformed request body")

    def _get_record(session_id: str) -> tuple[_SessionRecord | None, JSONResponse | None]:
        with registry_lock:
            record = sessions.get(session_id)
            if record is None:
                return None, _error(404, "NOT_FOUND", f"no session {session_id!r}")
            if time.monotonic() - record.touched > session_ttl:
                del sessions[session_id]
                return None, _error(410, "SESSION_EXPIRED", f"session {session_id!r} has expired")
            record.touched = time.monotonic()
            return record, None

    def _state_payload(record: _SessionRecord) -> dict:
        s = record.session
        result = s.current_configuration()
        complete = isinstance(result, Configuration)
        rows = [
            {
                "trace": row.trace,
                "name": row.name,
                "question": row.question,
                "relation": row.relation.value,
                "guard": list(row.guard),
                "options": [{"id": value_id, "name": name} for value_id, name in row.options],
                "mandatory": s.model.variant(row.trace).mandatory,
            }
            for row in s.decision_table.rows
        ]
        pending = []
        for p in s.pending_decisions():
            row = p.row
            unmet = []
            for ref in p.unmet_guard:
                hit = s.model.value(ref)
                unmet.append({"ref": ref, "name": hit[1].name if hit else ref})
            pending.append({
                "trace": row.trace,
                "name": row.name,
                "question": row.question,
                "relation": row.relation.value,
                "guard": list(row.guard),
                "options": [{"id": value_id, "name": name} for value_id, name in row.options],
                "blocked": p.blocked,
                "unmet_guard": unmet,
            })
        return {
            "session_id": record.session_id,
            "model_id": record.model_id,
            "area": s.area,
            "variants": {vid: state.value for vid, state in s.variant_states.items()},
            "values": {ref: state.value for ref, state in s.value_states.items()},
            "rows": rows,
            "pending": pending,
            "complete": complete,
            "undecided": [] if complete else list(result.undecided),
            "answered": [{"variant": e.variant, "values": list(e.values)} for e in s.log],
            "created": record.created.isoformat(),
            "updated": record.updated.isoformat(),
        }

    @app.post("/models", status_code=201)
    async def upload_model(request: Request):
        body = await request.body()
        try:
            model = parse_model(body)
        except VarkitError as exc:
            return _error(400, exc.code, str(exc))
        report = validate_model(model)
        if report.errors:
            return JSONResponse(status_code=422, content=_report_payload(report))
        model_id = uuid.uuid4().hex[:12]
        with registry_lock:
            models[model_id] = model
        return {
            "model_id": model_id,
            "name": model.name,
            "areas": list(model.areas),
            "warnings": [_finding_payload(f) for f in report.warnings],
        }

    @app.get("/models")
    def list_models():
        with registry_lock:
            items = [
                {"model_id": model_id, "name": m.name, "areas": list(m.areas)}
                for model_id, m in models.items()
            ]
        return {"models": items}

    @app.get("/models/{model_id}/areas")
    def model_areas(model_id: str):
        model = models.get(model_id)
        if model is None:
            return _error(404, "NOT_FOUND", f"no model {model_id!r}")
        return {"areas": list(model.areas)}

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionCreate):
        model = models.get(body.model_id)
        if model is None:
            return _error(404, "NOT_FOUND", f"no model {body.model_id!r}")
        try:
            session = new_session(model, body.area)
        except UnknownAreaError as exc:
            return _error(400, exc.code, str(exc))
        record = _SessionRecord(uuid.uuid4().hex, body.model_id, session)
        with registry_lock:
            sessions[record.session_id] = record
        return _state_payload(record)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        record, err = _get_record(session_id)
        if err:
            return err
        with record.lock:
            return _state_payload(record)

    @app.post("/sessions/{session_id}/answers")
    def post_answer(session_id: str, body: AnswerBody):
        record, err = _get_record(session_id)
        if err:
            return err
        with record.lock:
            try:
                outcome = record.session.answer(body.variant, body.values)
            except RefNotInModelError as exc:
                return _error(404, exc.code, str(exc))
            except (ArityViolationError, MandatoryExclusionError) as exc:
                return JSONResponse(
                    status_code=409,
                    content={"conflicts": [{"ref": exc.where or body.variant, "reason": str(exc)}]},
                )
            if outcome.rejected:
                return JSONResponse(
                    status_code=409,
                    content={"conflicts": [{"ref": c.ref, "reason": c.reason} for c in outcome.conflicts]},
                )
            record.updated = datetime.now(timezone.utc)
            return {
                "forced": list(outcome.forced),
                "excluded": list(outcome.excluded),
                "released": list(outcome.released),
                **_state_payload(record),
            }

    @app.delete("/sessions/{session_id}/answers/{variant_id}")
    def retract_answer(session_id: str, variant_id: str):
        record, err = _get_record(session_id)
        if err:
            return err
        with record.lock:
            try:
                outcome = record.session.retract(variant_id)
            except NoSuchAnswerError as exc:
                return _error(404, exc.code, str(exc))
            record.updated = datetime.now(timezone.utc)
            return {
                "forced": list(outcome.forced),
                "excluded": list(outcome.excluded),
                "released": list(outcome.released),
                **_state_payload(record),
            }

    @app.get("/sessions/{session_id}/configuration")
    def get_configuration(session_id: str):
        record, err = _get_record(session_id)
        if err:
            return err
        with record.lock:
            result = record.session.current_configuration()
        if isinstance(result, Configuration):
            return {
                "area": result.area,
                "selections": {vid: list(values) for vid, values in result.selections},
            }
        return JSONResponse(status_code=409, content={"undecided": list(result.undecided)})

    @app.post("/sessions/{session_id}/product")
    async def derive_product(session_id: str, request: Request):
        record, err = _get_record(session_id)
        if err:
            return err
        try:
            product = parse_product_model(await request.body())
        except VarkitError as exc:
            return _error(400, exc.code, str(exc))
        force = request.query_params.get("force") in ("1", "true")
        # tags resolve against the full family model, not the pruned scope
        full_model = models.get(record.model_id)
        with record.lock:
            result = record.session.current_configuration()
            if not isinstance(result, Configuration):
                return JSONResponse(status_code=409, content={"undecided": list(result.undecided)})
            try:
                derived, report = derive_customized_product(product, result, full_model, force=force)
            except UnresolvedTagError as exc:
                return _error(400, exc.code, str(exc))
        return {
            "product_xml": write_product_model(derived).decode("utf-8"),
            "product_text": export_graph_text(derived),
            "kept_elements": [el.id for el in derived.elements],
            "removed_elements": list(report.removed_elements),
            "removed_edges": [_edge_payload(e) for e in report.removed_edges],
            "dangling_edges": [_edge_payload(e) for e in report.dangling],
            "warnings": [_finding_payload(f) for f in report.warnings],
        }

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def run_service(
    host: str = "127.0.0.1",
    port: int = 8000,
    model_dir: str | None = None,
    ui_dir: str | None = None,
    session_ttl: float | None = None,
) -> None:
    import os

    import uvicorn

    if session_ttl is None:
        session_ttl = float(os.environ.get("VARKIT_SESSION_TTL", str(DEFAULT_SESSION_TTL)))
    app = create_app(model_dir=model_dir, session_ttl=session_ttl, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
