"""HTTP/JSON service exposing alignment sessions to the web UI and scripts."""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .embeddings import EmbeddingProvider
from .model import render_table
from .ops import InvalidOp, op_from_json
from .search import DEFAULT_STEPS, SearchConfig
from .heuristic import Weights
from .session import (Busy, Session, SessionError, load_document, new_session)


class ApiError(Exception):
    def __init__(self, code: str, message: str, http_status: int):
        super().__init__(message)
        self.code = code
        self.message = message
        self.http_status = http_status


_STATUS_BY_CODE = {
    "Busy": 409,
    "NothingToUndo": 409,
    "NothingToRedo": 409,
}


def _to_api_error(exc: Exception) -> ApiError:
    if isinstance(exc, (SessionError, InvalidOp)):
        code = getattr(exc, "code", type(exc).__name__)
        return ApiError(code, str(exc), _STATUS_BY_CODE.get(code, 422))
    return ApiError("Internal", str(exc), 500)


class CreateSessionRequest(BaseModel):
    texts: list[str]
    weights: Optional[dict] = None
    search_cfg: Optional[dict] = None


class OpRequest(BaseModel):
    op: dict


class RealignRequest(BaseModel):
    steps: int = DEFAULT_STEPS
    # test hook: per-step sleep so searches are observable mid-flight
    step_delay_ms: float = 0.0


class LocksRequest(BaseModel):
    locked_columns: list[int]  # 1-based


class ConfigRequest(BaseModel):
    weights: Optional[dict] = None
    search_cfg: Optional[dict] = None


def snapshot(session: Session) -> dict:
    """Wire form of the session: grid, locks, score, status. 1-based indices."""
    score = session.score()
    done, limit = session.progress
    return {
        "id": session.id,
        "source_texts": list(session.alignment.source_texts),
        "rows": session.alignment.rows,
        "cols": session.alignment.cols,
        "grid": [[list(cell) for cell in row] for row in session.alignment.grid],
        "locked_columns": sorted(c + 1 for c in session.constraints.locked_columns),
        "score": score.to_json(),
        "status": session.status,
        "progress": {"done": done, "limit": limit},
        "changed_cells": sorted([r + 1, c + 1] for r, c in session.changed_cells),
        "can_undo": len(session.undo_stack) > 0,
        "can_redo": len(session.redo_stack) > 0,
        "weights": session.weights.to_json(),
        "search_cfg": session.search_cfg.to_json(),
    }


def create_app(provider: EmbeddingProvider,
               static_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="alignkit")
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse(status_code=exc.http_status,
                            content={"code": exc.code, "message": exc.message})

    def get_session(session_id: str) -> Session:
        with store_lock:
            session = sessions.get(session_id)
        if session is None:
            raise ApiError("UnknownSession", f"no session {session_id!r}", 404)
        return session

    def register(session: Session) -> Session:
        with store_lock:
            sessions[session.id] = session
        return session

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        try:
            weights = Weights.from_json(req.weights) if req.weights else Weights()
            cfg = (SearchConfig.from_json(req.search_cfg)
                   if req.search_cfg else SearchConfig())
            session = new_session(req.texts, provider, cfg, weights)
        except SessionError as exc:
            raise _to_api_error(exc)
        except (KeyError, TypeError, ValueError) as exc:
            raise ApiError("BadRequest", str(exc), 422)
        return snapshot(register(session))

    @app.get("/sessions/{session_id}")
    def get_snapshot(session_id: str):
        return snapshot(get_session(session_id))

    @app.post("/sessions/{session_id}/ops")
    def apply_op(session_id: str, req: OpRequest):
        session = get_session(session_id)
        try:
            session.apply_user_op(op_from_json(req.op))
        except (SessionError, InvalidOp) as exc:
            raise _to_api_error(exc)
        return snapshot(session)

    @app.post("/sessions/{session_id}/realign", status_code=202)
    def realign(session_id: str, req: RealignRequest):
        session = get_session(session_id)
        try:
            started = session.begin_realign(req.steps)
        except SessionError as exc:
            raise _to_api_error(exc)
        worker = threading.Thread(
            target=session.run_realign, args=started,
            kwargs={"step_delay": req.step_delay_ms / 1000.0}, daemon=True)
        worker.start()
        return snapshot(session)

    @app.post("/sessions/{session_id}/cancel")
    def cancel(session_id: str):
        session = get_session(session_id)
        session.cancel()
        return snapshot(session)

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = get_session(session_id)
        try:
            session.undo()
        except SessionError as exc:
            raise _to_api_error(exc)
        return snapshot(session)

    @app.post("/sessions/{session_id}/redo")
    def redo(session_id: str):
        session = get_session(session_id)
        try:
            session.redo()
        except SessionError as exc:
            raise _to_api_error(exc)
        return snapshot(session)

    @app.put("/sessions/{session_id}/locks")
    def set_locks(session_id: str, req: LocksRequest):
        session = get_session(session_id)
        current = {c + 1 for c in session.constraints.locked_columns}
        wanted = set(req.locked_columns)
        try:
            for col in sorted(current - wanted):
                session.set_lock(col - 1, False)
            for col in sorted(wanted - current):
                session.set_lock(col - 1, True)
        except SessionError as exc:
            raise _to_api_error(exc)
        return snapshot(session)

    @app.put("/sessions/{session_id}/config")
    def set_config(session_id: str, req: ConfigRequest):
        session = get_session(session_id)
        try:
            weights = Weights.from_json(req.weights) if req.weights else None
            cfg = (SearchConfig.from_json(req.search_cfg)
                   if req.search_cfg else None)
            session.set_config(weights, cfg)
        except SessionError as exc:
            raise _to_api_error(exc)
        except (KeyError, TypeError, ValueError) as exc:
            raise ApiError("BadConfig", str(exc), 422)
        return snapshot(session)

    @app.get("/sessions/{session_id}/score")
    def get_score(session_id: str):
        return get_session(session_id).score().to_json()

    @app.get("/sessions/{session_id}/export")
    def export(session_id: str, format: str = "json"):
        session = get_session(session_id)
        if format == "json":
            return session.save_document()
        if format in ("tsv", "html"):
            return PlainTextResponse(render_table(session.alignment, format))
        raise ApiError("BadFormat", f"unknown format {format!r}", 422)

    @app.post("/sessions/import", status_code=201)
    def import_session(doc: dict):
        try:
            session = load_document(doc, provider)
        except SessionError as exc:
            raise _to_api_error(exc)
        return snapshot(register(session))

    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
