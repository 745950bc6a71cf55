"""Session-oriented HTTP service exposing the solution pipeline.

Sessions live in memory with a sliding TTL. Mutations to one session are
serialized behind a per-session lock; the solver itself is pure, so
concurrent reads of distinct sessions never interfere. All math is done
server-side: clients only ever see finished documents.
"""

from __future__ import annotations

import copy
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Any

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.responses import JSONResponse

from . import documents, relations, solver
from .documents import Diagnostic

DEFAULT_SESSION_TTL = 24 * 3600.0


@dataclass
class Session:
    id: str
    deadline: float
    draft: dict | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory session table with sliding expiry."""

    def __init__(self, ttl: float = DEFAULT_SESSION_TTL):
        self._ttl = ttl
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def _sweep(self, now: float) -> None:
        expired = [sid for sid, s in self._sessions.items() if s.deadline <= now]
        for sid in expired:
            del self._sessions[sid]

    def create(self) -> Session:
        now = time.monotonic()
        with self._lock:
            self._sweep(now)
            session = Session(id=uuid.uuid4().hex, deadline=now + self._ttl)
            self._sessions[session.id] = session
            return session

    def get(self, sid: str) -> Session:
        now = time.monotonic()
        with self._lock:
            self._sweep(now)
            session = self._sessions.get(sid)
            if session is None:
                raise HTTPException(status_code=404, detail=f"unknown session {sid}")
            session.deadline = now + self._ttl
            return session


def _diagnostic_payload(diagnostics: list[Diagnostic]) -> list[dict]:
    return [
        {"pointer": d.pointer, "rule": d.rule, "message": d.message}
        for d in diagnostics
    ]


def _schema_response(diagnostics: list[Diagnostic]) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={
            "detail": "document violates the problem schema",
            "violations": _diagnostic_payload(diagnostics),
        },
    )


def _completeness(draft: dict | None) -> tuple[bool, list[dict]]:
    """Whether the draft is solvable, plus diagnostics for what is missing."""
    if draft is None:
        return False, [
            {"pointer": "/", "rule": "missing", "message": "no problem draft yet"}
        ]
    gaps = documents.missing_pairs(draft)
    diagnostics = [
        {
            "pointer": "/comparisons",
            "rule": "missing",
            "message": f"missing comparison ({k},{k + 1})",
        }
        for k in gaps
    ]
    return not gaps, diagnostics


def _solvable_draft(session: Session) -> dict:
    if session.draft is None:
        raise HTTPException(status_code=409, detail="session has no problem draft")
    gaps = documents.missing_pairs(session.draft)
    if gaps:
        raise HTTPException(
            status_code=409,
            detail="judgment chain incomplete: missing "
            + ", ".join(f"({k},{k + 1})" for k in gaps),
        )
    return session.draft


def create_app(
    session_ttl: float = DEFAULT_SESSION_TTL, static_dir: str | None = None
) -> FastAPI:
    app = FastAPI(title="dcfpr", version="0.1.0")
    store = SessionStore(ttl=session_ttl)

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/api/sessions", status_code=201)
    def create_session() -> dict:
        return {"id": store.create().id}

    @app.put("/api/sessions/{sid}/problem")
    def put_problem(sid: str, payload: Any = Body(...)):
        session = store.get(sid)
        diagnostics = documents.validate_problem_document(payload, partial=True)
        if diagnostics:
            return _schema_response(diagnostics)
        with session.lock:
            session.draft = copy.deepcopy(payload)
            solvable, gaps = _completeness(session.draft)
        return {"diagnostics": gaps, "solvable": solvable}

    @app.get("/api/sessions/{sid}/problem")
    def get_problem(sid: str):
        session = store.get(sid)
        if session.draft is None:
            raise HTTPException(status_code=409, detail="session has no problem draft")
        return session.draft

    @app.patch("/api/sessions/{sid}/comparisons/{k}")
    def patch_comparison(sid: str, k: int, payload: Any = Body(...)):
        session = store.get(sid)
        if not isinstance(payload, dict):
            return _schema_response(
                [Diagnostic("/", "type", "body must be an object with components")]
            )
        check: list[Diagnostic] = []
        documents.check_components(payload.get("components"), "/components", check)
        if check:
            return _schema_response(check)
        with session.lock:
            if session.draft is None:
                raise HTTPException(
                    status_code=409, detail="session has no problem draft"
                )
            draft = copy.deepcopy(session.draft)
            n = len(draft.get("alternatives", []))
            if not 1 <= k <= n - 1:
                raise HTTPException(
                    status_code=404,
                    detail=f"no comparison slot {k}; the chain runs 1..{n - 1}",
                )
            replacement = {
                "left": k,
                "right": k + 1,
                "components": copy.deepcopy(payload["components"]),
            }
            comparisons = [
                item for item in draft.get("comparisons", []) if item.get("left") != k
            ]
            comparisons.append(replacement)
            comparisons.sort(key=lambda item: item["left"])
            draft["comparisons"] = comparisons
            session.draft = draft
            solvable, gaps = _completeness(draft)
        return {"solvable": solvable, "diagnostics": gaps}

    @app.get("/api/sessions/{sid}/matrix")
    def get_matrix(sid: str):
        session = store.get(sid)
        draft = _solvable_draft(session)
        problem = documents.problem_from_document(draft)
        matrix = relations.build_dcfpr(problem)
        return documents.matrix_document(matrix, problem.alternatives)

    @app.get("/api/sessions/{sid}/solution")
    def get_solution(
        sid: str,
        lam: float | None = Query(default=None, alias="lambda"),
        credibility: str | None = Query(default=None),
    ):
        session = store.get(sid)
        if lam is not None and credibility is not None:
            raise HTTPException(
                status_code=400, detail="pass either lambda or credibility, not both"
            )
        if lam is not None and not lam > 0:
            raise HTTPException(
                status_code=400, detail=f"lambda must be positive, got {lam}"
            )
        if credibility is not None and credibility not in solver.PRESET_LAMBDAS:
            raise HTTPException(
                status_code=400,
                detail=f"unknown credibility {credibility!r}; "
                f"expected one of {sorted(solver.PRESET_LAMBDAS)}",
            )
        draft = _solvable_draft(session)
        problem = documents.problem_from_document(draft)
        matrix = relations.build_dcfpr(problem)
        if lam is not None:
            requested: str | float = lam
            name = None
        else:
            name = credibility or "medium"
            requested = name
        try:
            bundle = solver.solve(
                matrix, requested, alternatives=problem.alternatives
            )
        except solver.LambdaTooSmall as exc:
            return JSONResponse(
                status_code=422,
                content={
                    "detail": str(exc),
                    "lambda_min": documents.format_real(exc.lambda_min),
                },
            )
        return documents.solution_document(bundle, credibility=name)

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
