"""HTTP/JSON façade over the archive: login, explore, search, admin CRUD.

Every error — auth, validation, malformed body, unknown route — uses one
envelope shape ``{"error": {"code": ..., "message": ...}}`` so clients
have a single failure path. Authentication is a Bearer token from
``POST /api/login``; mutations additionally require the Admin role.

``create_app`` is a plain factory over injected collaborators, so tests
can run against temporary stores and frozen clocks.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional
from urllib.parse import quote

from fastapi import Depends, FastAPI, File, Form, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from arsip.fuzzy import tokenize
from arsip.records import (
    ArchiveError,
    ConflictError,
    DocumentRecord,
    InvalidCategoryError,
    NotFoundError,
    StoreCorruptError,
    ValidationError,
)
from arsip.store import ArchiveStore
from arsip.users import SessionManager, UserAccount, UserStore


class ApiError(Exception):
    """An HTTP failure carrying the envelope fields."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


_STORE_ERROR_STATUS: dict[type, int] = {
    ValidationError: 400,
    InvalidCategoryError: 400,
    ConflictError: 409,
    NotFoundError: 404,
    StoreCorruptError: 500,
}

_HTTP_STATUS_CODES: dict[int, str] = {
    400: "bad_request",
    401: "unauthorized",
    403: "forbidden",
    404: "not_found",
    405: "method_not_allowed",
    409: "conflict",
    413: "payload_too_large",
    500: "internal_error",
}


def _envelope(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


class LoginRequest(BaseModel):
    username: str
    password: str


class DocumentUpdateRequest(BaseModel):
    perihal: str
    no_surat: str
    kategori: str
    deskripsi: str = ""


def record_json(record: DocumentRecord) -> dict:
    data = record.to_dict()
    del data["deleted"]  # API never serves tombstones, so the flag is noise
    return data


def create_app(
    store: ArchiveStore,
    users: UserStore,
    sessions: SessionManager,
    *,
    public_read: bool = False,
    static_dir: str | os.PathLike | None = None,
) -> FastAPI:
    app = FastAPI(docs_url=None, redoc_url=None, openapi_url=None)
    app.state.store = store
    app.state.users = users
    app.state.sessions = sessions
    app.state.public_read = public_read

    # --- auth helpers -------------------------------------------------

    def _session_user(request: Request) -> Optional[UserAccount]:
        """Account for the presented Bearer token, or None when absent.

        A token that is present but unknown/expired raises 401 even when
        public reads are enabled: a stale session must never look live.
        """
        header = request.headers.get("Authorization")
        if header is None:
            return None
        scheme, _, token = header.partition(" ")
        if scheme.lower() != "bearer" or not token.strip():
            raise ApiError(401, "unauthorized", "malformed Authorization header")
        user_id = sessions.resolve(token.strip())
        if user_id is None:
            raise ApiError(401, "unauthorized", "invalid or expired session")
        user = users.get_by_id(user_id)
        if user is None:
            raise ApiError(401, "unauthorized", "invalid or expired session")
        return user

    def require_reader(request: Request) -> Optional[UserAccount]:
        user = _session_user(request)
        if user is None and not public_read:
            raise ApiError(401, "unauthorized", "authentication required")
        return user

    def require_admin(request: Request) -> UserAccount:
        user = _session_user(request)
        if user is None:
            raise ApiError(401, "unauthorized", "authentication required")
        if user.role != "Admin":
            raise ApiError(403, "forbidden", "Admin role required")
        return user

    # --- error envelope -----------------------------------------------

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return _envelope(exc.status, exc.code, exc.message)

    @app.exception_handler(ArchiveError)
    async def handle_store_error(request: Request, exc: ArchiveError):
        status = 500
        for klass, mapped in _STORE_ERROR_STATUS.items():
            if isinstance(exc, klass):
                status = mapped
        return _envelope(status, exc.code, str(exc))

    @app.exception_handler(RequestValidationError)
    async def handle_malformed_body(request: Request, exc: RequestValidationError):
        return _envelope(400, "bad_request", "malformed request body or parameters")

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_error(request: Request, exc: StarletteHTTPException):
        code = _HTTP_STATUS_CODES.get(exc.status_code, "error")
        message = exc.detail if isinstance(exc.detail, str) else code.replace("_", " ")
        return _envelope(exc.status_code, code, message)

    # --- endpoints ------------------------------------------------------

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/login")
    def login(body: LoginRequest):
        user = users.authenticate(body.username, body.password)
        if user is None:
            # deliberately silent about which half failed
            raise ApiError(401, "unauthorized", "invalid credentials")
        session = sessions.issue(user.id)
        return {"token": session.token, "role": user.role}

    @app.get("/api/explore/{category}")
    def explore(
        category: str,
        offset: int = 0,
        limit: Optional[int] = None,
        user: Optional[UserAccount] = Depends(require_reader),
    ):
        records = store.list_by_category(category, offset=offset, limit=limit)
        total = store.count_by_category(category)
        return JSONResponse(
            content=[record_json(r) for r in records],
            headers={"X-Total-Count": str(total)},
        )

    @app.get("/api/search")
    def search(
        q: str = "",
        category: Optional[str] = None,
        user: Optional[UserAccount] = Depends(require_reader),
    ):
        hits = store.search(q, category=category)
        suggestions = []
        seen: set[str] = set()
        for token in tokenize(q):
            if token in seen or store.index.contains_token(token):
                continue
            seen.add(token)
            top = store.suggest(token, limit=1)
            if top:
                suggestions.append(
                    {
                        "token": token,
                        "candidate": top[0].candidate,
                        "distance": top[0].distance,
                        "frequency": top[0].frequency,
                    }
                )
        return {
            "hits": [
                {
                    "document_id": hit.document_id,
                    "score": hit.score,
                    "matched_terms": [
                        {
                            "query": term.query,
                            "matched": term.matched,
                            "distance": term.distance,
                        }
                        for term in hit.matched_terms
                    ],
                    "document": record_json(store.get_document(hit.document_id)),
                }
                for hit in hits
            ],
            "suggestions": suggestions,
        }

    @app.post("/api/documents", status_code=201)
    def create_document(
        perihal: str = Form(...),
        no_surat: str = Form(...),
        kategori: str = Form(...),
        deskripsi: str = Form(""),
        file: UploadFile = File(...),
        user: UserAccount = Depends(require_admin),
    ):
        payload = file.file.read()
        record = store.create_document(
            perihal=perihal,
            no_surat=no_surat,
            deskripsi=deskripsi,
            kategori=kategori,
            file_bytes=payload,
            file_name=file.filename or "unnamed",
            content_type=file.content_type or "application/octet-stream",
            actor=user.username,
        )
        return record_json(record)

    @app.get("/api/documents/{doc_id}")
    def get_document(
        doc_id: str, user: Optional[UserAccount] = Depends(require_reader)
    ):
        return record_json(store.get_document(doc_id))

    @app.put("/api/documents/{doc_id}")
    def update_document(
        doc_id: str,
        body: DocumentUpdateRequest,
        user: UserAccount = Depends(require_admin),
    ):
        record = store.update_document(
            doc_id,
            perihal=body.perihal,
            no_surat=body.no_surat,
            deskripsi=body.deskripsi,
            kategori=body.kategori,
            actor=user.username,
        )
        return record_json(record)

    @app.delete("/api/documents/{doc_id}")
    def delete_document(doc_id: str, user: UserAccount = Depends(require_admin)):
        store.delete_document(doc_id, actor=user.username)
        return {"deleted": doc_id}

    @app.get("/api/documents/{doc_id}/file")
    def get_file(doc_id: str, user: Optional[UserAccount] = Depends(require_reader)):
        record = store.get_document(doc_id)
        payload = store.read_blob(doc_id)
        return Response(
            content=payload,
            media_type=record.content_type,
            headers={
                # RFC 5987 form: survives non-ASCII file names in headers
                "Content-Disposition": f"inline; filename*=UTF-8''{quote(record.file_name, safe='')}"
            },
        )

    # catch unmatched /api paths before the static mount swallows them,
    # so API 404s keep the JSON envelope
    @app.api_route(
        "/api/{rest:path}",
        methods=["GET", "POST", "PUT", "DELETE", "PATCH", "HEAD", "OPTIONS"],
    )
    def unknown_api_route(rest: str):
        raise ApiError(404, "not_found", "unknown API route")

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="webui")

    return app
