"""Shared helpers for HTTP-level tests: harness, clock, authorization matrix."""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Optional

from fastapi.testclient import TestClient

from arsip.service import create_app
from arsip.store import ArchiveStore
from arsip.users import SessionManager, UserStore

ADMIN_PASSWORD = "admin-pw"
STAFF_PASSWORD = "staff-pw"

AUTH_STATES = ("anon", "staff", "admin", "expired")


class FakeClock:
    def __init__(self, start: datetime):
        self.now = start

    def __call__(self) -> datetime:
        return self.now

    def advance(self, delta: timedelta) -> None:
        self.now += delta


@dataclass
class ApiHarness:
    client: TestClient
    store: ArchiveStore
    users: UserStore
    sessions: SessionManager
    clock: FakeClock
    tokens: dict[str, Optional[str]] = field(default_factory=dict)

    def headers(self, state: str) -> dict[str, str]:
        token = self.tokens[state]
        return {"Authorization": f"Bearer {token}"} if token else {}

    def request(self, state: str, method: str, url: str, **kwargs):
        return self.client.request(method, url, headers=self.headers(state), **kwargs)

    def add_document(self, **overrides):
        defaults = dict(
            perihal="Surat Uji Akses",
            no_surat=f"{uuid.uuid4().hex[:10]}/AUTH",
            deskripsi="",
            kategori="Artikel",
            file_bytes=b"%PDF-1.4 uji",
            file_name="uji.pdf",
            content_type="application/pdf",
            actor="admin",
        )
        defaults.update(overrides)
        return self.store.create_document(**defaults)

    def close(self) -> None:
        self.store.close()


def build_harness(root: Path, *, public_read: bool = False) -> ApiHarness:
    """App + client with one Admin, one Staff, and one already-expired token.

    The expired token is issued first; the clock then jumps past the TTL
    before the live tokens are issued, so within one harness "expired"
    and "valid" coexist without further clock movement.
    """
    data_dir = Path(root) / "data"
    clock = FakeClock(datetime(2015, 8, 11, 9, 0, tzinfo=timezone.utc))
    store = ArchiveStore(data_dir)
    users = UserStore(data_dir)
    sessions = SessionManager(ttl=timedelta(hours=8), clock=clock)
    admin = users.add_user("admin", ADMIN_PASSWORD, "Admin")
    users.add_user("staff1", STAFF_PASSWORD, "Staff")

    app = create_app(store, users, sessions, public_read=public_read)
    client = TestClient(app)

    expired = sessions.issue(admin.id).token
    clock.advance(timedelta(hours=9))

    def login(username: str, password: str) -> str:
        resp = client.post("/api/login", json={"username": username, "password": password})
        assert resp.status_code == 200, resp.text
        return resp.json()["token"]

    tokens = {
        "anon": None,
        "staff": login("staff1", STAFF_PASSWORD),
        "admin": login("admin", ADMIN_PASSWORD),
        "expired": expired,
    }
    return ApiHarness(client=client, store=store, users=users, sessions=sessions,
                      clock=clock, tokens=tokens)


# --- authorization matrix ------------------------------------------------
# Every endpoint × every auth state, with the status each cell must return.
# Builders create any document they need so cells stay order-independent.

Prepare = Callable[[ApiHarness], tuple[str, str, dict]]

_READ = {"anon": 401, "staff": 200, "admin": 200, "expired": 401}
_MUTATE = {"anon": 401, "staff": 403, "admin": 200, "expired": 401}
_OPEN = {"anon": 200, "staff": 200, "admin": 200, "expired": 200}


def _multipart_upload(h: ApiHarness) -> tuple[str, str, dict]:
    return (
        "POST",
        "/api/documents",
        {
            "data": {
                "perihal": "Surat Uji Unggah",
                "no_surat": f"{uuid.uuid4().hex[:10]}/UP",
                "deskripsi": "",
                "kategori": "Artikel",
            },
            "files": {"file": ("uji.pdf", b"%PDF-1.4 uji", "application/pdf")},
        },
    )


def _put_update(h: ApiHarness) -> tuple[str, str, dict]:
    doc = h.add_document()
    body = {
        "perihal": doc.perihal,
        "no_surat": doc.no_surat,
        "deskripsi": doc.deskripsi,
        "kategori": doc.kategori,
    }
    return ("PUT", f"/api/documents/{doc.id}", {"json": body})


AUTH_MATRIX: list[tuple[str, Prepare, dict[str, int]]] = [
    ("GET /api/health", lambda h: ("GET", "/api/health", {}), _OPEN),
    (
        "POST /api/login",
        lambda h: (
            "POST",
            "/api/login",
            {"json": {"username": "staff1", "password": STAFF_PASSWORD}},
        ),
        _OPEN,
    ),
    ("GET /api/explore/{category}", lambda h: ("GET", "/api/explore/Artikel", {}), _READ),
    ("GET /api/search", lambda h: ("GET", "/api/search?q=surat", {}), _READ),
    (
        "GET /api/documents/{id}",
        lambda h: ("GET", f"/api/documents/{h.add_document().id}", {}),
        _READ,
    ),
    (
        "GET /api/documents/{id}/file",
        lambda h: ("GET", f"/api/documents/{h.add_document().id}/file", {}),
        _READ,
    ),
    (
        "POST /api/documents",
        _multipart_upload,
        {"anon": 401, "staff": 403, "admin": 201, "expired": 401},
    ),
    ("PUT /api/documents/{id}", _put_update, _MUTATE),
    (
        "DELETE /api/documents/{id}",
        lambda h: ("DELETE", f"/api/documents/{h.add_document().id}", {}),
        _MUTATE,
    ),
]


def run_matrix_cell(h: ApiHarness, prepare: Prepare, state: str) -> int:
    method, url, kwargs = prepare(h)
    resp = h.request(state, method, url, **kwargs)
    return resp.status_code


def assert_error_envelope(resp, status: int, code: Optional[str] = None) -> None:
    assert resp.status_code == status, resp.text
    body = resp.json()
    assert set(body) == {"error"}
    assert set(body["error"]) == {"code", "message"}
    if code is not None:
        assert body["error"]["code"] == code
