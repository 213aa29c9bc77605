"""User accounts, password hashing, and login sessions.

Accounts are appended to ``users.log`` in the data directory, one JSON
line per account, versioned like the document log. Passwords are stored
as salted scrypt hashes; the plaintext never touches disk. Sessions are
in-memory only: restarting the service logs everyone out, which is the
right trade-off for a desk-scale archive.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import os
import secrets
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path
from typing import Callable, Optional

from arsip.records import (
    ConflictError,
    StoreCorruptError,
    ValidationError,
    utc_now,
)

ROLES: tuple[str, ...] = ("Admin", "Staff")

USERS_LOG_NAME = "users.log"
USERS_LOG_VERSION = 1

# scrypt cost parameters; encoded into each hash so they can be raised later
_SCRYPT_N = 2**14
_SCRYPT_R = 8
_SCRYPT_P = 1
_DKLEN = 32

DEFAULT_SESSION_TTL = timedelta(hours=8)


def hash_password(password: str) -> str:
    salt = secrets.token_bytes(16)
    digest = hashlib.scrypt(
        password.encode("utf-8"), salt=salt, n=_SCRYPT_N, r=_SCRYPT_R, p=_SCRYPT_P, dklen=_DKLEN
    )
    return f"scrypt${_SCRYPT_N}${_SCRYPT_R}${_SCRYPT_P}${salt.hex()}${digest.hex()}"


def verify_password(password: str, stored: str) -> bool:
    try:
        scheme, n, r, p, salt_hex, digest_hex = stored.split("$")
        if scheme != "scrypt":
            return False
        expected = bytes.fromhex(digest_hex)
        computed = hashlib.scrypt(
            password.encode("utf-8"),
            salt=bytes.fromhex(salt_hex),
            n=int(n),
            r=int(r),
            p=int(p),
            dklen=len(expected),
        )
    except (ValueError, TypeError):
        return False
    return hmac.compare_digest(computed, expected)


@dataclass(frozen=True)
class UserAccount:
    id: str
    username: str
    role: str
    password_hash: str
    created_at: datetime

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "username": self.username,
            "role": self.role,
            "password_hash": self.password_hash,
            "created_at": self.created_at.isoformat(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "UserAccount":
        try:
            role = data["role"]
            if role not in ROLES:
                raise ValueError(f"unknown role {role!r}")
            return cls(
                id=data["id"],
                username=data["username"],
                role=role,
                password_hash=data["password_hash"],
                created_at=datetime.fromisoformat(data["created_at"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed user record: {exc}") from exc


class UserStore:
    """Username-keyed account registry backed by ``users.log``."""

    def __init__(self, data_dir: str | os.PathLike):
        self.data_dir = Path(data_dir)
        self.log_path = self.data_dir / USERS_LOG_NAME
        self._users: dict[str, UserAccount] = {}
        self._lock = threading.RLock()
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._replay()

    def _replay(self) -> None:
        if not self.log_path.exists():
            return
        with open(self.log_path, "r", encoding="utf-8", newline="") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.endswith("\n"):
                    raise StoreCorruptError(
                        f"{self.log_path} line {lineno}: truncated record (no trailing newline)"
                    )
                try:
                    event = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise StoreCorruptError(
                        f"{self.log_path} line {lineno}: invalid JSON ({exc.msg})"
                    ) from exc
                if not isinstance(event, dict) or event.get("v") != USERS_LOG_VERSION:
                    raise StoreCorruptError(
                        f"{self.log_path} line {lineno}: unsupported log version"
                    )
                try:
                    user = UserAccount.from_dict(event["user"])
                except (KeyError, ValueError) as exc:
                    raise StoreCorruptError(f"{self.log_path} line {lineno}: {exc}") from exc
                if user.username in self._users:
                    raise StoreCorruptError(
                        f"{self.log_path} line {lineno}: duplicate username {user.username!r}"
                    )
                self._users[user.username] = user

    def add_user(self, username: str, password: str, role: str) -> UserAccount:
        username = (username or "").strip()
        if not username:
            raise ValidationError("username must not be empty")
        if role not in ROLES:
            raise ValidationError(f"role must be one of: {', '.join(ROLES)}")
        if not password:
            raise ValidationError("password must not be empty")
        with self._lock:
            if username in self._users:
                raise ConflictError(f"username {username!r} already exists")
            user = UserAccount(
                id=uuid.uuid4().hex,
                username=username,
                role=role,
                password_hash=hash_password(password),
                created_at=utc_now(),
            )
            line = json.dumps(
                {"v": USERS_LOG_VERSION, "user": user.to_dict()},
                ensure_ascii=False,
                separators=(",", ":"),
            )
            with open(self.log_path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._users[username] = user
            return user

    def authenticate(self, username: str, password: str) -> Optional[UserAccount]:
        """The account on success, None on any failure (which one stays private)."""
        with self._lock:
            user = self._users.get(username)
        if user is None or not verify_password(password, user.password_hash):
            return None
        return user

    def get(self, username: str) -> Optional[UserAccount]:
        with self._lock:
            return self._users.get(username)

    def get_by_id(self, user_id: str) -> Optional[UserAccount]:
        with self._lock:
            for user in self._users.values():
                if user.id == user_id:
                    return user
        return None

    def __len__(self) -> int:
        with self._lock:
            return len(self._users)


@dataclass(frozen=True)
class Session:
    token: str
    user_id: str
    expires_at: datetime


class SessionManager:
    """In-memory token table with TTL expiry.

    ``clock`` is injectable so expiry is testable without sleeping.
    Tokens come from ``secrets.token_urlsafe(32)``: 256 bits, URL-safe.
    """

    def __init__(
        self,
        ttl: timedelta = DEFAULT_SESSION_TTL,
        *,
        clock: Callable[[], datetime] = utc_now,
    ):
        if ttl <= timedelta(0):
            raise ValueError("session ttl must be positive")
        self.ttl = ttl
        self._clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def issue(self, user_id: str) -> Session:
        session = Session(
            token=secrets.token_urlsafe(32),
            user_id=user_id,
            expires_at=self._clock() + self.ttl,
        )
        with self._lock:
            self._sessions[session.token] = session
        return session

    def resolve(self, token: str) -> Optional[str]:
        """User id for a live token; expired and unknown tokens give None."""
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                return None
            if self._clock() >= session.expires_at:
                del self._sessions[token]
                return None
            return session.user_id

    def revoke(self, token: str) -> None:
        with self._lock:
            self._sessions.pop(token, None)
