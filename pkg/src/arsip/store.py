"""Durable document store: append-only record log plus a blob directory.

Layout under the data directory:

    documents.log   one JSON object per line, each a versioned create /
                    update / delete event carrying the full record
    blobs/<id>      the uploaded bytes, verbatim
    users.log       user accounts (written by arsip.users)

Replay is last-write-wins per id with tombstones honored. Any malformed
or unsupported line aborts startup with the offending line number; a
quietly skipped event would mean silently diverging state, which is worse
than refusing to start.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import uuid
from pathlib import Path
from typing import Optional

from arsip.fuzzy import BudgetPolicy, DEFAULT_POLICY, SearchHit, SearchIndex, Suggestion
from arsip.records import (
    ALLOWED_CONTENT_TYPES,
    ConflictError,
    DocumentRecord,
    NotFoundError,
    StoreCorruptError,
    ValidationError,
    utc_now,
    validate_category,
)

logger = logging.getLogger(__name__)

LOG_VERSION = 1
LOG_NAME = "documents.log"
BLOB_DIR = "blobs"


class ArchiveStore:
    """Single-writer, multi-reader store of archived documents.

    All mutating operations are serialized on one lock; reads take the
    same lock briefly, so no caller ever observes a half-applied change
    (record visible but not searchable, or the reverse).
    """

    def __init__(self, data_dir: str | os.PathLike, *, policy: BudgetPolicy = DEFAULT_POLICY):
        self.data_dir = Path(data_dir)
        self.blob_dir = self.data_dir / BLOB_DIR
        self.log_path = self.data_dir / LOG_NAME
        self._lock = threading.RLock()
        self._records: dict[str, DocumentRecord] = {}  # live and tombstoned
        self.index = SearchIndex(policy)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.blob_dir.mkdir(exist_ok=True)
        self._replay_log()
        self._check_blobs()
        self._log_file = open(self.log_path, "a", encoding="utf-8")

    # -- lifecycle -------------------------------------------------------

    def close(self) -> None:
        with self._lock:
            if not self._log_file.closed:
                self._log_file.close()

    def __enter__(self) -> "ArchiveStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _replay_log(self) -> None:
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
                if not isinstance(event, dict):
                    raise StoreCorruptError(
                        f"{self.log_path} line {lineno}: event must be a JSON object"
                    )
                version = event.get("v")
                if version != LOG_VERSION:
                    raise StoreCorruptError(
                        f"{self.log_path} line {lineno}: unsupported log version {version!r}"
                    )
                op = event.get("op")
                if op not in ("create", "update", "delete"):
                    raise StoreCorruptError(
                        f"{self.log_path} line {lineno}: unknown op {op!r}"
                    )
                try:
                    record = DocumentRecord.from_dict(event["record"])
                except (KeyError, ValueError) as exc:
                    raise StoreCorruptError(
                        f"{self.log_path} line {lineno}: {exc}"
                    ) from exc
                if op == "delete" and not record.deleted:
                    raise StoreCorruptError(
                        f"{self.log_path} line {lineno}: delete event without tombstone flag"
                    )
                self._records[record.id] = record
        seen: dict[tuple[str, str], str] = {}
        for record in self._records.values():
            if record.deleted:
                continue
            key = (record.kategori, record.no_surat)
            if key in seen:
                raise StoreCorruptError(
                    f"{self.log_path}: live documents {seen[key]} and {record.id} "
                    f"share no_surat {record.no_surat!r} in {record.kategori!r}"
                )
            seen[key] = record.id
        for record in self._records.values():
            if not record.deleted:
                self.index.index_document(record)

    def _check_blobs(self) -> None:
        for record in self._records.values():
            if not record.deleted and not self._blob_path(record.id).exists():
                raise StoreCorruptError(
                    f"live document {record.id} has no blob at {self._blob_path(record.id)}"
                )
        # Crash residue: blobs written before their create event landed, or
        # not yet unlinked after a logged delete. Safe to discard.
        for path in self.blob_dir.iterdir():
            record = self._records.get(path.name)
            if record is None or record.deleted:
                logger.warning("removing stray blob %s", path)
                path.unlink()

    # -- write path --------------------------------------------------------

    def create_document(
        self,
        *,
        perihal: str,
        no_surat: str,
        deskripsi: str,
        kategori: str,
        file_bytes: bytes,
        file_name: str,
        content_type: str,
        actor: str,
    ) -> DocumentRecord:
        perihal, no_surat, deskripsi = _clean_meta(perihal, no_surat, deskripsi)
        validate_category(kategori)
        _check_content_type(kategori, content_type)
        if not actor or not actor.strip():
            raise ValidationError("actor is required")
        if not file_bytes:
            raise ValidationError("uploaded file must not be empty")
        with self._lock:
            self._check_no_surat_free(kategori, no_surat, exclude_id=None)
            doc_id = self._fresh_id()
            record = DocumentRecord(
                id=doc_id,
                perihal=perihal,
                no_surat=no_surat,
                deskripsi=deskripsi,
                kategori=kategori,
                file_name=file_name or "unnamed",
                file_ref=f"{BLOB_DIR}/{doc_id}",
                content_type=content_type,
                uploaded_by=actor,
                uploaded_at=utc_now(),
            )
            # Blob first, then the log line: a crash in between leaves a
            # stray blob that the next startup removes, never a live
            # record without bytes.
            self._write_blob(doc_id, file_bytes)
            self._append_event("create", record)
            self._records[doc_id] = record
            self.index.index_document(record)
            return record

    def update_document(
        self,
        doc_id: str,
        *,
        perihal: str,
        no_surat: str,
        deskripsi: str,
        kategori: str,
        actor: str,
    ) -> DocumentRecord:
        perihal, no_surat, deskripsi = _clean_meta(perihal, no_surat, deskripsi)
        validate_category(kategori)
        if not actor or not actor.strip():
            raise ValidationError("actor is required")
        with self._lock:
            current = self._live_record(doc_id)
            _check_content_type(kategori, current.content_type)
            self._check_no_surat_free(kategori, no_surat, exclude_id=doc_id)
            updated = current.with_meta(perihal, no_surat, deskripsi, kategori)
            self._append_event("update", updated)
            self._records[doc_id] = updated
            self.index.index_document(updated)  # replaces the old snapshot
            return updated

    def delete_document(self, doc_id: str, *, actor: str) -> None:
        if not actor or not actor.strip():
            raise ValidationError("actor is required")
        with self._lock:
            current = self._live_record(doc_id)
            tombstone = current.tombstoned()
            # Tombstone first, blob second: replay treats a logged delete
            # with a leftover blob as residue and removes it.
            self._append_event("delete", tombstone)
            self._records[doc_id] = tombstone
            blob = self._blob_path(doc_id)
            if blob.exists():
                blob.unlink()
            self.index.deindex_id(doc_id)

    # -- read path ---------------------------------------------------------

    def get_document(self, doc_id: str) -> DocumentRecord:
        with self._lock:
            return self._live_record(doc_id)

    def read_blob(self, doc_id: str) -> bytes:
        with self._lock:
            record = self._live_record(doc_id)
            return self._blob_path(record.id).read_bytes()

    def list_by_category(
        self, category: str, *, offset: int = 0, limit: Optional[int] = None
    ) -> list[DocumentRecord]:
        validate_category(category)
        if offset < 0:
            raise ValidationError("offset must be non-negative")
        if limit is not None and limit < 0:
            raise ValidationError("limit must be non-negative")
        with self._lock:
            docs = [
                r
                for r in self._records.values()
                if not r.deleted and r.kategori == category
            ]
        docs.sort(key=lambda r: (-r.uploaded_at.timestamp(), r.id))
        if limit is None:
            return docs[offset:]
        return docs[offset : offset + limit]

    def count_by_category(self, category: str) -> int:
        validate_category(category)
        with self._lock:
            return sum(
                1
                for r in self._records.values()
                if not r.deleted and r.kategori == category
            )

    def search(self, query: str, category: Optional[str] = None) -> list[SearchHit]:
        return self.index.search(query, category)

    def suggest(self, token: str, limit: int = 5) -> list[Suggestion]:
        return self.index.suggest(token, limit)

    def live_documents(self) -> list[DocumentRecord]:
        with self._lock:
            return [r for r in self._records.values() if not r.deleted]

    def all_ids(self) -> set[str]:
        """Every id ever issued, tombstoned ones included."""
        with self._lock:
            return set(self._records)

    # -- internals -----------------------------------------------------------

    def _live_record(self, doc_id: str) -> DocumentRecord:
        record = self._records.get(doc_id)
        if record is None or record.deleted:
            raise NotFoundError(f"no document {doc_id}")
        return record

    def _check_no_surat_free(
        self, kategori: str, no_surat: str, exclude_id: Optional[str]
    ) -> None:
        for record in self._records.values():
            if record.deleted or record.id == exclude_id:
                continue
            if record.kategori == kategori and record.no_surat == no_surat:
                raise ConflictError(
                    f"no_surat {no_surat!r} already used in {kategori!r} by document {record.id}"
                )

    def _fresh_id(self) -> str:
        while True:
            doc_id = uuid.uuid4().hex
            if doc_id not in self._records:
                return doc_id

    def _blob_path(self, doc_id: str) -> Path:
        return self.blob_dir / doc_id

    def _write_blob(self, doc_id: str, data: bytes) -> None:
        tmp = self.blob_dir / f".{doc_id}.tmp"
        with open(tmp, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self._blob_path(doc_id))

    def _append_event(self, op: str, record: DocumentRecord) -> None:
        line = json.dumps(
            {"v": LOG_VERSION, "op": op, "record": record.to_dict()},
            ensure_ascii=False,
            separators=(",", ":"),
        )
        self._log_file.write(line + "\n")
        self._log_file.flush()
        os.fsync(self._log_file.fileno())


def _clean_meta(perihal: str, no_surat: str, deskripsi: str) -> tuple[str, str, str]:
    perihal = (perihal or "").strip()
    no_surat = (no_surat or "").strip()
    deskripsi = (deskripsi or "").strip()
    if not perihal:
        raise ValidationError("perihal must not be empty")
    if not no_surat:
        raise ValidationError("no_surat must not be empty")
    return perihal, no_surat, deskripsi


def _check_content_type(kategori: str, content_type: str) -> None:
    allowed = ALLOWED_CONTENT_TYPES[kategori]
    if content_type not in allowed:
        raise ValidationError(
            f"content type {content_type!r} not allowed in {kategori!r}; "
            "expected one of: " + ", ".join(sorted(allowed))
        )
