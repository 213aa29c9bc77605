"""Domain model shared across the archive: categories, records, errors."""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Any

# The four fixed archive roots. Closed enumeration: nothing else is valid.
CATEGORIES: tuple[str, ...] = (
    "Artikel",
    "Dokumen Surat Keluar",
    "Dokumen Surat Masuk",
    "Gambar",
)

# PDF everywhere; the images root additionally takes PNG and JPEG.
ALLOWED_CONTENT_TYPES: dict[str, frozenset[str]] = {
    "Artikel": frozenset({"application/pdf"}),
    "Dokumen Surat Keluar": frozenset({"application/pdf"}),
    "Dokumen Surat Masuk": frozenset({"application/pdf"}),
    "Gambar": frozenset({"application/pdf", "image/png", "image/jpeg"}),
}


class ArchiveError(Exception):
    """Base class for archive failures; ``code`` is machine-readable."""

    code = "error"


class ValidationError(ArchiveError):
    code = "validation"


class InvalidCategoryError(ValidationError):
    code = "invalid_category"


class ConflictError(ArchiveError):
    code = "conflict"


class NotFoundError(ArchiveError):
    code = "not_found"


class StoreCorruptError(ArchiveError):
    code = "corrupt_store"


def validate_category(label: str) -> str:
    """Return the label unchanged if it is one of the four roots."""
    if label not in CATEGORIES:
        raise InvalidCategoryError(
            f"unknown category {label!r}; expected one of: " + ", ".join(CATEGORIES)
        )
    return label


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


@dataclass(frozen=True)
class DocumentRecord:
    """One archived letter or file, metadata only (the blob lives beside it).

    ``file_ref`` is the store-relative blob path and resolves to real bytes
    exactly while ``deleted`` is False.
    """

    id: str
    perihal: str
    no_surat: str
    deskripsi: str
    kategori: str
    file_name: str
    file_ref: str
    content_type: str
    uploaded_by: str
    uploaded_at: datetime
    deleted: bool = False

    def with_meta(
        self, perihal: str, no_surat: str, deskripsi: str, kategori: str
    ) -> "DocumentRecord":
        return replace(
            self, perihal=perihal, no_surat=no_surat, deskripsi=deskripsi, kategori=kategori
        )

    def tombstoned(self) -> "DocumentRecord":
        return replace(self, deleted=True)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "perihal": self.perihal,
            "no_surat": self.no_surat,
            "deskripsi": self.deskripsi,
            "kategori": self.kategori,
            "file_name": self.file_name,
            "file_ref": self.file_ref,
            "content_type": self.content_type,
            "uploaded_by": self.uploaded_by,
            "uploaded_at": self.uploaded_at.isoformat(),
            "deleted": self.deleted,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DocumentRecord":
        try:
            return cls(
                id=data["id"],
                perihal=data["perihal"],
                no_surat=data["no_surat"],
                deskripsi=data["deskripsi"],
                kategori=validate_category(data["kategori"]),
                file_name=data["file_name"],
                file_ref=data["file_ref"],
                content_type=data["content_type"],
                uploaded_by=data["uploaded_by"],
                uploaded_at=datetime.fromisoformat(data["uploaded_at"]),
                deleted=bool(data["deleted"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed document record: {exc}") from exc
