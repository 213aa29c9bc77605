"""Typo-tolerant document archive.

Edit-distance kernels, a fuzzy search index with "did you mean"
suggestions, a durable document store, and the HTTP service that ties
them together.
"""

from arsip.distance import (
    EditKind,
    EditOp,
    MalformedScriptError,
    apply_script,
    edit_script,
    levenshtein,
    levenshtein_bitparallel,
    levenshtein_bounded,
    normalized_similarity,
)
from arsip.fuzzy import (
    BudgetPolicy,
    MatchedTerm,
    SearchHit,
    SearchIndex,
    Suggestion,
    rebuild_index,
    suggest,
    tokenize,
)
from arsip.records import (
    CATEGORIES,
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

__all__ = [
    "ArchiveError",
    "ArchiveStore",
    "BudgetPolicy",
    "CATEGORIES",
    "ConflictError",
    "DocumentRecord",
    "EditKind",
    "EditOp",
    "InvalidCategoryError",
    "MalformedScriptError",
    "MatchedTerm",
    "NotFoundError",
    "SearchHit",
    "SearchIndex",
    "SessionManager",
    "StoreCorruptError",
    "Suggestion",
    "UserAccount",
    "UserStore",
    "ValidationError",
    "apply_script",
    "edit_script",
    "levenshtein",
    "levenshtein_bitparallel",
    "levenshtein_bounded",
    "normalized_similarity",
    "rebuild_index",
    "suggest",
    "tokenize",
]

__version__ = "0.1.0"
