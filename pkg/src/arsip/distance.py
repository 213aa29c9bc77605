"""Levenshtein distance kernels and edit scripts.

Three interchangeable distance implementations live here: the classic
two-row dynamic program (`levenshtein`), a banded variant that gives up
early when the distance exceeds a caller-supplied bound
(`levenshtein_bounded`), and a bit-parallel variant
(`levenshtein_bitparallel`) that packs a whole DP column into one integer.
All three return identical values; the variants exist purely for speed.

Distances are over Unicode scalar values: one code point is one character.
No normalization or case folding happens here; callers that want
case-insensitive matching fold before calling.

All edit operations (substitute, insert, delete) cost 1. Transpositions
are not an operation; a swap counts as two edits.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional


class EditKind(Enum):
    SUBSTITUTE = "substitute"
    INSERT = "insert"
    DELETE = "delete"


class MalformedScriptError(ValueError):
    """An edit script referenced a position outside the working string."""


@dataclass(frozen=True)
class EditOp:
    """One edit step.

    ``index`` addresses the working string at the moment the op applies,
    i.e. after all preceding ops in the script have been replayed.
    ``char`` is the character written; it is None for deletes.
    """

    kind: EditKind
    index: int
    char: Optional[str] = None


def levenshtein(a: str, b: str) -> int:
    """Minimum number of unit-cost edits turning ``a`` into ``b``.

    Two-row dynamic program, O(len(a) * len(b)) time, O(min) memory.
    """
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    # Iterate over the longer string so the rows stay short.
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        append = cur.append
        left = i
        for j, cb in enumerate(b, start=1):
            best = prev[j - 1] + (ca != cb)
            dele = prev[j] + 1
            if dele < best:
                best = dele
            ins = left + 1
            if ins < best:
                best = ins
            append(best)
            left = best
        prev = cur
    return prev[-1]


def levenshtein_bounded(a: str, b: str, k: int) -> Optional[int]:
    """Distance if it is <= ``k``, else None.

    Evaluates only the diagonal band |i - j| <= k, so the cost is
    O(k * max(len(a), len(b))) instead of quadratic. Whenever the full
    distance is <= k this agrees exactly with :func:`levenshtein`.
    """
    if k < 0:
        raise ValueError("bound k must be non-negative")
    n, m = len(a), len(b)
    if abs(n - m) > k:
        return None
    if n == 0:
        return m  # m == |n - m| <= k here
    if m == 0:
        return n
    if k == 0:
        return 0 if a == b else None

    cap = k + 1  # sentinel: any cell that reaches cap can never recover
    prev = list(range(min(m, k) + 1))  # row 0 of the band
    prev_lo = 0
    for i in range(1, n + 1):
        lo = max(0, i - k)
        hi = min(m, i + k)
        ca = a[i - 1]
        cur = []
        row_min = cap
        for j in range(lo, hi + 1):
            if j == 0:
                val = i
            else:
                val = cap
                pj = j - 1 - prev_lo  # diagonal neighbour
                if 0 <= pj < len(prev):
                    c = prev[pj] + (ca != b[j - 1])
                    if c < val:
                        val = c
                pj = j - prev_lo  # cell above: delete from a
                if 0 <= pj < len(prev):
                    c = prev[pj] + 1
                    if c < val:
                        val = c
                if j - 1 >= lo:  # cell to the left: insert into a
                    c = cur[j - 1 - lo] + 1
                    if c < val:
                        val = c
                if val > cap:
                    val = cap
            cur.append(val)
            if val < row_min:
                row_min = val
        if row_min > k:
            return None
        prev = cur
        prev_lo = lo
    d = prev[m - prev_lo]
    return d if d <= k else None


def levenshtein_bitparallel(a: str, b: str) -> int:
    """Bit-parallel distance, exactly equal to :func:`levenshtein`.

    Myers' bit-vector formulation: one DP column is encoded as a pair of
    plus/minus delta vectors and each character of the text updates the
    whole column with a handful of word operations. Python integers are
    arbitrary precision, so the shorter string is held in one bit vector
    block regardless of length.
    """
    if len(a) > len(b):
        a, b = b, a
    m = len(a)
    if m == 0:
        return len(b)

    peq: dict[str, int] = {}
    bit = 1
    for ch in a:
        peq[ch] = peq.get(ch, 0) | bit
        bit <<= 1

    full = (1 << m) - 1
    mask = 1 << (m - 1)
    vp = full  # every vertical delta starts at +1 (column 0 is 0..m)
    vn = 0
    score = m
    get = peq.get
    for ch in b:
        eq = get(ch, 0)
        xv = eq | vn
        d0 = ((((eq & vp) + vp) & full) ^ vp) | xv
        hp = vn | (full & ~(d0 | vp))
        hn = vp & d0
        if hp & mask:
            score += 1
        elif hn & mask:
            score -= 1
        hp = ((hp << 1) | 1) & full  # the |1 feeds the top row's 0,1,2,... ramp
        hn = (hn << 1) & full
        vp = hn | (full & ~(d0 | hp))
        vn = hp & d0
    return score


def edit_script(a: str, b: str) -> list[EditOp]:
    """An optimal script turning ``a`` into ``b``.

    The script length always equals ``levenshtein(a, b)`` and replaying it
    with :func:`apply_script` reproduces ``b``. Ties in the backtrace are
    broken deterministically: match/substitute wins over delete, delete
    over insert, walking back from the bottom-right corner of the matrix.

    Unlike the distance functions this materializes the full DP matrix,
    which the backtrace needs; memory is O(len(a) * len(b)).
    """
    n, m = len(a), len(b)
    dp = [list(range(m + 1))]
    for i in range(1, n + 1):
        ca = a[i - 1]
        prev = dp[-1]
        row = [i]
        for j in range(1, m + 1):
            best = prev[j - 1] + (ca != b[j - 1])
            dele = prev[j] + 1
            if dele < best:
                best = dele
            ins = row[j - 1] + 1
            if ins < best:
                best = ins
            row.append(best)
        dp.append(row)

    # Backtrace from the bottom-right corner, then replay forward.
    steps: list[str] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and dp[i - 1][j - 1] + (a[i - 1] != b[j - 1]) == dp[i][j]:
            steps.append("diag")
            i -= 1
            j -= 1
        elif i > 0 and dp[i - 1][j] + 1 == dp[i][j]:
            steps.append("up")
            i -= 1
        else:
            steps.append("left")
            j -= 1
    steps.reverse()

    ops: list[EditOp] = []
    cursor = 0  # position in the evolving working string
    i = j = 0
    for step in steps:
        if step == "diag":
            if a[i] != b[j]:
                ops.append(EditOp(EditKind.SUBSTITUTE, cursor, b[j]))
            cursor += 1
            i += 1
            j += 1
        elif step == "up":
            ops.append(EditOp(EditKind.DELETE, cursor))
            i += 1
        else:
            ops.append(EditOp(EditKind.INSERT, cursor, b[j]))
            cursor += 1
            j += 1
    return ops


def apply_script(a: str, script: Iterable[EditOp]) -> str:
    """Replay ``script`` on ``a`` and return the resulting string.

    Raises MalformedScriptError when an op addresses a position outside
    the working string or writes anything but a single character.
    """
    chars = list(a)
    for op in script:
        idx = op.index
        if op.kind is EditKind.INSERT:
            if not 0 <= idx <= len(chars):
                raise MalformedScriptError(
                    f"insert position {idx} outside working string of length {len(chars)}"
                )
            if op.char is None or len(op.char) != 1:
                raise MalformedScriptError("insert must write exactly one character")
            chars.insert(idx, op.char)
        elif op.kind is EditKind.DELETE:
            if not 0 <= idx < len(chars):
                raise MalformedScriptError(
                    f"delete position {idx} outside working string of length {len(chars)}"
                )
            del chars[idx]
        elif op.kind is EditKind.SUBSTITUTE:
            if not 0 <= idx < len(chars):
                raise MalformedScriptError(
                    f"substitute position {idx} outside working string of length {len(chars)}"
                )
            if op.char is None or len(op.char) != 1:
                raise MalformedScriptError("substitute must write exactly one character")
            chars[idx] = op.char
        else:  # pragma: no cover - EditKind is closed
            raise MalformedScriptError(f"unknown op kind {op.kind!r}")
    return "".join(chars)


def normalized_similarity(a: str, b: str) -> float:
    """1 - distance / max(len(a), len(b)), in [0, 1].

    Two empty strings are vacuously identical and score 1.0.
    """
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest
