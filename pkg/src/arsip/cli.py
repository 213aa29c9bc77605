"""``archctl``: run the server, seed users, ingest, search, and benchmark.

Commands talk to the store in-process, not over HTTP, so they work with
the server stopped. Running them against a data directory that a live
server is also writing is unsupported (single-writer contract).

Exit protocol: 0 on success; argparse usage errors exit 2; every other
failure prints one ``error: …`` line to stderr and exits 1.
"""

from __future__ import annotations

import argparse
import getpass
import hashlib
import mimetypes
import os
import random
import socket
import string
import sys
import time
from datetime import timedelta
from pathlib import Path
from typing import Optional, Sequence

from arsip.distance import levenshtein, levenshtein_bitparallel, levenshtein_bounded
from arsip.fuzzy import BudgetPolicy, DEFAULT_POLICY
from arsip.records import ArchiveError, CATEGORIES
from arsip.store import ArchiveStore
from arsip.users import ROLES, SessionManager, UserStore

DEFAULT_DATA_DIR = os.environ.get("ARCHCTL_DATA_DIR", "data")
PASSWORD_ENV = "ARCHCTL_PASSWORD"

BENCH_ALGOS = ("dp", "banded", "bitparallel")


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _parse_budget(text: str) -> BudgetPolicy:
    try:
        return BudgetPolicy.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_addr(text: str) -> tuple[str, int]:
    host, sep, port = text.rpartition(":")
    if not sep or not host or not port.isdigit():
        raise argparse.ArgumentTypeError(
            f"expected HOST:PORT, got {text!r}"
        )
    return host, int(port)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="archctl",
        description="Operate the document archive: serve, seed users, ingest, search, bench.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--addr", type=_parse_addr, default=("127.0.0.1", 8000),
                       help="listen address as HOST:PORT (default 127.0.0.1:8000)")
    serve.add_argument("--data-dir", default=DEFAULT_DATA_DIR)
    serve.add_argument("--session-ttl", type=int, default=8 * 3600, metavar="SECONDS",
                       help="session lifetime in seconds (default 28800 = 8 hours)")
    serve.add_argument("--public-read", action="store_true",
                       help="allow unauthenticated read endpoints")
    serve.add_argument("--budget", type=_parse_budget, default=None, metavar="SPEC",
                       help='distance budget bands, e.g. "4:1,8:2,3"')
    serve.add_argument("--static-dir", default=None,
                       help="directory with the built web UI to serve at /")

    user = sub.add_parser("user", help="manage accounts")
    user_sub = user.add_subparsers(dest="user_command", required=True)
    user_add = user_sub.add_parser("add", help="create an account")
    user_add.add_argument("--username", required=True)
    user_add.add_argument("--role", required=True, choices=ROLES)
    user_add.add_argument("--data-dir", default=DEFAULT_DATA_DIR)

    ingest = sub.add_parser("ingest", help="add one document from a local file")
    ingest.add_argument("--file", required=True)
    ingest.add_argument("--perihal", required=True)
    ingest.add_argument("--no-surat", required=True, dest="no_surat")
    ingest.add_argument("--deskripsi", default="")
    ingest.add_argument("--kategori", required=True, choices=CATEGORIES)
    ingest.add_argument("--as", required=True, dest="as_user", metavar="USERNAME",
                        help="acting account; must exist and hold the Admin role")
    ingest.add_argument("--content-type", default=None,
                        help="override the type guessed from the file extension")
    ingest.add_argument("--data-dir", default=DEFAULT_DATA_DIR)

    search = sub.add_parser("search", help="rank documents against a query")
    search.add_argument("query")
    search.add_argument("--category", choices=CATEGORIES, default=None)
    search.add_argument("--budget", type=_parse_budget, default=None, metavar="SPEC")
    search.add_argument("--data-dir", default=DEFAULT_DATA_DIR)

    suggest = sub.add_parser("suggest", help="spelling suggestions for one token")
    suggest.add_argument("token")
    suggest.add_argument("--limit", type=int, default=5)
    suggest.add_argument("--budget", type=_parse_budget, default=None, metavar="SPEC")
    suggest.add_argument("--data-dir", default=DEFAULT_DATA_DIR)

    bench = sub.add_parser("bench", help="time the distance kernels on random pairs")
    bench.add_argument("--pairs", type=int, required=True, metavar="N")
    bench.add_argument("--min-len", type=int, required=True, metavar="A")
    bench.add_argument("--max-len", type=int, required=True, metavar="B")
    bench.add_argument("--algo", default=",".join(BENCH_ALGOS),
                       help="comma-separated subset of dp,banded,bitparallel")
    bench.add_argument("--seed", type=int, default=2015)

    return parser


def _open_store(args) -> ArchiveStore:
    policy = getattr(args, "budget", None) or DEFAULT_POLICY
    return ArchiveStore(args.data_dir, policy=policy)


def cmd_serve(args) -> int:
    import uvicorn

    from arsip.service import create_app

    host, port = args.addr
    if args.session_ttl <= 0:
        return _fail("--session-ttl must be positive")
    try:
        store = _open_store(args)
    except ArchiveError as exc:
        return _fail(str(exc))
    try:
        users = UserStore(args.data_dir)
        sessions = SessionManager(ttl=timedelta(seconds=args.session_ttl))
        app = create_app(
            store,
            users,
            sessions,
            public_read=args.public_read,
            static_dir=args.static_dir,
        )
        sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            sock.bind((host, port))
        except OSError as exc:
            sock.close()
            return _fail(f"cannot listen on {host}:{port}: {exc}")
        print(f"serving on http://{host}:{port} (data: {args.data_dir})", flush=True)
        server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
        server.run(sockets=[sock])
        return 0
    except ArchiveError as exc:
        return _fail(str(exc))
    finally:
        store.close()


def cmd_user_add(args) -> int:
    password = os.environ.get(PASSWORD_ENV)
    if password is None:
        password = getpass.getpass(f"password for {args.username}: ")
    try:
        store = UserStore(args.data_dir)
        user = store.add_user(args.username, password, args.role)
    except ArchiveError as exc:
        return _fail(str(exc))
    print(f"added {user.role} {user.username} ({user.id})")
    return 0


def cmd_ingest(args) -> int:
    path = Path(args.file)
    try:
        payload = path.read_bytes()
    except OSError as exc:
        return _fail(f"cannot read {path}: {exc}")
    content_type = args.content_type or mimetypes.guess_type(path.name)[0]
    if content_type is None:
        return _fail(f"cannot guess content type of {path.name}; pass --content-type")
    try:
        users = UserStore(args.data_dir)
        actor = users.get(args.as_user)
        if actor is None:
            return _fail(f"unknown user {args.as_user!r}")
        if actor.role != "Admin":
            return _fail(f"user {args.as_user!r} is not an Admin")
        with _open_store(args) as store:
            record = store.create_document(
                perihal=args.perihal,
                no_surat=args.no_surat,
                deskripsi=args.deskripsi,
                kategori=args.kategori,
                file_bytes=payload,
                file_name=path.name,
                content_type=content_type,
                actor=actor.username,
            )
    except ArchiveError as exc:
        return _fail(str(exc))
    print(record.id)
    return 0


def cmd_search(args) -> int:
    try:
        with _open_store(args) as store:
            hits = store.search(args.query, category=args.category)
            records = {h.document_id: store.get_document(h.document_id) for h in hits}
    except ArchiveError as exc:
        return _fail(str(exc))
    if not hits:
        print("no matches")
        return 0
    for hit in hits:
        print(f"{hit.document_id}\t{hit.score:.4f}\t{records[hit.document_id].perihal}")
    return 0


def cmd_suggest(args) -> int:
    if args.limit <= 0:
        return _fail("--limit must be positive")
    try:
        with _open_store(args) as store:
            suggestions = store.suggest(args.token, limit=args.limit)
    except ArchiveError as exc:
        return _fail(str(exc))
    if not suggestions:
        print("no suggestions")
        return 0
    for s in suggestions:
        print(f"{s.candidate}\t{s.distance}\t{s.frequency}")
    return 0


def _bench_pairs(n: int, min_len: int, max_len: int, seed: int) -> list[tuple[str, str]]:
    rng = random.Random(seed)
    alphabet = string.ascii_lowercase
    pairs = []
    for _ in range(n):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(min_len, max_len)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(min_len, max_len)))
        pairs.append((a, b))
    return pairs


def cmd_bench(args, parser: argparse.ArgumentParser) -> int:
    if args.pairs <= 0:
        parser.error("--pairs must be a positive integer")
    if args.min_len < 0 or args.max_len < args.min_len:
        parser.error("--min-len/--max-len must satisfy 0 <= A <= B")
    algos = [a.strip() for a in args.algo.split(",") if a.strip()]
    if not algos or any(a not in BENCH_ALGOS for a in algos):
        parser.error(f"--algo must be a comma-separated subset of {','.join(BENCH_ALGOS)}")

    pairs = _bench_pairs(args.pairs, args.min_len, args.max_len, args.seed)
    digest = hashlib.sha256("\x1f".join(a + "\x1e" + b for a, b in pairs).encode()).hexdigest()
    print(
        f"pairs: {args.pairs}  lengths: {args.min_len}..{args.max_len}  "
        f"seed: {args.seed}  fingerprint: {digest[:12]}"
    )

    results: dict[str, list[int]] = {}
    timings: dict[str, float] = {}
    reference: Optional[list[int]] = None
    for algo in algos:
        if algo == "dp":
            start = time.perf_counter_ns()
            out = [levenshtein(a, b) for a, b in pairs]
            reference = out
        elif algo == "banded":
            if reference is None:
                reference = [levenshtein(a, b) for a, b in pairs]
            start = time.perf_counter_ns()
            out = [
                levenshtein_bounded(a, b, k)  # type: ignore[misc]
                for (a, b), k in zip(pairs, reference)
            ]
        else:
            start = time.perf_counter_ns()
            out = [levenshtein_bitparallel(a, b) for a, b in pairs]
        elapsed = time.perf_counter_ns() - start
        results[algo] = out  # type: ignore[assignment]
        timings[algo] = elapsed
        ns_per_op = elapsed / args.pairs
        throughput = args.pairs / (elapsed / 1e9)
        line = f"{algo}: {ns_per_op:.0f} ns/op  ({throughput:.0f} pairs/s)"
        if algo != "dp" and "dp" in timings:
            line += f"  speedup vs dp: {timings['dp'] / elapsed:.1f}x"
        print(line)

    if reference is None:
        reference = [levenshtein(a, b) for a, b in pairs]
    for algo, out in results.items():
        if out != reference:
            bad = next(i for i, (x, y) in enumerate(zip(out, reference)) if x != y)
            return _fail(
                f"algorithms disagree: {algo} gave {out[bad]} but dp gave "
                f"{reference[bad]} on pair {bad}"
            )
    print(f"agreement: OK ({args.pairs} pairs)")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args)
    if args.command == "user":
        return cmd_user_add(args)
    if args.command == "ingest":
        return cmd_ingest(args)
    if args.command == "search":
        return cmd_search(args)
    if args.command == "suggest":
        return cmd_suggest(args)
    if args.command == "bench":
        return cmd_bench(args, parser)
    parser.error(f"unknown command {args.command!r}")  # pragma: no cover
    return 2  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
