"""Operator command line: build word lists, run analytics reports, serve the API.

Exit codes are a stable contract for scripts: 0 success, 1 completed with
warnings (e.g. empty result lists), 2 usage or environment error.  Progress
and diagnostics go to stderr; results go to files.
"""

from __future__ import annotations

import argparse
import os
import socket
import sys
from datetime import date, datetime, timezone
from pathlib import Path

from . import analytics, service, wordlists

OK = 0
WARNINGS = 1
USAGE_ERROR = 2

REPORT_CHOICES = ("distribution", "difficulty", "top-guesses", "timeline", "paths")


class CliError(Exception):
    """Environment or usage problem; maps to exit code 2."""


def _info(message: str) -> None:
    print(message, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vardle",
        description="Daily Latvian word-guessing game: list builder, analytics, server.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build-lists", help="build main/secondary word lists from corpora")
    build.add_argument("--corpus-dir", required=True, help="directory of UTF-8 corpus text files")
    build.add_argument("--lexicon", required=True, help="lexicon file, one entry per line")
    build.add_argument("--inflections", required=True, help="tab-separated lemma/form table")
    build.add_argument("--out-dir", required=True, help="output directory for list files")
    build.add_argument("--k-main", type=int, default=1500)
    build.add_argument("--k-secondary", type=int, default=15000)
    build.set_defaults(func=cmd_build_lists)

    analyze = sub.add_parser("analyze", help="compute reports from a session log")
    analyze.add_argument("--log", required=True, help="JSON Lines session log")
    analyze.add_argument("--out-dir", required=True)
    analyze.add_argument(
        "--report",
        action="append",
        choices=REPORT_CHOICES,
        help="report to produce (repeatable; default: all feasible)",
    )
    analyze.add_argument("--lists-dir", help="built lists dir, needed for the difficulty report")
    analyze.add_argument("--puzzle", type=int, help="restrict distribution/paths to one puzzle")
    analyze.add_argument("--turn", type=int, help="restrict top-guesses to one turn (1-6)")
    analyze.add_argument("--top-n", type=int, default=15)
    analyze.add_argument("--min-weight", type=int, default=1, help="path-graph edge cutoff")
    analyze.set_defaults(func=cmd_analyze)

    serve = sub.add_parser("serve", help="run the HTTP API")
    env = os.environ
    serve.add_argument("--lists-dir", default=env.get(service.ENV_LISTS_DIR))
    serve.add_argument("--log", default=env.get(service.ENV_LOG_PATH, "sessions.jsonl"))
    serve.add_argument("--start-date", default=env.get(service.ENV_START_DATE, "2022-01-28"))
    serve.add_argument("--tz", default=env.get(service.ENV_TZ, "Europe/Riga"))
    serve.add_argument("--bind", default=env.get(service.ENV_BIND_ADDR, "127.0.0.1:8000"))
    serve.add_argument(
        "--static-dir",
        default=env.get(service.ENV_STATIC_DIR),
        help="optional web client bundle to serve at /",
    )
    serve.set_defaults(func=cmd_serve)

    return parser


def cmd_build_lists(args: argparse.Namespace) -> int:
    corpus_dir = Path(args.corpus_dir)
    lexicon_path = Path(args.lexicon)
    inflections_path = Path(args.inflections)
    for path, what in [(corpus_dir, "corpus dir"), (lexicon_path, "lexicon"), (inflections_path, "inflections")]:
        if not path.exists():
            raise CliError(f"{what} not found: {path}")
    corpus_files = sorted(p for p in corpus_dir.iterdir() if p.is_file())
    if not corpus_files:
        raise CliError(f"no corpus files in {corpus_dir}")

    decode_stats = wordlists.DecodeStats()
    stats = wordlists.CorpusStats()
    for path in corpus_files:
        _info(f"reading {path}")
        lines = wordlists.iter_corpus_lines(path, decode_stats)
        stats.update(wordlists.count_frequencies(wordlists.tokenize_stream(lines)))

    lexicon = wordlists.load_lexicon(lexicon_path)
    table, rows_skipped = wordlists.load_inflections(inflections_path)

    lists, review = wordlists.build_lists(
        stats, lexicon, k_main=args.k_main, k_secondary=args.k_secondary
    )
    lists = wordlists.merge_inflections(lists, table)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    wordlists.write_word_list(lists.main, out_dir / wordlists.MAIN_FILENAME)
    wordlists.write_word_list(sorted(lists.secondary), out_dir / wordlists.SECONDARY_FILENAME)
    wordlists.write_review_report(review, out_dir / wordlists.REVIEW_FILENAME)
    wordlists.write_length_csv(
        wordlists.length_distribution_report(stats), out_dir / wordlists.LENGTH_CSV_FILENAME
    )
    meta = {
        "built_at": datetime.now(timezone.utc).isoformat(),
        "k_main": args.k_main,
        "k_secondary": args.k_secondary,
        "inputs": {
            "corpus": {p.name: wordlists.file_digest(p) for p in corpus_files},
            "lexicon": wordlists.file_digest(lexicon_path),
            "inflections": wordlists.file_digest(inflections_path),
        },
        "counts": {
            "main": len(lists.main),
            "secondary": len(lists.secondary),
            "review": len(review),
            "decode_errors": decode_stats.bad_lines,
            "inflection_rows_skipped": rows_skipped,
        },
        "warnings": lists.metadata.get("warnings", []),
    }
    wordlists.write_build_meta(out_dir / wordlists.META_FILENAME, meta)

    _info(
        f"main: {len(lists.main)}  secondary: {len(lists.secondary)}  "
        f"review: {len(review)}  decode errors: {decode_stats.bad_lines}  "
        f"inflection rows skipped: {rows_skipped}"
    )
    if not lists.main or not lists.secondary:
        _info("warning: empty result list")
        return WARNINGS
    return OK


def _resolve_puzzles(args: argparse.Namespace, puzzle_ids: list[int]) -> dict[int, str]:
    if not args.lists_dir:
        raise CliError("--lists-dir is required for the difficulty report")
    lists = wordlists.load_word_lists(args.lists_dir)
    return {pid: lists.main[pid % len(lists.main)] for pid in puzzle_ids}


def cmd_analyze(args: argparse.Namespace) -> int:
    log_path = Path(args.log)
    if not log_path.exists():
        raise CliError(f"log not found: {log_path}")
    if args.turn is not None and not 1 <= args.turn <= 6:
        raise CliError("--turn must be 1..6")
    reports = args.report or ["distribution", "timeline", "top-guesses", "paths"]

    sessions, skipped = analytics.parse_session_log(log_path)
    _info(f"sessions: {len(sessions)}  bad lines skipped: {skipped}")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    puzzle_ids = sorted({s.puzzle_id for s in sessions})
    selected = [args.puzzle] if args.puzzle is not None else puzzle_ids

    for report in reports:
        if report == "distribution":
            for pid in selected:
                dist = analytics.guess_distribution(sessions, pid)
                analytics.write_distribution_csv(dist, out_dir / f"distribution_{pid}.csv")
        elif report == "difficulty":
            puzzles = _resolve_puzzles(args, puzzle_ids)
            ranking, unknown = analytics.difficulty_ranking(sessions, puzzles)
            if unknown:
                _info(f"sessions with unknown puzzle skipped: {unknown}")
            analytics.write_difficulty_csv(ranking, out_dir / "difficulty.csv")
        elif report == "top-guesses":
            turns = [args.turn] if args.turn is not None else list(range(1, 7))
            for turn in turns:
                rows = analytics.top_guesses_by_turn(sessions, turn, n=args.top_n)
                analytics.write_top_guesses_csv(rows, out_dir / f"top_guesses_turn{turn}.csv")
        elif report == "timeline":
            analytics.write_timeline_csv(
                analytics.unique_forms_timeline(sessions), out_dir / "timeline.csv"
            )
        elif report == "paths":
            for pid in selected:
                graph = analytics.guess_path_graph(sessions, pid, min_weight=args.min_weight)
                (out_dir / f"paths_{pid}.dot").write_text(
                    analytics.export_dot(graph), encoding="utf-8"
                )
    return OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    if not args.lists_dir:
        raise CliError("--lists-dir (or VARDLE_LISTS_DIR) is required")
    lists_dir = Path(args.lists_dir)
    if not lists_dir.is_dir():
        raise CliError(f"lists dir not found: {lists_dir}")

    if args.static_dir and not Path(args.static_dir).is_dir():
        raise CliError(f"static dir not found: {args.static_dir}")
    config = service.ServiceConfig(
        lists_dir=lists_dir,
        log_path=Path(args.log),
        start_date=date.fromisoformat(args.start_date),
        timezone=args.tz,
        bind_addr=args.bind,
        static_dir=Path(args.static_dir) if args.static_dir else None,
    )
    try:
        app = service.create_app(config)
    except (OSError, ValueError) as err:
        raise CliError(f"cannot load word lists: {err}")

    host, _, port_text = args.bind.rpartition(":")
    try:
        port = int(port_text)
    except ValueError:
        raise CliError(f"invalid bind address: {args.bind}")
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        sock.bind((host or "127.0.0.1", port))
    except OSError as err:
        sock.close()
        raise CliError(f"cannot bind {args.bind}: {err}")

    _info(f"serving on {args.bind}")
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    server.run(sockets=[sock])
    return OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        _info(f"error: {err}")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
