"""Play analysis over completed-session logs.

Sessions are whole games only: a win at some turn, or a loss after six
guesses.  Every aggregation here is a pure function of the session set, so
session order never affects a result, and partial aggregates computed over
partitions of the log merge into the same totals.
"""

from __future__ import annotations

import csv
import json
from collections import Counter
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path
from typing import Iterable, Mapping

from .engine import LATVIAN, MAX_GUESSES, Alphabet, parse_word

__all__ = [
    "DIST_KEYS",
    "Session",
    "GuessDistribution",
    "DifficultyEntry",
    "PathGraph",
    "session_to_json",
    "parse_session_line",
    "parse_session_log",
    "guess_distribution",
    "difficulty_ranking",
    "top_guesses_by_turn",
    "unique_forms_timeline",
    "guess_path_graph",
    "export_dot",
    "write_distribution_csv",
    "write_difficulty_csv",
    "write_top_guesses_csv",
    "write_timeline_csv",
]

# Distribution buckets: wins by turn, plus X for failed games.
DIST_KEYS = ("G1", "G2", "G3", "G4", "G5", "G6", "X")


@dataclass(frozen=True)
class Session:
    """One player's complete guess array for one puzzle."""

    puzzle_id: int
    date: date
    client_id: str
    guesses: tuple[str, ...]
    won_turn: int | None  # None means lost after six guesses

    def __post_init__(self) -> None:
        if not 1 <= len(self.guesses) <= MAX_GUESSES:
            raise ValueError("a session holds 1..6 guesses")
        if self.won_turn is not None and self.won_turn != len(self.guesses):
            raise ValueError("a win ends the session at the winning turn")
        if self.won_turn is None and len(self.guesses) != MAX_GUESSES:
            raise ValueError("a lost session has all six guesses")

    @property
    def won(self) -> bool:
        return self.won_turn is not None


def session_to_json(session: Session) -> str:
    record = {
        "date": session.date.isoformat(),
        "puzzle_id": session.puzzle_id,
        "client_id": session.client_id,
        "guesses": list(session.guesses),
        "outcome": "won" if session.won else "lost",
    }
    if session.won:
        record["won_turn"] = session.won_turn
    return json.dumps(record, ensure_ascii=False)


def parse_session_line(line: str, alphabet: Alphabet = LATVIAN) -> Session:
    """Parse one JSON Lines record; raises ``ValueError`` on any defect."""
    record = json.loads(line)
    if not isinstance(record, dict):
        raise ValueError("session record must be a JSON object")
    outcome = record["outcome"]
    if outcome not in ("won", "lost"):
        raise ValueError(f"unknown outcome: {outcome!r}")
    won_turn = record["won_turn"] if outcome == "won" else None
    if outcome == "won" and not isinstance(won_turn, int):
        raise ValueError("won session must carry won_turn")
    guesses = tuple(parse_word(g, alphabet) for g in record["guesses"])
    return Session(
        puzzle_id=int(record["puzzle_id"]),
        date=date.fromisoformat(record["date"]),
        client_id=str(record["client_id"]),
        guesses=guesses,
        won_turn=won_turn,
    )


def parse_session_log(
    path: Path | str, alphabet: Alphabet = LATVIAN
) -> tuple[list[Session], int]:
    """Read a JSON Lines session log, skipping (and counting) bad lines."""
    sessions: list[Session] = []
    skipped = 0
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            try:
                sessions.append(parse_session_line(line, alphabet))
            except (ValueError, KeyError, TypeError):
                skipped += 1
    return sessions, skipped


@dataclass(frozen=True)
class GuessDistribution:
    """Counts over the G1..G6 win buckets and the X failure bucket."""

    counts: dict[str, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def fractions(self) -> dict[str, float]:
        total = self.total
        if total == 0:
            return {key: 0.0 for key in DIST_KEYS}
        return {key: self.counts[key] / total for key in DIST_KEYS}


def _empty_counts() -> dict[str, int]:
    return {key: 0 for key in DIST_KEYS}


def guess_distribution(sessions: Iterable[Session], puzzle_id: int) -> GuessDistribution:
    counts = _empty_counts()
    for session in sessions:
        if session.puzzle_id != puzzle_id:
            continue
        key = f"G{session.won_turn}" if session.won else "X"
        counts[key] += 1
    return GuessDistribution(counts=counts)


@dataclass(frozen=True)
class DifficultyEntry:
    puzzle_id: int
    word: str
    fail_count: int
    fail_fraction: float
    distribution: GuessDistribution


def difficulty_ranking(
    sessions: Iterable[Session], puzzles: Mapping[int, str]
) -> tuple[list[DifficultyEntry], int]:
    """Rank every puzzle from hardest to easiest by failed plays.

    Ties fall back to failure fraction, then to the answer word.  Sessions
    referencing a puzzle missing from ``puzzles`` are skipped and counted.
    The result covers every entry of ``puzzles`` exactly once, so the head
    of the list is the hard panel and the tail the easy one.
    """
    by_puzzle: dict[int, list[Session]] = {pid: [] for pid in puzzles}
    skipped = 0
    for session in sessions:
        if session.puzzle_id in by_puzzle:
            by_puzzle[session.puzzle_id].append(session)
        else:
            skipped += 1

    entries = []
    for pid, word in puzzles.items():
        dist = guess_distribution(by_puzzle[pid], pid)
        fails = dist.counts["X"]
        fraction = fails / dist.total if dist.total else 0.0
        entries.append(
            DifficultyEntry(
                puzzle_id=pid,
                word=word,
                fail_count=fails,
                fail_fraction=fraction,
                distribution=dist,
            )
        )
    entries.sort(key=lambda e: (-e.fail_count, -e.fail_fraction, e.word))
    return entries, skipped


def top_guesses_by_turn(
    sessions: Iterable[Session], turn: int, n: int = 15
) -> list[tuple[str, int]]:
    """The ``n`` most common words guessed at 1-based position ``turn``."""
    if not 1 <= turn <= MAX_GUESSES:
        raise ValueError(f"turn must be 1..{MAX_GUESSES}, got {turn}")
    counts = Counter(
        session.guesses[turn - 1]
        for session in sessions
        if len(session.guesses) >= turn
    )
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:n]


def unique_forms_timeline(sessions: Iterable[Session]) -> list[tuple[date, int]]:
    """Cumulative count of distinct guessed word forms, day by day."""
    new_forms_by_day: dict[date, int] = {}
    seen: set[str] = set()
    ordered = sorted(sessions, key=lambda s: s.date)
    if not ordered:
        return []
    for session in ordered:
        for guess in session.guesses:
            if guess not in seen:
                seen.add(guess)
                new_forms_by_day[session.date] = new_forms_by_day.get(session.date, 0) + 1

    first, last = ordered[0].date, ordered[-1].date
    timeline = []
    cumulative = 0
    day = first
    while day <= last:
        cumulative += new_forms_by_day.get(day, 0)
        timeline.append((day, cumulative))
        day += timedelta(days=1)
    return timeline


@dataclass
class PathGraph:
    """Weighted guess transitions for one puzzle: (from, to, turn) -> count."""

    nodes: frozenset[str]
    edges: dict[tuple[str, str, int], int]


def guess_path_graph(
    sessions: Iterable[Session], puzzle_id: int, min_weight: int = 1
) -> PathGraph:
    """Aggregate consecutive guess pairs into a weighted path graph.

    ``min_weight`` keeps only the paths taken at least that often, which is
    how the common-routes view of a hard word is produced.
    """
    weights: Counter = Counter()
    for session in sessions:
        if session.puzzle_id != puzzle_id:
            continue
        for i in range(len(session.guesses) - 1):
            weights[(session.guesses[i], session.guesses[i + 1], i + 1)] += 1

    edges = {key: w for key, w in weights.items() if w >= min_weight}
    nodes = frozenset(w for key in edges for w in key[:2])
    return PathGraph(nodes=nodes, edges=edges)


def export_dot(graph: PathGraph) -> str:
    """Render a path graph as a DOT digraph with deterministic ordering.

    Edge labels read "turn k ×w"; node identifiers are the guess words.
    """
    lines = ["digraph g {"]
    for node in sorted(graph.nodes):
        lines.append(f'  "{node}";')
    for (src, dst, turn), weight in sorted(
        graph.edges.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])
    ):
        lines.append(f'  "{src}" -> "{dst}" [label="turn {turn} ×{weight}", weight={weight}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_distribution_csv(dist: GuessDistribution, path: Path | str) -> None:
    _write_csv(
        path,
        ["bucket", "count", "fraction"],
        [[key, dist.counts[key], dist.fractions[key]] for key in DIST_KEYS],
    )


def write_difficulty_csv(entries: list[DifficultyEntry], path: Path | str) -> None:
    header = ["puzzle_id", "word", "fail_count", "fail_fraction", *DIST_KEYS]
    rows = [
        [e.puzzle_id, e.word, e.fail_count, e.fail_fraction]
        + [e.distribution.counts[key] for key in DIST_KEYS]
        for e in entries
    ]
    _write_csv(path, header, rows)


def write_top_guesses_csv(rows: list[tuple[str, int]], path: Path | str) -> None:
    _write_csv(path, ["word", "count"], [list(row) for row in rows])


def write_timeline_csv(rows: list[tuple[date, int]], path: Path | str) -> None:
    _write_csv(
        path,
        ["date", "unique_forms"],
        [[day.isoformat(), count] for day, count in rows],
    )


def _write_csv(path: Path | str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
