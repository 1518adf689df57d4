"""Core game mechanics: guess scoring, state transitions, share grids, daily scheduling.

Everything in this module is a pure function over immutable values, so it is
safe to call concurrently from any number of threads.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from datetime import date
from enum import Enum

__all__ = [
    "LATVIAN",
    "WORD_LENGTH",
    "MAX_GUESSES",
    "Alphabet",
    "TileState",
    "TileRow",
    "GameStatus",
    "GameState",
    "DailySchedule",
    "InvalidWordError",
    "GameStateError",
    "normalize",
    "parse_word",
    "score_guess",
    "apply_guess",
    "keyboard_hints",
    "render_share_grid",
    "daily_index",
]

WORD_LENGTH = 5
MAX_GUESSES = 6

GREEN_SQUARE = "\U0001f7e9"
YELLOW_SQUARE = "\U0001f7e8"
WHITE_SQUARE = "⬜"


class InvalidWordError(ValueError):
    """A token is not a playable word (wrong length or non-alphabet letter)."""


class GameStateError(RuntimeError):
    """An operation was applied to a game in the wrong phase."""


def normalize(text: str) -> str:
    """Return the canonical form of a token: uppercase, NFC-composed."""
    return unicodedata.normalize("NFC", text.upper())


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of single-code-point uppercase letters."""

    letters: tuple[str, ...]
    _members: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet letters must be distinct")
        for letter in self.letters:
            if len(letter) != 1:
                raise ValueError(f"alphabet letter must be a single code point: {letter!r}")
            if normalize(letter) != letter:
                raise ValueError(f"alphabet letter must be uppercase NFC: {letter!r}")
        object.__setattr__(self, "_members", frozenset(self.letters))

    def __contains__(self, letter: str) -> bool:
        return letter in self._members

    def __len__(self) -> int:
        return len(self.letters)


# The 33-letter Latvian alphabet. No Q, W, X or Y; diacritics are single
# code points in NFC.
LATVIAN = Alphabet(tuple("AĀBCČDEĒFGĢHIĪJKĶLĻMNŅOPRSŠTUŪVZŽ"))


def parse_word(text: str, alphabet: Alphabet = LATVIAN) -> str:
    """Normalize ``text`` and validate it as a playable word.

    Raises :class:`InvalidWordError` unless the result is exactly
    ``WORD_LENGTH`` letters, all drawn from ``alphabet``.
    """
    word = normalize(text)
    if len(word) != WORD_LENGTH:
        raise InvalidWordError(f"word must be {WORD_LENGTH} letters: {text!r}")
    for letter in word:
        if letter not in alphabet:
            raise InvalidWordError(f"letter {letter!r} not in alphabet: {text!r}")
    return word


class TileState(Enum):
    """Outcome of one guessed letter: the three hint colours."""

    GREEN = "green"
    ORANGE = "orange"
    GREY = "grey"


# Hint precedence: a letter's keyboard colour is the best it has achieved.
_TILE_RANK = {TileState.GREY: 0, TileState.ORANGE: 1, TileState.GREEN: 2}


@dataclass(frozen=True)
class TileRow:
    """One scored guess: the word and its five tile states."""

    guess: str
    tiles: tuple[TileState, ...]

    @property
    def all_green(self) -> bool:
        return all(t is TileState.GREEN for t in self.tiles)


def score_guess(answer: str, guess: str, alphabet: Alphabet = LATVIAN) -> TileRow:
    """Score ``guess`` against ``answer`` with two-pass duplicate handling.

    Pass one marks exact positional matches green and consumes those answer
    letters.  Pass two walks left to right, marking a letter orange while
    unconsumed occurrences of it remain in the answer, grey otherwise.  This
    caps green+orange marks per letter at the letter's count in the answer.
    """
    answer = parse_word(answer, alphabet)
    guess = parse_word(guess, alphabet)

    tiles = [TileState.GREY] * WORD_LENGTH
    remaining: dict[str, int] = {}
    for i, (g, a) in enumerate(zip(guess, answer)):
        if g == a:
            tiles[i] = TileState.GREEN
        else:
            remaining[a] = remaining.get(a, 0) + 1

    for i, g in enumerate(guess):
        if tiles[i] is TileState.GREEN:
            continue
        if remaining.get(g, 0) > 0:
            tiles[i] = TileState.ORANGE
            remaining[g] -= 1

    return TileRow(guess=guess, tiles=tuple(tiles))


class GameStatus(Enum):
    IN_PROGRESS = "in_progress"
    WON = "won"
    LOST = "lost"


@dataclass(frozen=True)
class GameState:
    """A game in progress or finished: the answer and the rows played so far.

    ``status`` is derived from the rows, so a state can never claim an
    outcome its rows do not support.
    """

    puzzle_id: int
    answer: str
    rows: tuple[TileRow, ...] = ()

    def __post_init__(self) -> None:
        if self.puzzle_id < 0:
            raise ValueError("puzzle_id must be non-negative")
        if len(self.rows) > MAX_GUESSES:
            raise ValueError(f"at most {MAX_GUESSES} rows allowed")

    @property
    def status(self) -> GameStatus:
        if self.rows and self.rows[-1].all_green:
            return GameStatus.WON
        if len(self.rows) == MAX_GUESSES:
            return GameStatus.LOST
        return GameStatus.IN_PROGRESS

    @property
    def guesses(self) -> tuple[str, ...]:
        return tuple(row.guess for row in self.rows)


def apply_guess(state: GameState, guess: str, alphabet: Alphabet = LATVIAN) -> GameState:
    """Play one guess, returning the successor state.

    Raises :class:`GameStateError` if the game is already won or lost.
    """
    if state.status is not GameStatus.IN_PROGRESS:
        raise GameStateError(f"game is already {state.status.value}")
    row = score_guess(state.answer, guess, alphabet)
    return GameState(puzzle_id=state.puzzle_id, answer=state.answer, rows=state.rows + (row,))


def keyboard_hints(rows: tuple[TileRow, ...] | list[TileRow]) -> dict[str, TileState]:
    """Aggregate the best tile state seen for every guessed letter.

    Precedence is green > orange > grey; letters never guessed are absent.
    """
    hints: dict[str, TileState] = {}
    for row in rows:
        for letter, tile in zip(row.guess, row.tiles):
            best = hints.get(letter)
            if best is None or _TILE_RANK[tile] > _TILE_RANK[best]:
                hints[letter] = tile
    return hints


_SQUARES = {
    TileState.GREEN: GREEN_SQUARE,
    TileState.ORANGE: YELLOW_SQUARE,
    TileState.GREY: WHITE_SQUARE,
}


def render_share_grid(state: GameState, title: str) -> str:
    """Render a finished game as spoiler-free share text.

    Header line is ``<title> <puzzle_id> <score>/6`` with ``X`` for a loss,
    followed by one emoji-square line per played row.  The grid itself never
    contains letters, so the result reveals progress but not the word.
    """
    if state.status is GameStatus.IN_PROGRESS:
        raise GameStateError("cannot share an unfinished game")
    score = str(len(state.rows)) if state.status is GameStatus.WON else "X"
    lines = [f"{title} {state.puzzle_id} {score}/{MAX_GUESSES}"]
    for row in state.rows:
        lines.append("".join(_SQUARES[t] for t in row.tiles))
    return "\n".join(lines)


@dataclass(frozen=True)
class DailySchedule:
    """Positional daily-word schedule: day N of play selects word N, wrapping."""

    start_date: date
    main_list_length: int

    def __post_init__(self) -> None:
        if self.main_list_length < 1:
            raise ValueError("main_list_length must be >= 1")


def daily_index(day: date, schedule: DailySchedule) -> int:
    """Index of the daily word for ``day``: days elapsed mod list length.

    Deterministic, identical for every player, and periodic with the list
    length.  Raises ``ValueError`` for dates before the schedule starts.
    """
    elapsed = (day - schedule.start_date).days
    if elapsed < 0:
        raise ValueError(f"{day.isoformat()} is before the schedule start")
    return elapsed % schedule.main_list_length
