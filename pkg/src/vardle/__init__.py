"""Self-hostable daily word-guessing game for Latvian.

Modules: :mod:`vardle.engine` (game rules), :mod:`vardle.wordlists`
(corpus-to-list pipeline), :mod:`vardle.analytics` (session-log reports),
:mod:`vardle.service` (HTTP API), :mod:`vardle.cli` (operator commands).
"""

from .engine import (
    LATVIAN,
    Alphabet,
    DailySchedule,
    GameState,
    GameStatus,
    TileRow,
    TileState,
    apply_guess,
    daily_index,
    keyboard_hints,
    parse_word,
    render_share_grid,
    score_guess,
)

__version__ = "0.1.0"

__all__ = [
    "LATVIAN",
    "Alphabet",
    "DailySchedule",
    "GameState",
    "GameStatus",
    "TileRow",
    "TileState",
    "apply_guess",
    "daily_index",
    "keyboard_hints",
    "parse_word",
    "render_share_grid",
    "score_guess",
    "__version__",
]
