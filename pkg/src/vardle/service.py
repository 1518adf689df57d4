"""HTTP backend: daily puzzle, server-side guess scoring, session logging, stats.

The answer for a puzzle never leaves the server while a session is live;
clients see only tile colours.  Completed sessions are appended to a JSON
Lines log, one fsynced line per game, which is the input to the analytics
module.
"""

from __future__ import annotations

import os
import secrets
import threading
from dataclasses import dataclass, field
from datetime import date, datetime
from pathlib import Path
from typing import Callable, Mapping
from urllib.parse import quote
from zoneinfo import ZoneInfo

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .analytics import (
    Session,
    guess_distribution,
    parse_session_log,
    session_to_json,
    top_guesses_by_turn,
)
from .engine import (
    WORD_LENGTH,
    DailySchedule,
    GameState,
    GameStatus,
    apply_guess,
    daily_index,
    normalize,
    render_share_grid,
)
from .wordlists import WordLists, load_word_lists

__all__ = [
    "ServiceConfig",
    "GameService",
    "create_app",
    "thesaurus_link",
]

THESAURUS_BASE = "https://tezaurs.lv/"

ENV_LISTS_DIR = "VARDLE_LISTS_DIR"
ENV_LOG_PATH = "VARDLE_LOG_PATH"
ENV_START_DATE = "VARDLE_START_DATE"
ENV_TZ = "VARDLE_TZ"
ENV_BIND_ADDR = "VARDLE_BIND_ADDR"
ENV_STATIC_DIR = "VARDLE_STATIC_DIR"


def thesaurus_link(word: str) -> str:
    """Link to the word's entry in the online dictionary and thesaurus."""
    return THESAURUS_BASE + quote(normalize(word).lower())


@dataclass(frozen=True)
class ServiceConfig:
    lists_dir: Path
    log_path: Path
    start_date: date
    timezone: str = "Europe/Riga"
    bind_addr: str = "127.0.0.1:8000"
    share_title: str = "Vārdulis"
    static_dir: Path | None = None  # optional web client bundle to serve at /

    @classmethod
    def from_env(cls, env: Mapping[str, str] = os.environ) -> "ServiceConfig":
        if ENV_LISTS_DIR not in env:
            raise ValueError(f"{ENV_LISTS_DIR} is required")
        static = env.get(ENV_STATIC_DIR)
        return cls(
            lists_dir=Path(env[ENV_LISTS_DIR]),
            log_path=Path(env.get(ENV_LOG_PATH, "sessions.jsonl")),
            start_date=date.fromisoformat(env.get(ENV_START_DATE, "2022-01-28")),
            timezone=env.get(ENV_TZ, "Europe/Riga"),
            bind_addr=env.get(ENV_BIND_ADDR, "127.0.0.1:8000"),
            static_dir=Path(static) if static else None,
        )


@dataclass
class _TokenRecord:
    token: str
    client_id: str
    puzzle_id: int
    day: date
    state: GameState
    logged: bool = False
    lock: threading.Lock = field(default_factory=threading.Lock)


class GameService:
    """All server state: loaded lists, live session tokens, the session log.

    Per-token transitions run under the token's own lock, so two concurrent
    guesses cannot both claim the same turn; log appends serialize on a
    single lock and each record is one flushed, fsynced write.
    """

    def __init__(
        self,
        config: ServiceConfig,
        lists: WordLists | None = None,
        clock: Callable[[], datetime] | None = None,
    ):
        self.config = config
        self.tz = ZoneInfo(config.timezone)
        self.lists = lists if lists is not None else load_word_lists(config.lists_dir)
        if not self.lists.main:
            raise ValueError("main word list is empty")
        self.valid_guesses = self.lists.valid_guesses()
        self.schedule = DailySchedule(
            start_date=config.start_date, main_list_length=len(self.lists.main)
        )
        self._clock = clock or (lambda: datetime.now(self.tz))
        self._tokens: dict[str, _TokenRecord] = {}
        self._registry_lock = threading.Lock()
        self._log_lock = threading.Lock()
        self._logged_pairs: set[tuple[str, int]] = set()
        if Path(config.log_path).exists():
            sessions, _ = parse_session_log(config.log_path)
            self._logged_pairs = {(s.client_id, s.puzzle_id) for s in sessions}

    def today(self) -> date:
        return self._clock().astimezone(self.tz).date()

    def puzzle_for(self, day: date) -> int:
        return daily_index(day, self.schedule)

    def answer_for(self, puzzle_id: int) -> str:
        return self.lists.main[puzzle_id % len(self.lists.main)]

    def open_session(self, client_id: str | None) -> _TokenRecord:
        day = self.today()
        puzzle_id = self.puzzle_for(day)
        record = _TokenRecord(
            token=secrets.token_urlsafe(16),
            client_id=client_id or secrets.token_hex(8),
            puzzle_id=puzzle_id,
            day=day,
            state=GameState(puzzle_id=puzzle_id, answer=self.answer_for(puzzle_id)),
        )
        with self._registry_lock:
            self._tokens[record.token] = record
        return record

    def get_record(self, token: str) -> _TokenRecord:
        record = self._tokens.get(token)
        if record is None:
            raise KeyError(token)
        return record

    def append_session(self, record: _TokenRecord) -> bool:
        """Log the finished game once; returns True if it was already logged."""
        status = record.state.status
        session = Session(
            puzzle_id=record.puzzle_id,
            date=record.day,
            client_id=record.client_id,
            guesses=record.state.guesses,
            won_turn=len(record.state.rows) if status is GameStatus.WON else None,
        )
        pair = (record.client_id, record.puzzle_id)
        with self._log_lock:
            if record.logged or pair in self._logged_pairs:
                return True
            line = session_to_json(session) + "\n"
            with open(self.config.log_path, "a", encoding="utf-8") as handle:
                handle.write(line)
                handle.flush()
                os.fsync(handle.fileno())
            record.logged = True
            self._logged_pairs.add(pair)
            return False

    def load_sessions(self) -> list[Session]:
        if not Path(self.config.log_path).exists():
            return []
        sessions, _ = parse_session_log(self.config.log_path)
        return sessions


class _OpenSessionRequest(BaseModel):
    client_id: str | None = None


class _GuessRequest(BaseModel):
    guess: str


def create_app(
    config: ServiceConfig,
    lists: WordLists | None = None,
    clock: Callable[[], datetime] | None = None,
) -> FastAPI:
    service = GameService(config, lists=lists, clock=clock)
    app = FastAPI(title="vardle")
    app.state.service = service

    @app.get("/api/puzzle/today")
    def get_today() -> dict:
        day = service.today()
        return {"puzzle_id": service.puzzle_for(day), "date": day.isoformat()}

    @app.post("/api/session")
    def open_session(payload: _OpenSessionRequest | None = None) -> dict:
        client_id = payload.client_id if payload else None
        record = service.open_session(client_id)
        return {"token": record.token}

    @app.post("/api/session/{token}/guess")
    def submit_guess(token: str, payload: _GuessRequest) -> dict:
        try:
            record = service.get_record(token)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session token")
        with record.lock:
            state = record.state
            if state.status is not GameStatus.IN_PROGRESS:
                raise HTTPException(status_code=409, detail="session already finished")
            word = normalize(payload.guess.strip())
            if len(word) != WORD_LENGTH:
                raise HTTPException(status_code=422, detail="guess must be 5 letters")
            turn = len(state.rows) + 1
            if word not in service.valid_guesses:
                return {
                    "valid": False,
                    "reason": "not-in-word-list",
                    "turn": turn,
                    "status": state.status.value,
                }
            new_state = apply_guess(state, word)
            record.state = new_state
            row = new_state.rows[-1]
            return {
                "valid": True,
                "tiles": [tile.value for tile in row.tiles],
                "turn": len(new_state.rows) + 1,
                "status": new_state.status.value,
            }

    @app.post("/api/session/{token}/finalize")
    def finalize(token: str) -> dict:
        try:
            record = service.get_record(token)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session token")
        with record.lock:
            state = record.state
            if state.status is GameStatus.IN_PROGRESS:
                raise HTTPException(status_code=409, detail="session still in progress")
            already = service.append_session(record)
            return {
                "answer": state.answer,
                "thesaurus_url": thesaurus_link(state.answer),
                "share_text": render_share_grid(state, service.config.share_title),
                "already_logged": already,
            }

    @app.get("/api/stats/{puzzle_id}")
    def get_stats(puzzle_id: int) -> dict:
        sessions = service.load_sessions()
        dist = guess_distribution(sessions, puzzle_id)
        payload = {
            "puzzle_id": puzzle_id,
            "counts": dist.counts,
            "fractions": dist.fractions,
        }
        # Word-level data stays hidden while the puzzle is today's: openers
        # would spoil the current game.
        if puzzle_id != service.puzzle_for(service.today()):
            own = [s for s in sessions if s.puzzle_id == puzzle_id]
            payload["top_openers"] = [
                {"word": word, "count": count}
                for word, count in top_guesses_by_turn(own, turn=1)
            ]
        return payload

    if config.static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="webui")

    return app
