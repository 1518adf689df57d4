from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

import pytest

from vardle.analytics import Session
from vardle.engine import LATVIAN

# A handful of real five-letter Latvian words keeps the fixtures honest;
# the rest are generated over the alphabet with a duplicate-letter bias so
# scoring edge cases get exercised.
REAL_WORDS = [
    "SAULE", "SIENA", "TIESA", "DIENA", "LAIME", "PIENS", "MAIZE", "LIEPA",
    "SAITE", "KASTE", "ĀBOLS", "KAĶIS", "IELAS", "SKOLA", "LAIKS", "TAUKI",
    "LIETU", "PUSEI", "TĒRPU", "TĪRĪT", "DARĀT", "ILGĀK", "GROZĀ", "SAVĀM",
    "VĒRTS", "ZEMĒM", "IELEJ", "GARĀM", "LABAS", "VĒLĀK", "TĀPAT", "JĀŅEM",
    "FLĪŽU", "RAIŅA", "BAUDU", "MAIGI", "BIEŽA", "CELTA", "PLAŠA", "ZINOT",
    "KAKLU", "CĪŅAS", "ŠUVES", "PUĶES", "LELLE", "KOKSS", "DZĪVE", "RUDZI",
]


def make_word_fixture(count: int, seed: int = 7) -> list[str]:
    """Deterministic list of distinct valid words, duplicate-letter heavy."""
    rng = random.Random(seed)
    words = list(dict.fromkeys(REAL_WORDS))
    seen = set(words)
    letters = LATVIAN.letters
    while len(words) < count:
        # Half the generated words reuse a letter to stress duplicate logic.
        if rng.random() < 0.5:
            pool = rng.sample(letters, 4)
            pool.append(rng.choice(pool))
            rng.shuffle(pool)
        else:
            pool = rng.sample(letters, 5)
        word = "".join(pool)
        if word not in seen:
            seen.add(word)
            words.append(word)
    return words[:count]


@pytest.fixture(scope="session")
def word_fixture_200() -> list[str]:
    return make_word_fixture(200)


# ---------------------------------------------------------------------------
# Planted corpus: a synthetic 1,000-line corpus whose exact token multiset is
# known to the generator, so pipeline outputs can be checked against ground
# truth that never touches the tokenizer or counters under test.

# Five-letter candidate counts (CHINA is letter-valid but not in the lexicon).
PLANTED_CANDIDATES = {
    "SAULE": 400, "SIENA": 360, "TIESA": 330, "DIENA": 300, "LAIME": 280,
    "CHINA": 260, "PIENS": 240, "MAIZE": 220, "LIEPA": 200, "SAITE": 180,
    "KASTE": 160, "ĀBOLS": 160, "KAĶIS": 140, "IELAS": 120, "SKOLA": 100,
    "LAIKS": 90, "TAUKI": 80, "PUĶES": 70, "CĪŅAS": 60, "ŠUVES": 50,
}

# Tokens the per-length report must still count: wrong lengths, or a letter
# outside the alphabet (WORLD).
PLANTED_NOISE = {
    "IR": 250, "UN": 200, "ES": 150, "WORLD": 90, "LATVIJA": 70,
    "VĀRDNĪCA": 40, "PUĶE": 30,
}

# Raw junk the tokenizer must drop entirely.
DROPPED_JUNK = ["e-pasts", "10.000", "—", "2022", "..."]

_WRAPPERS = ["{}", "{},", "({}", "«{}»", "{}.", '"{}"', "{}!", "{};"]


@dataclass
class PlantedCorpus:
    path: Path
    candidate_freq: dict[str, int]
    all_tokens: Counter
    lexicon: frozenset[str]

    @property
    def per_length(self) -> dict[int, tuple[int, int]]:
        by_len: dict[int, Counter] = {}
        for token, count in self.all_tokens.items():
            by_len.setdefault(len(token), Counter())[token] = count
        return {
            n: (len(c), sum(c.values())) for n, c in sorted(by_len.items())
        }

    def ranked_lexicon_approved(self) -> list[str]:
        ranked = sorted(
            self.candidate_freq.items(), key=lambda kv: (-kv[1], kv[0])
        )
        return [w for w, _ in ranked if w in self.lexicon]


def make_planted_corpus(path: Path, lines: int = 1000, seed: int = 11) -> PlantedCorpus:
    rng = random.Random(seed)
    tokens: list[str] = []
    for word, count in {**PLANTED_CANDIDATES, **PLANTED_NOISE}.items():
        # Plant the lowercase surface form; the pipeline must normalize it.
        tokens.extend([word.lower()] * count)
    tokens.extend(DROPPED_JUNK * 20)
    rng.shuffle(tokens)

    buckets: list[list[str]] = [[] for _ in range(lines)]
    for i, token in enumerate(tokens):
        if rng.random() < 0.2:
            token = rng.choice(_WRAPPERS).format(token)
        buckets[i % lines].append(token)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for bucket in buckets:
            handle.write(" ".join(bucket) + "\n")

    all_tokens = Counter()
    for word, count in {**PLANTED_CANDIDATES, **PLANTED_NOISE}.items():
        all_tokens[word] = count
    lexicon = frozenset(PLANTED_CANDIDATES) - {"CHINA"}
    return PlantedCorpus(
        path=path,
        candidate_freq=dict(PLANTED_CANDIDATES),
        all_tokens=all_tokens,
        lexicon=lexicon,
    )


@pytest.fixture
def planted_corpus(tmp_path) -> PlantedCorpus:
    return make_planted_corpus(tmp_path / "corpus.txt")


# ---------------------------------------------------------------------------
# Synthetic sessions: valid complete games with known shape, for checking
# the analytics against naive recounts.

def make_sessions(
    count: int,
    puzzle_answers: dict[int, str],
    guess_pool: list[str],
    start: date = date(2022, 1, 28),
    seed: int = 23,
) -> list[Session]:
    rng = random.Random(seed)
    pids = sorted(puzzle_answers)
    sessions = []
    for i in range(count):
        pid = rng.choice(pids)
        answer = puzzle_answers[pid]
        wrong = [w for w in guess_pool if w != answer]
        if rng.random() < 0.7:
            turn = rng.randint(1, 6)
            guesses = [rng.choice(wrong) for _ in range(turn - 1)] + [answer]
            won_turn = turn
        else:
            guesses = [rng.choice(wrong) for _ in range(6)]
            won_turn = None
        sessions.append(
            Session(
                puzzle_id=pid,
                date=start + timedelta(days=pid),
                client_id=f"c{i:05d}",
                guesses=tuple(guesses),
                won_turn=won_turn,
            )
        )
    return sessions


@pytest.fixture(scope="session")
def synthetic_sessions(word_fixture_200) -> tuple[list[Session], dict[int, str]]:
    puzzle_answers = {pid: word_fixture_200[pid] for pid in range(10)}
    sessions = make_sessions(1000, puzzle_answers, word_fixture_200[10:80])
    return sessions, puzzle_answers


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    rows = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", None) == "call" and "test_acceptance" in report.nodeid:
                rows.append((report.nodeid.split("::")[-1], outcome))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, outcome in rows:
            status = "PASS" if outcome == "passed" else "FAIL"
            terminalreporter.write_line(f"{status}  {name}")
