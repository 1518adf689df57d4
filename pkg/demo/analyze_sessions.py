#!/usr/bin/env python3
"""Run every analytics report over a synthetic session log.

Run: python demo/analyze_sessions.py
"""

import random
from datetime import date, timedelta

from vardle.analytics import (
    Session,
    difficulty_ranking,
    export_dot,
    guess_distribution,
    guess_path_graph,
    top_guesses_by_turn,
    unique_forms_timeline,
)

ANSWERS = {0: "SAULE", 1: "CĪŅAS", 2: "TIESA"}
POOL = ["SIENA", "DIENA", "LIEPA", "KASTE", "MAIZE", "PIENS", "SAITE", "SKOLA"]
START = date(2022, 1, 28)


def synth_sessions(count: int = 200, seed: int = 3) -> list[Session]:
    rng = random.Random(seed)
    sessions = []
    for i in range(count):
        pid = rng.choice(list(ANSWERS))
        answer = ANSWERS[pid]
        # CĪŅAS is made deliberately hard: most sessions fail or win late.
        hard = pid == 1
        if rng.random() < (0.45 if hard else 0.85):
            turn = rng.randint(3, 6) if hard else rng.randint(1, 5)
            guesses = [rng.choice(POOL) for _ in range(turn - 1)] + [answer]
            won_turn = turn
        else:
            guesses, won_turn = [rng.choice(POOL) for _ in range(6)], None
        sessions.append(
            Session(
                puzzle_id=pid,
                date=START + timedelta(days=pid),
                client_id=f"player-{i}",
                guesses=tuple(guesses),
                won_turn=won_turn,
            )
        )
    return sessions


def main() -> None:
    sessions = synth_sessions()

    print("Guess distribution for puzzle 1 (the hard one):")
    dist = guess_distribution(sessions, 1)
    for key, count in dist.counts.items():
        print(f"  {key}: {count:3d}  ({dist.fractions[key]:.0%})")

    print("\nDifficulty ranking (hardest first):")
    ranking, _ = difficulty_ranking(sessions, ANSWERS)
    for entry in ranking:
        print(
            f"  #{entry.puzzle_id} {entry.word}: {entry.fail_count} fails "
            f"({entry.fail_fraction:.0%})"
        )

    print("\nTop 5 opening guesses:")
    for word, count in top_guesses_by_turn(sessions, turn=1, n=5):
        print(f"  {word}: {count}")

    print("\nUnique word forms over time:")
    for day, total in unique_forms_timeline(sessions):
        print(f"  {day}: {total}")

    print("\nMost common guess paths into CĪŅAS (weight ≥ 3), as DOT:")
    print(export_dot(guess_path_graph(sessions, 1, min_weight=3)))


if __name__ == "__main__":
    main()
