#!/usr/bin/env python3
"""Walk through one game with the engine: scoring, hints, the share grid.

Run: python demo/play_game.py
"""

from vardle.engine import (
    GameState,
    apply_guess,
    keyboard_hints,
    render_share_grid,
    score_guess,
)

SQUARES = {"green": "🟩", "orange": "🟨", "grey": "⬜"}


def show(row):
    tiles = "".join(SQUARES[t.value] for t in row.tiles)
    print(f"  {row.guess}   {tiles}")


# Score a single guess: two-pass rules, duplicates capped by the answer.
print("Scoring SAULE against the answer SIENA:")
show(score_guess("SIENA", "SAULE"))

print("\nDuplicate letters: LELLE has three L and two E, SAULE has one of each:")
show(score_guess("SAULE", "LELLE"))

# Play a full game.
print("\nA three-guess game against SIENA:")
state = GameState(puzzle_id=42, answer="SIENA")
for guess in ["SAULE", "DIENA", "SIENA"]:
    state = apply_guess(state, guess)
    show(state.rows[-1])
print(f"status: {state.status.value}")

# Keyboard hints aggregate the best state per letter.
hints = keyboard_hints(state.rows)
print("\nKeyboard hints so far:")
print("  " + "  ".join(f"{letter}:{tile.value}" for letter, tile in sorted(hints.items())))

# The spoiler-free share grid.
print("\nShare text:")
print(render_share_grid(state, "Vārdulis"))
