#!/usr/bin/env python3
"""Build main/secondary word lists from a toy corpus, end to end.

Writes a small synthetic corpus, a lexicon and an inflection table under
demo_data/, runs the full pipeline, and leaves the built lists in
demo_data/lists/ — ready for `vardle serve --lists-dir demo_data/lists`.

Run: python demo/build_word_lists.py
"""

import random
from pathlib import Path

from vardle.wordlists import (
    build_lists,
    count_frequencies,
    iter_corpus_lines,
    length_distribution_report,
    load_inflections,
    load_lexicon,
    merge_inflections,
    tokenize_stream,
    write_word_list,
)

BASE = Path(__file__).parent / "demo_data"
WORDS = {
    "saule": 90, "siena": 70, "tiesa": 55, "diena": 50, "laime": 45,
    "china": 40,  # frequent but foreign: the lexicon knocks it out
    "piens": 35, "maize": 30, "liepa": 25, "saite": 20, "kaste": 15,
    "skola": 12, "cīņas": 10, "šuves": 8, "puķes": 6,
}
FILLER = ["ir", "un", "es", "tā", "bet", "kā", "vārdnīca", "e-pasts", "2022"]


def write_inputs() -> None:
    rng = random.Random(7)
    corpus_dir = BASE / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    tokens = [w for w, n in WORDS.items() for _ in range(n)]
    tokens += FILLER * 30
    rng.shuffle(tokens)
    with open(corpus_dir / "toy.txt", "w", encoding="utf-8") as fh:
        for i in range(0, len(tokens), 6):
            fh.write(" ".join(tokens[i : i + 6]) + ".\n")

    lexicon = sorted(set(WORDS) - {"china"})
    (BASE / "lexicon.txt").write_text("".join(w + "\n" for w in lexicon), "utf-8")
    (BASE / "inflections.tsv").write_text(
        "puķe\tpuķes\npuķe\tpuķei\npuķe\tpuķēm\nlaiks\tlaiku\nlaiks\tlaika\n", "utf-8"
    )


def main() -> None:
    write_inputs()
    print(f"inputs under {BASE}/")

    stats = count_frequencies(
        tokenize_stream(iter_corpus_lines(BASE / "corpus" / "toy.txt"))
    )
    print("\nPer-length distribution (n, unique, total):")
    for row in length_distribution_report(stats):
        print(f"  {row}")

    lexicon = load_lexicon(BASE / "lexicon.txt")
    lists, review = build_lists(stats, lexicon, k_main=8, k_secondary=50)
    print(f"\nmain list ({len(lists.main)} words, frequency order): {lists.main}")
    print(f"review report (lexicon rejects that ranked high): {review}")

    table, _ = load_inflections(BASE / "inflections.tsv")
    lists = merge_inflections(lists, table)
    print(f"secondary after inflection merge ({len(lists.secondary)}): {sorted(lists.secondary)}")

    out = BASE / "lists"
    out.mkdir(exist_ok=True)
    write_word_list(lists.main, out / "main.txt")
    write_word_list(sorted(lists.secondary), out / "secondary.txt")
    print(f"\nlists written to {out}/ — try: vardle serve --lists-dir {out}")


if __name__ == "__main__":
    main()
