"""Word-list construction: from raw corpora to the main and secondary lists.

The pipeline is: tokenize corpus text, count candidate frequencies, rank by
frequency, cross-reference a lexicon, then widen the secondary list with
precomputed inflected forms.  The main list holds the daily answers in
frequency order; the secondary list holds every additionally valid guess.
Lexicon-rejected words that ranked high enough for the main list are not
dropped silently: they are surfaced in a review report for a human pass.

All counts use code-point lengths of NFC-normalized tokens; Latvian
diacritics compose to single code points, so this equals grapheme length
for every word the game can accept.
"""

from __future__ import annotations

import csv
import hashlib
import json
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator

from .engine import LATVIAN, WORD_LENGTH, Alphabet, normalize

__all__ = [
    "MAIN_FILENAME",
    "SECONDARY_FILENAME",
    "REVIEW_FILENAME",
    "LENGTH_CSV_FILENAME",
    "META_FILENAME",
    "MAX_TRACKED_LENGTH",
    "CorpusStats",
    "WordLists",
    "DecodeStats",
    "iter_corpus_lines",
    "tokenize_stream",
    "is_candidate",
    "count_frequencies",
    "build_lists",
    "merge_inflections",
    "length_distribution_report",
    "load_lexicon",
    "load_inflections",
    "load_word_lists",
    "check_lists",
    "write_word_list",
    "read_word_list",
    "write_review_report",
    "write_length_csv",
    "write_build_meta",
    "file_digest",
]

MAIN_FILENAME = "main.txt"
SECONDARY_FILENAME = "secondary.txt"
REVIEW_FILENAME = "review_report.txt"
LENGTH_CSV_FILENAME = "length_distribution.csv"
META_FILENAME = "build_meta.json"

# Per-length distributions are reported for n = 1..20; longer tokens are
# corpus noise and are not tracked.
MAX_TRACKED_LENGTH = 20


@dataclass
class DecodeStats:
    """Counter for input lines that failed to decode and were skipped."""

    bad_lines: int = 0


def iter_corpus_lines(path: Path | str, stats: DecodeStats | None = None) -> Iterator[str]:
    """Yield UTF-8 lines from ``path``, skipping (and counting) bad ones."""
    with open(path, "rb") as handle:
        for raw in handle:
            try:
                yield raw.decode("utf-8")
            except UnicodeDecodeError:
                if stats is not None:
                    stats.bad_lines += 1


def _clean_token(raw: str) -> str | None:
    """Strip edge punctuation; reject tokens with interior non-letters."""
    token = unicodedata.normalize("NFC", raw)
    start, end = 0, len(token)
    while start < end and not token[start].isalpha():
        start += 1
    while end > start and not token[end - 1].isalpha():
        end -= 1
    token = token[start:end]
    if not token or not token.isalpha():
        return None
    return normalize(token)


def tokenize_stream(lines: Iterable[str]) -> Iterator[str]:
    """Split lines on whitespace and emit normalized (uppercase NFC) tokens.

    Leading and trailing non-letter characters are stripped from each token;
    tokens with interior non-letter characters (digits, hyphens, ...) are
    dropped outright.
    """
    for line in lines:
        for raw in line.split():
            token = _clean_token(raw)
            if token is not None:
                yield token


def is_candidate(token: str, alphabet: Alphabet = LATVIAN) -> bool:
    """True iff ``token`` is exactly five letters, all from ``alphabet``.

    The alphabet check is what removes foreign-lettered tokens; words that
    are letter-valid but not Latvian (frequent foreign names, say) survive
    this filter and are caught later by the lexicon cross-reference.
    """
    return len(token) == WORD_LENGTH and all(letter in alphabet for letter in token)


@dataclass
class CorpusStats:
    """Candidate-token frequencies plus per-length counts over all tokens.

    ``length_tokens`` keeps a counter per token length so that stats from
    corpus files processed in parallel can be merged without losing the
    unique-form counts; ``per_length`` derives the (unique, total) pairs.
    """

    token_frequencies: Counter = field(default_factory=Counter)
    length_tokens: dict[int, Counter] = field(default_factory=dict)

    @property
    def per_length(self) -> dict[int, tuple[int, int]]:
        return {
            n: (len(tokens), sum(tokens.values()))
            for n, tokens in sorted(self.length_tokens.items())
        }

    def update(self, other: CorpusStats) -> None:
        """Merge another stats object into this one (associative)."""
        self.token_frequencies.update(other.token_frequencies)
        for n, tokens in other.length_tokens.items():
            self.length_tokens.setdefault(n, Counter()).update(tokens)


def count_frequencies(tokens: Iterable[str], alphabet: Alphabet = LATVIAN) -> CorpusStats:
    """Count a normalized token stream into :class:`CorpusStats`.

    Candidate (five-letter, alphabet-only) tokens feed the frequency table;
    every token feeds the per-length distribution.
    """
    stats = CorpusStats()
    for token in tokens:
        n = len(token)
        if 1 <= n <= MAX_TRACKED_LENGTH:
            stats.length_tokens.setdefault(n, Counter())[token] += 1
        if is_candidate(token, alphabet):
            stats.token_frequencies[token] += 1
    return stats


@dataclass
class WordLists:
    """The two play lists: daily answers (ordered) and extra valid guesses."""

    main: list[str]
    secondary: set[str]
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        overlap = set(self.main) & self.secondary
        if overlap:
            raise ValueError(f"main and secondary lists overlap: {sorted(overlap)[:5]}")

    def valid_guesses(self) -> frozenset[str]:
        """Every word accepted as a guess: main ∪ secondary."""
        return frozenset(self.main) | self.secondary


def _ranked_candidates(stats: CorpusStats) -> list[tuple[str, int]]:
    # Descending frequency; ties broken lexicographically for determinism.
    return sorted(stats.token_frequencies.items(), key=lambda kv: (-kv[1], kv[0]))


def build_lists(
    stats: CorpusStats,
    lexicon: Iterable[str],
    k_main: int = 1500,
    k_secondary: int = 15000,
) -> tuple[WordLists, list[tuple[str, int]]]:
    """Build the main and secondary lists from corpus stats and a lexicon.

    The main list takes the ``k_main`` most frequent lexicon-approved
    candidates, in frequency order.  Candidates that ranked inside the main
    region but are missing from the lexicon go to the review report instead
    of the list; the next approved candidates fill their places.  The
    secondary list then takes the following ``k_secondary`` approved
    candidates, with no manual-review surface.

    Returns the lists plus the review report as (word, count) pairs.
    """
    if k_main <= 0 or k_secondary <= 0:
        raise ValueError("k_main and k_secondary must be positive")
    lexicon = set(lexicon)

    main: list[str] = []
    secondary: set[str] = set()
    review: list[tuple[str, int]] = []
    for word, count in _ranked_candidates(stats):
        if len(main) < k_main:
            if word in lexicon:
                main.append(word)
            else:
                review.append((word, count))
        elif len(secondary) < k_secondary:
            if word in lexicon:
                secondary.add(word)
        else:
            break

    warnings = []
    if not stats.token_frequencies:
        warnings.append("no candidate tokens in corpus statistics")
    elif not main:
        warnings.append("no lexicon-approved candidates for the main list")
    metadata = {"k_main": k_main, "k_secondary": k_secondary, "warnings": warnings}
    return WordLists(main=main, secondary=secondary, metadata=metadata), review


def merge_inflections(
    lists: WordLists,
    table: dict[str, set[str]],
    alphabet: Alphabet = LATVIAN,
) -> WordLists:
    """Widen the secondary list with five-letter inflected forms.

    Forms already serving as daily answers stay out of the secondary list.
    Applying the same table twice is a no-op the second time.
    """
    forms = {
        form
        for lemma_forms in table.values()
        for form in lemma_forms
        if is_candidate(form, alphabet)
    }
    secondary = lists.secondary | (forms - set(lists.main))
    metadata = dict(lists.metadata)
    metadata["inflections"] = {"lemmas": len(table), "candidate_forms": len(forms)}
    return WordLists(main=list(lists.main), secondary=secondary, metadata=metadata)


def length_distribution_report(stats: CorpusStats) -> list[tuple[int, int, int]]:
    """Rows of (length, unique forms, total occurrences), ascending by length."""
    return [(n, unique, total) for n, (unique, total) in stats.per_length.items()]


def load_lexicon(path: Path | str) -> frozenset[str]:
    """Read a one-entry-per-line lexicon file into a normalized set."""
    entries = set()
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            entry = normalize(line.strip())
            if entry:
                entries.add(entry)
    return frozenset(entries)


def load_inflections(path: Path | str) -> tuple[dict[str, set[str]], int]:
    """Read a tab-separated ``lemma<TAB>form`` table.

    Records with a malformed shape, a non-alphabetic field, or a lemma
    outside 3..8 letters are skipped; the skip count is returned alongside
    the table.
    """
    table: dict[str, set[str]] = defaultdict(set)
    skipped = 0
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                skipped += 1
                continue
            lemma, form = normalize(parts[0].strip()), normalize(parts[1].strip())
            if not lemma.isalpha() or not form.isalpha() or not 3 <= len(lemma) <= 8:
                skipped += 1
                continue
            table[lemma].add(form)
    return dict(table), skipped


def check_lists(lists: WordLists, alphabet: Alphabet = LATVIAN) -> None:
    """Raise ``ValueError`` if any list entry is not a valid candidate word."""
    for word in list(lists.main) + sorted(lists.secondary):
        if not is_candidate(word, alphabet):
            raise ValueError(f"invalid word in lists: {word!r}")


def write_word_list(words: Iterable[str], path: Path | str) -> None:
    # One uppercase NFC word per line, LF endings.
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for word in words:
            handle.write(word + "\n")


def read_word_list(path: Path | str) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        return [normalize(line.strip()) for line in handle if line.strip()]


def load_word_lists(directory: Path | str, alphabet: Alphabet = LATVIAN) -> WordLists:
    """Load built lists from a directory and re-check their invariants."""
    directory = Path(directory)
    main = read_word_list(directory / MAIN_FILENAME)
    secondary = set(read_word_list(directory / SECONDARY_FILENAME))
    lists = WordLists(main=main, secondary=secondary - set(main))
    check_lists(lists, alphabet)
    return lists


def write_review_report(review: list[tuple[str, int]], path: Path | str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for word, count in review:
            handle.write(f"{word}\t{count}\n")


def write_length_csv(rows: list[tuple[int, int, int]], path: Path | str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["n", "unique", "total"])
        writer.writerows(rows)


def file_digest(path: Path | str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_build_meta(path: Path | str, meta: dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(meta, handle, ensure_ascii=False, indent=2, sort_keys=True)
        handle.write("\n")
