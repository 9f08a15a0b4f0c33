"""Deterministic text preparation.

Everything downstream (index building and text scoring) shares the same
tokenization, so the functions here are deliberately simple and pure:
same input string, same output, on every platform.
"""

import re
from dataclasses import dataclass
from typing import Iterable

# Runs of Unicode letters/digits; underscore is excluded from \w on purpose.
_WORD_RE = re.compile(r"[^\W_]+")

# Sentence-final punctuation followed by whitespace ends a sentence.
# Abbreviations ("np.", "dr.") are not special-cased; reference-corpus
# statistics tolerate the occasional early split.
_SENTENCE_BREAK_RE = re.compile(r"(?<=[.!?…])\s+")

MIN_TOKENS = 150
MAX_TOKENS = 250

STATUS_OK = "ok"
STATUS_TOO_SHORT = "too_short"


def tokenize(raw: str) -> list[str]:
    """Split text into lowercase word tokens.

    Tokens are maximal runs of Unicode letters and digits, case-folded.
    Diacritics survive ("Żółć" -> "żółć"), punctuation is dropped, and
    digit runs are kept as tokens. Empty input yields an empty list.
    """
    return _WORD_RE.findall(raw.casefold())


def split_sentences(raw: str) -> list[str]:
    """Split text on sentence-final punctuation (. ! ? …) + whitespace.

    Input without any terminal punctuation is returned as one sentence.
    Never returns empty sentences.
    """
    parts = _SENTENCE_BREAK_RE.split(raw)
    return [p for p in (part.strip() for part in parts) if p]


def deduplicate(sentences: Iterable[str]) -> list[str]:
    """Drop sentences whose token sequence was already seen.

    Order-preserving: the first occurrence wins. Two sentences count as
    duplicates iff ``tokenize`` maps them to the same token list, so
    "a b" and "A b." collapse into one.
    """
    seen: set[tuple[str, ...]] = set()
    kept = []
    for sentence in sentences:
        key = tuple(tokenize(sentence))
        if key not in seen:
            seen.add(key)
            kept.append(sentence)
    return kept


@dataclass(frozen=True)
class StandardizedEntry:
    """A text normalized to the 150-250 token window used for scoring.

    Longer texts are head-truncated to 250 tokens; shorter ones keep all
    their tokens but are flagged ``too_short`` (downstream may still
    score them, with a warning, instead of dropping data).
    """

    tokens: tuple[str, ...]
    original_word_count: int
    status: str

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


def standardize_entry(raw: str) -> StandardizedEntry:
    """Tokenize and fit a text into the standard word-count window."""
    tokens = tokenize(raw)
    count = len(tokens)
    if count > MAX_TOKENS:
        return StandardizedEntry(tuple(tokens[:MAX_TOKENS]), count, STATUS_OK)
    status = STATUS_TOO_SHORT if count < MIN_TOKENS else STATUS_OK
    return StandardizedEntry(tuple(tokens), count, status)
