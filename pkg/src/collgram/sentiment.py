"""Pluggable sentiment providers on the shared 0-100 wellness scale.

Two implementations ship here: a deliberately simple lexicon baseline
and a client for a remote scoring service. Anything with a
``score(text) -> float`` method clamped to [0, 100] can stand in; a
provider must fail loudly (:class:`ProviderError`) rather than return a
made-up score.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import requests

from .errors import DataFormatError, ProviderError
from .textpipe import tokenize

logger = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 10.0
NEUTRAL_SCORE = 50.0


class SentimentProvider(Protocol):
    def score(self, text: str) -> float:
        """Score a text on the 0-100 scale (values are clamped)."""


def _clamp(value: float) -> float:
    return min(100.0, max(0.0, value))


@dataclass(frozen=True)
class LexiconScore:
    value: float
    matched: int
    no_coverage: bool


def lexicon_sentiment(text: str, lexicon: dict[str, float]) -> LexiconScore:
    """Mean word polarity mapped linearly from [-1, 1] onto [0, 100].

    Tokens absent from the lexicon are ignored. A text with zero
    lexicon hits gets the neutral score 50 and a ``no_coverage`` flag
    so callers can tell "neutral" from "blind".
    """
    if not lexicon:
        raise ValueError("lexicon is empty")
    polarities = [lexicon[token] for token in tokenize(text) if token in lexicon]
    if not polarities:
        return LexiconScore(NEUTRAL_SCORE, 0, True)
    mean = sum(polarities) / len(polarities)
    return LexiconScore(_clamp((mean + 1.0) * 50.0), len(polarities), False)


def load_lexicon(path) -> dict[str, float]:
    """Read a ``word<TAB>polarity`` file, polarity in [-1, 1].

    Malformed lines are rejected with their line number; blank lines
    are allowed. Repeated words keep the last polarity.
    """
    lexicon: dict[str, float] = {}
    text = Path(path).read_text(encoding="utf-8", errors="replace")
    for line_no, line in enumerate(text.split("\n"), start=1):
        if line == "":
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0]:
            raise DataFormatError(
                f"expected 'word<TAB>polarity', got {line!r}", path, line_no
            )
        try:
            polarity = float(fields[1])
        except ValueError:
            raise DataFormatError(
                f"polarity is not a number: {fields[1]!r}", path, line_no
            )
        if not -1.0 <= polarity <= 1.0:
            raise DataFormatError(
                f"polarity outside [-1, 1]: {polarity}", path, line_no
            )
        lexicon[fields[0]] = polarity
    if not lexicon:
        raise DataFormatError("lexicon file contains no entries", path)
    return lexicon


class LexiconSentiment:
    """Provider wrapper around :func:`lexicon_sentiment`."""

    def __init__(self, lexicon: dict[str, float]):
        if not lexicon:
            raise ValueError("lexicon is empty")
        self.lexicon = dict(lexicon)

    @classmethod
    def from_file(cls, path) -> "LexiconSentiment":
        return cls(load_lexicon(path))

    def score(self, text: str) -> float:
        return lexicon_sentiment(text, self.lexicon).value


def remote_sentiment(text: str, endpoint: str, timeout: float = DEFAULT_TIMEOUT) -> float:
    """POST ``{"text": ...}`` to a scoring service, expect ``{"score": n}``.

    Network failures, non-2xx responses, and malformed bodies raise
    :class:`ProviderError` carrying the cause. Out-of-range scores are
    clamped to [0, 100] with a warning rather than rejected.
    """
    try:
        response = requests.post(endpoint, json={"text": text}, timeout=timeout)
    except requests.RequestException as exc:
        raise ProviderError(f"sentiment request to {endpoint} failed: {exc}") from exc
    if not 200 <= response.status_code < 300:
        raise ProviderError(
            f"sentiment service returned HTTP {response.status_code} for {endpoint}"
        )
    try:
        body = response.json()
    except (json.JSONDecodeError, ValueError) as exc:
        raise ProviderError(f"sentiment response is not JSON: {exc}") from exc
    if not isinstance(body, dict) or "score" not in body:
        raise ProviderError(f"sentiment response missing 'score': {body!r}")
    score = body["score"]
    if isinstance(score, bool) or not isinstance(score, (int, float)):
        raise ProviderError(f"sentiment score is not a number: {score!r}")
    score = float(score)
    if not 0.0 <= score <= 100.0:
        logger.warning(
            "sentiment score %r outside [0, 100]; clamping", score
        )
        score = _clamp(score)
    return score


class RemoteSentiment:
    """Provider wrapper around :func:`remote_sentiment`.

    Each call is an independent request (no shared session state), so
    instances are safe to use from concurrent workers.
    """

    def __init__(self, endpoint: str, timeout: float = DEFAULT_TIMEOUT):
        self.endpoint = endpoint
        self.timeout = timeout

    def score(self, text: str) -> float:
        return remote_sentiment(text, self.endpoint, self.timeout)
