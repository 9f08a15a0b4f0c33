"""Association measures for adjacent word pairs.

Four measures are computed from the same operand tuple. All logarithms
are base 2, so values from different measures live on comparable scales
and downstream standardization only has to absorb location and spread,
never a base change.

* mutual information -- log-ratio of observed pair frequency to its
  expectation under independence; favors pairs of rare words.
* t-score -- frequency-weighted deviation from independence; favors
  pairs of common words.
* log-Dice -- log2 of 2*f(x,y)/(f(x)+f(y)); corpus-size independent.
* gravity -- pair frequency weighted by the neighbor-diversity of each
  word, comparable across rare and common words.
"""

import math
from dataclasses import dataclass

from .index import NGramTable, lookup_bigram


def _require_at_least_one(**operands: float) -> None:
    for name, value in operands.items():
        if not value >= 1:
            raise ValueError(f"{name} must be >= 1, got {value!r}")


def mutual_information(
    pair_count: float, first_count: float, second_count: float, corpus_size: float
) -> float:
    """log2(N * f(x,y) / (f(x) * f(y))).

    Zero exactly when the pair occurs at its independence expectation;
    positive when the words attract each other.
    """
    _require_at_least_one(
        pair_count=pair_count,
        first_count=first_count,
        second_count=second_count,
        corpus_size=corpus_size,
    )
    return math.log2(corpus_size * pair_count / (first_count * second_count))


def t_score(
    pair_count: float, first_count: float, second_count: float, corpus_size: float
) -> float:
    """(f(x,y) - f(x)*f(y)/N) / sqrt(f(x,y))."""
    _require_at_least_one(
        pair_count=pair_count,
        first_count=first_count,
        second_count=second_count,
        corpus_size=corpus_size,
    )
    expected = first_count * second_count / corpus_size
    return (pair_count - expected) / math.sqrt(pair_count)


def log_dice(pair_count: float, first_count: float, second_count: float) -> float:
    """log2(2 * f(x,y) / (f(x) + f(y))). No corpus-size operand at all."""
    _require_at_least_one(
        pair_count=pair_count, first_count=first_count, second_count=second_count
    )
    return math.log2(2 * pair_count / (first_count + second_count))


def gravity(
    pair_count: float,
    first_count: float,
    second_count: float,
    right_diversity: float,
    left_diversity: float,
) -> float:
    """log2(f(x,y)*n(x)/f(x)) + log2(f(x,y)*n'(y)/f(y)).

    ``right_diversity`` is the number of distinct words seen immediately
    right of x, ``left_diversity`` the distinct words immediately left
    of y.
    """
    _require_at_least_one(
        pair_count=pair_count,
        first_count=first_count,
        second_count=second_count,
        right_diversity=right_diversity,
        left_diversity=left_diversity,
    )
    return math.log2(pair_count * right_diversity / first_count) + math.log2(
        pair_count * left_diversity / second_count
    )


@dataclass(frozen=True)
class AssociationScores:
    mi: float
    t_score: float
    log_dice: float
    gravity: float


def score_bigram(table: NGramTable, first: str, second: str) -> AssociationScores | None:
    """All four measures for one pair, or None when it is not in the table.

    Every measure is computed from the same operand tuple. Pairs dropped
    by the table's min-count filter come back as None, never as a domain
    error: the retained pair table guarantees valid operands (diversity
    of at least 1 on both sides).
    """
    stats = lookup_bigram(table, first, second)
    if stats is None:
        return None
    return AssociationScores(
        mi=mutual_information(
            stats.pair_count, stats.first_count, stats.second_count, stats.corpus_size
        ),
        t_score=t_score(
            stats.pair_count, stats.first_count, stats.second_count, stats.corpus_size
        ),
        log_dice=log_dice(stats.pair_count, stats.first_count, stats.second_count),
        gravity=gravity(
            stats.pair_count,
            stats.first_count,
            stats.second_count,
            stats.right_diversity,
            stats.left_diversity,
        ),
    )
