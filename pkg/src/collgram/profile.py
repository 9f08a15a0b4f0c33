"""Per-text collocation profiles.

A profile aggregates the association scores of every adjacent token
pair in a text against a reference table: the mean of each measure over
*attested* pairs, plus the proportion of pairs missing from the table
(typos, creative combinations, or vocabulary the reference never saw).
Absent pairs are excluded from the means rather than imputed, so the
absent-pair ratio stays an independent signal.
"""

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .association import score_bigram
from .files import atomic_write_text
from .index import NGramTable
from .textpipe import StandardizedEntry

PROFILE_CSV_HEADER = (
    "id,mean_mi,mean_t,mean_log_dice,mean_gravity,absent_ratio,attested,total,degenerate"
)


@dataclass(frozen=True)
class CollgramProfile:
    """Aggregate association statistics for one text.

    ``degenerate`` is set when no pair was attested (the four means are
    then defined as 0); callers treat the flag as an extra input instead
    of erroring out.
    """

    mean_mi: float
    mean_t: float
    mean_log_dice: float
    mean_gravity: float
    absent_ratio: float
    attested_count: int
    total_bigrams: int
    degenerate: bool


def profile_text(table: NGramTable, entry: StandardizedEntry) -> CollgramProfile:
    """Profile one standardized entry against the reference table.

    Pairs are taken across the whole token sequence in order, without
    re-splitting into sentences (social-media entries rarely carry
    reliable punctuation, and doing the same for every entry keeps
    profiles comparable). Entries with fewer than two tokens produce a
    degenerate profile with ``total_bigrams == 0``.
    """
    tokens = entry.tokens
    total = max(len(tokens) - 1, 0)
    attested = 0
    sum_mi = sum_t = sum_dice = sum_gravity = 0.0
    for first, second in zip(tokens, tokens[1:]):
        scores = score_bigram(table, first, second)
        if scores is None:
            continue
        attested += 1
        sum_mi += scores.mi
        sum_t += scores.t_score
        sum_dice += scores.log_dice
        sum_gravity += scores.gravity
    absent = total - attested
    if attested:
        means = (sum_mi / attested, sum_t / attested,
                 sum_dice / attested, sum_gravity / attested)
    else:
        means = (0.0, 0.0, 0.0, 0.0)
    return CollgramProfile(
        mean_mi=means[0],
        mean_t=means[1],
        mean_log_dice=means[2],
        mean_gravity=means[3],
        absent_ratio=absent / total if total else 0.0,
        attested_count=attested,
        total_bigrams=total,
        degenerate=attested == 0,
    )


def profile_batch(
    table: NGramTable,
    entries: Sequence[StandardizedEntry],
    workers: int | None = None,
) -> list[CollgramProfile]:
    """Profile many entries; output order matches input order.

    Profiling is read-only over the shared table, so the result is
    identical for any worker count.
    """
    if workers is None or workers <= 1:
        return [profile_text(table, entry) for entry in entries]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda e: profile_text(table, e), entries))


def profiles_to_csv(rows: Iterable[tuple[str, CollgramProfile]]) -> str:
    """Render (id, profile) rows as CSV, floats at full double precision."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(PROFILE_CSV_HEADER.split(","))
    for entry_id, prof in rows:
        writer.writerow(
            [
                entry_id,
                repr(prof.mean_mi),
                repr(prof.mean_t),
                repr(prof.mean_log_dice),
                repr(prof.mean_gravity),
                repr(prof.absent_ratio),
                prof.attested_count,
                prof.total_bigrams,
                "true" if prof.degenerate else "false",
            ]
        )
    return buffer.getvalue()


def write_profiles_csv(rows: Iterable[tuple[str, CollgramProfile]], path) -> None:
    atomic_write_text(path, profiles_to_csv(rows))
