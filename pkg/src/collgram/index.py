"""Reference frequency model: unigram/bigram counts and neighbor diversity.

The table stores, for a tokenized corpus:

* ``total_tokens`` -- corpus size (number of unigram tokens),
* ``unigram_count`` -- word frequency,
* ``bigram_count`` -- frequency of adjacent word pairs, counted within
  sentences only (pairs never straddle a sentence boundary),
* ``right_diversity`` / ``left_diversity`` -- for every word, how many
  distinct words appear immediately to its right / left in the retained
  bigram table. These feed the gravity measure.

Bigrams rarer than ``min_count`` are dropped from the pair table, but
their tokens still contribute to unigram counts and corpus size.
Diversity is always derived from the *retained* pairs so that every
operand handed to the association formulas is internally consistent.
"""

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import DataFormatError, IndexVersionError
from .files import atomic_write_text

INDEX_HEADER = "#collgram-index"
INDEX_VERSION = "v1"


@dataclass
class NGramTable:
    """A completed table is treated as immutable; share it freely."""

    total_tokens: int = 0
    min_count: int = 1
    unigram_count: dict[str, int] = field(default_factory=dict)
    bigram_count: dict[tuple[str, str], int] = field(default_factory=dict)
    right_diversity: dict[str, int] = field(default_factory=dict)
    left_diversity: dict[str, int] = field(default_factory=dict)


class BigramStats(NamedTuple):
    """Every operand the association measures need, for one (x, y) pair."""

    pair_count: int        # f(x,y)
    first_count: int       # f(x)
    second_count: int      # f(y)
    right_diversity: int   # distinct words right of x
    left_diversity: int    # distinct words left of y
    corpus_size: int       # N


def _derive_diversity(
    unigrams: dict[str, int], bigrams: dict[tuple[str, str], int]
) -> tuple[dict[str, int], dict[str, int]]:
    right = dict.fromkeys(unigrams, 0)
    left = dict.fromkeys(unigrams, 0)
    for first, second in bigrams:
        right[first] += 1
        left[second] += 1
    return right, left


def build_index(sentences: Iterable[Sequence[str]], min_count: int = 1) -> NGramTable:
    """Count unigrams and adjacent bigrams over tokenized sentences.

    Pairs are counted within each sentence only. Bigrams with fewer than
    ``min_count`` occurrences are discarded from the pair table (their
    tokens still count toward unigrams and corpus size). An empty corpus
    yields an empty table with ``total_tokens == 0``.
    """
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    unigrams: Counter[str] = Counter()
    bigrams: Counter[tuple[str, str]] = Counter()
    total = 0
    for tokens in sentences:
        total += len(tokens)
        unigrams.update(tokens)
        if len(tokens) > 1:
            bigrams.update(zip(tokens, tokens[1:]))
    if min_count > 1:
        bigrams = Counter(
            {pair: n for pair, n in bigrams.items() if n >= min_count}
        )
    right, left = _derive_diversity(unigrams, bigrams)
    return NGramTable(
        total_tokens=total,
        min_count=min_count,
        unigram_count=dict(unigrams),
        bigram_count=dict(bigrams),
        right_diversity=right,
        left_diversity=left,
    )


def merge(a: NGramTable, b: NGramTable) -> NGramTable:
    """Combine two tables built with the same ``min_count`` discipline.

    Counts and corpus sizes are summed element-wise; diversity is
    re-derived from the merged pair table. Associative and commutative,
    which is what makes sharded parallel builds safe.
    """
    if a.min_count != b.min_count:
        raise ValueError(
            f"cannot merge tables with different min_count "
            f"({a.min_count} != {b.min_count})"
        )
    unigrams = Counter(a.unigram_count)
    unigrams.update(b.unigram_count)
    bigrams = Counter(a.bigram_count)
    bigrams.update(b.bigram_count)
    unigrams = dict(unigrams)
    bigrams = dict(bigrams)
    right, left = _derive_diversity(unigrams, bigrams)
    return NGramTable(
        total_tokens=a.total_tokens + b.total_tokens,
        min_count=a.min_count,
        unigram_count=unigrams,
        bigram_count=bigrams,
        right_diversity=right,
        left_diversity=left,
    )


def lookup_bigram(table: NGramTable, first: str, second: str) -> BigramStats | None:
    """Fetch all association operands for a pair, or None if unattested.

    A pair is absent when it never occurred adjacently, when either word
    is unseen, or when it was dropped by the ``min_count`` filter.
    """
    pair_count = table.bigram_count.get((first, second))
    if pair_count is None:
        return None
    return BigramStats(
        pair_count=pair_count,
        first_count=table.unigram_count[first],
        second_count=table.unigram_count[second],
        right_diversity=table.right_diversity[first],
        left_diversity=table.left_diversity[second],
        corpus_size=table.total_tokens,
    )


def save_index(table: NGramTable, path) -> None:
    """Write the table as a deterministic UTF-8 text file.

    Layout (LF line endings, records sorted lexicographically):

        #collgram-index v1
        #tokens <N>
        #min-count <k>
        U<TAB>word<TAB>freq<TAB>right_div<TAB>left_div
        ...
        B<TAB>word1<TAB>word2<TAB>freq
        ...

    Identical tables serialize to identical bytes.
    """
    lines = [
        f"{INDEX_HEADER} {INDEX_VERSION}",
        f"#tokens {table.total_tokens}",
        f"#min-count {table.min_count}",
    ]
    for word in sorted(table.unigram_count):
        lines.append(
            "U\t{}\t{}\t{}\t{}".format(
                word,
                table.unigram_count[word],
                table.right_diversity.get(word, 0),
                table.left_diversity.get(word, 0),
            )
        )
    for first, second in sorted(table.bigram_count):
        lines.append(
            "B\t{}\t{}\t{}".format(first, second, table.bigram_count[(first, second)])
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def _parse_int(text: str, what: str, path, line_no: int, minimum: int = 0) -> int:
    try:
        value = int(text)
    except ValueError:
        raise DataFormatError(f"{what} is not an integer: {text!r}", path, line_no)
    if value < minimum:
        raise DataFormatError(f"{what} must be >= {minimum}, got {value}", path, line_no)
    return value


def load_index(path) -> NGramTable:
    """Read a table written by :func:`save_index`.

    Corrupt input raises :class:`DataFormatError` naming the offending
    line; an unknown version raises :class:`IndexVersionError`.
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3:
        raise DataFormatError("truncated index file (missing header lines)", path, 1)

    head = lines[0].split(" ")
    if len(head) != 2 or head[0] != INDEX_HEADER:
        raise DataFormatError(f"not an index file: {lines[0]!r}", path, 1)
    if head[1] != INDEX_VERSION:
        raise IndexVersionError(
            f"unsupported index version {head[1]!r} (expected {INDEX_VERSION!r})",
            path,
            1,
        )
    if not lines[1].startswith("#tokens "):
        raise DataFormatError(f"expected '#tokens <N>', got {lines[1]!r}", path, 2)
    total = _parse_int(lines[1][len("#tokens "):], "token count", path, 2)
    if not lines[2].startswith("#min-count "):
        raise DataFormatError(f"expected '#min-count <k>', got {lines[2]!r}", path, 3)
    min_count = _parse_int(lines[2][len("#min-count "):], "min-count", path, 3, minimum=1)

    unigrams: dict[str, int] = {}
    bigrams: dict[tuple[str, str], int] = {}
    right: dict[str, int] = {}
    left: dict[str, int] = {}
    in_bigrams = False
    for line_no, line in enumerate(lines[3:], start=4):
        fields = line.split("\t")
        tag = fields[0]
        if tag == "U":
            if in_bigrams:
                raise DataFormatError("unigram record after bigram records", path, line_no)
            if len(fields) != 5:
                raise DataFormatError(
                    f"unigram record needs 5 fields, got {len(fields)}", path, line_no
                )
            word = fields[1]
            if word in unigrams:
                raise DataFormatError(f"duplicate unigram {word!r}", path, line_no)
            unigrams[word] = _parse_int(fields[2], "frequency", path, line_no, minimum=1)
            right[word] = _parse_int(fields[3], "right diversity", path, line_no)
            left[word] = _parse_int(fields[4], "left diversity", path, line_no)
        elif tag == "B":
            in_bigrams = True
            if len(fields) != 4:
                raise DataFormatError(
                    f"bigram record needs 4 fields, got {len(fields)}", path, line_no
                )
            pair = (fields[1], fields[2])
            if pair in bigrams:
                raise DataFormatError(f"duplicate bigram {pair!r}", path, line_no)
            if fields[1] not in unigrams or fields[2] not in unigrams:
                raise DataFormatError(
                    f"bigram {pair!r} references an unknown unigram", path, line_no
                )
            bigrams[pair] = _parse_int(fields[3], "frequency", path, line_no, minimum=1)
        else:
            raise DataFormatError(f"unknown record type {tag!r}", path, line_no)

    if sum(unigrams.values()) != total:
        raise DataFormatError(
            f"unigram frequencies sum to {sum(unigrams.values())}, "
            f"but header declares {total} tokens",
            path,
        )
    derived_right, derived_left = _derive_diversity(unigrams, bigrams)
    if derived_right != right or derived_left != left:
        raise DataFormatError(
            "diversity counts do not match the bigram records", path
        )
    return NGramTable(
        total_tokens=total,
        min_count=min_count,
        unigram_count=unigrams,
        bigram_count=bigrams,
        right_diversity=right,
        left_diversity=left,
    )
