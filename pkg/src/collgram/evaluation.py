"""Evaluation harness: dataset I/O, threshold sweep, summary reports.

A labeled dataset is scored in one of three modes (collgram, sentiment,
hybrid), the decision threshold is swept to the accuracy optimum, and
the outcome is summarized the way screening results are usually read:
percent correct, percent unwell-but-missed (false negatives), percent
healthy-but-flagged (false positives).
"""

import bisect
import json
import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from . import scoring
from .errors import DataFormatError, ProviderError
from .files import atomic_write_text
from .index import NGramTable
from .profile import profile_text
from .scoring import DEPRESSED, HEALTHY, LABELS, ScoreModel, classify, hybrid_score
from .sentiment import SentimentProvider
from .textpipe import standardize_entry

MODE_COLLGRAM = "collgram"
MODE_SENTIMENT = "sentiment"
MODE_HYBRID = "hybrid"
MODES = (MODE_COLLGRAM, MODE_SENTIMENT, MODE_HYBRID)

CATEGORY_UNWELL_MISDIAGNOSED = "unwell_misdiagnosed"
CATEGORY_HEALTHY_MISDIAGNOSED = "healthy_misdiagnosed"
CATEGORY_UNWELL_CORRECT = "unwell_correct"
CATEGORY_HEALTHY_CORRECT = "healthy_correct"


@dataclass(frozen=True)
class LabeledEntry:
    id: str
    text: str
    label: str


class EntryResult(NamedTuple):
    id: str
    score: float
    label: str
    predicted: str


@dataclass(frozen=True)
class EvalReport:
    best_threshold: float
    accuracy: float
    correct_pct: float
    unwell_misdiagnosed_pct: float
    healthy_misdiagnosed_pct: float
    per_entry: tuple[EntryResult, ...]


def _parse_record(raw: str, path, line_no: int, require_label: bool) -> LabeledEntry:
    try:
        record = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"invalid JSON: {exc.msg}", path, line_no)
    if not isinstance(record, dict):
        raise DataFormatError("record is not a JSON object", path, line_no)
    for key in ("id", "text") + (("label",) if require_label else ()):
        if key not in record:
            raise DataFormatError(f"missing field {key!r}", path, line_no)
        if not isinstance(record[key], str):
            raise DataFormatError(f"field {key!r} is not a string", path, line_no)
    label = record.get("label", "")
    if require_label and label not in LABELS:
        raise DataFormatError(
            f"unknown label {label!r} (expected one of {list(LABELS)})", path, line_no
        )
    return LabeledEntry(id=record["id"], text=record["text"], label=label)


def _load_jsonl(path, require_label: bool) -> list[LabeledEntry]:
    text = Path(path).read_text(encoding="utf-8", errors="replace")
    entries: list[LabeledEntry] = []
    seen_ids: dict[str, int] = {}
    for line_no, line in enumerate(text.split("\n"), start=1):
        if line.strip() == "":
            continue
        entry = _parse_record(line, path, line_no, require_label)
        if entry.id in seen_ids:
            raise DataFormatError(
                f"duplicate id {entry.id!r} (first seen on line {seen_ids[entry.id]})",
                path,
                line_no,
            )
        seen_ids[entry.id] = line_no
        entries.append(entry)
    return entries


def load_dataset(path) -> list[LabeledEntry]:
    """Read a JSON-lines dataset of ``{"id", "text", "label"}`` records.

    Order is preserved. Unknown labels, missing fields, duplicate ids,
    and broken JSON are rejected with the offending line number.
    """
    return _load_jsonl(path, require_label=True)


def load_texts(path) -> list[LabeledEntry]:
    """Like :func:`load_dataset` but the label field is optional.

    Used where only ids and texts matter (e.g. bulk profiling).
    """
    return _load_jsonl(path, require_label=False)


def sweep_threshold(scores: Sequence[tuple[float, str]]) -> tuple[float, float]:
    """Find the accuracy-maximizing decision threshold.

    Candidates are the midpoints between adjacent distinct scores plus
    the endpoints 0 and 100; this covers every achievable split of the
    data. Accuracy ties go to the smallest threshold. O(n log n).
    """
    if not scores:
        raise ValueError("cannot sweep an empty score list")
    values = sorted(score for score, _ in scores)
    distinct = sorted(set(values))
    candidates = [0.0]
    candidates += [(a + b) / 2.0 for a, b in zip(distinct, distinct[1:])]
    candidates.append(100.0)

    # healthy entries at or above the threshold are correct, depressed
    # entries below it are correct; prefix counts make each candidate O(log n)
    by_score = sorted(scores)
    healthy_flags = [1 if label == HEALTHY else 0 for _, label in by_score]
    healthy_prefix = [0]
    for flag in healthy_flags:
        healthy_prefix.append(healthy_prefix[-1] + flag)
    total = len(by_score)
    total_healthy = healthy_prefix[-1]
    sorted_values = [score for score, _ in by_score]

    best_threshold = 0.0
    best_correct = -1
    for threshold in candidates:
        split = bisect.bisect_left(sorted_values, threshold)
        healthy_below = healthy_prefix[split]
        depressed_below = split - healthy_below
        correct = depressed_below + (total_healthy - healthy_below)
        if correct > best_correct:
            best_correct = correct
            best_threshold = threshold
    return best_threshold, best_correct / total


def _entry_scores(
    entries: Sequence[LabeledEntry],
    table: NGramTable,
    model: ScoreModel,
    provider: SentimentProvider | None,
    mode: str,
) -> list[float]:
    need_collgram = mode in (MODE_COLLGRAM, MODE_HYBRID)
    need_sentiment = mode in (MODE_SENTIMENT, MODE_HYBRID)
    if need_sentiment and provider is None:
        raise ValueError(f"mode {mode!r} requires a sentiment provider")

    collgram_scores: list[float] = []
    if need_collgram:
        for entry in entries:
            profile = profile_text(table, standardize_entry(entry.text))
            collgram_scores.append(scoring.score_profile(model, profile))

    sentiment_scores: list[float] = []
    if need_sentiment:
        failures: list[str] = []
        for entry in entries:
            try:
                sentiment_scores.append(provider.score(entry.text))
            except ProviderError:
                failures.append(entry.id)
                sentiment_scores.append(float("nan"))
        if failures:
            raise ProviderError(
                "sentiment provider failed for entries: " + ", ".join(failures)
            )

    if mode == MODE_COLLGRAM:
        return collgram_scores
    if mode == MODE_SENTIMENT:
        return sentiment_scores
    return [hybrid_score(c, s) for c, s in zip(collgram_scores, sentiment_scores)]


def evaluate(
    dataset: Sequence[LabeledEntry],
    table: NGramTable,
    model: ScoreModel,
    provider: SentimentProvider | None = None,
    mode: str = MODE_COLLGRAM,
) -> EvalReport:
    """Score a labeled dataset, sweep the threshold, summarize.

    The three summary percentages always sum to 100: correct,
    unwell-misdiagnosed (depressed predicted healthy), and
    healthy-misdiagnosed (healthy predicted depressed). Runs are fully
    deterministic: same inputs, same report.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r} (expected one of {list(MODES)})")
    if not dataset:
        raise ValueError("cannot evaluate an empty dataset")
    scores = _entry_scores(dataset, table, model, provider, mode)
    best_threshold, accuracy = sweep_threshold(
        [(score, entry.label) for score, entry in zip(scores, dataset)]
    )
    per_entry = tuple(
        EntryResult(entry.id, score, entry.label, classify(score, best_threshold))
        for entry, score in zip(dataset, scores)
    )
    n = len(per_entry)
    correct = sum(1 for r in per_entry if r.predicted == r.label)
    false_negative = sum(
        1 for r in per_entry if r.label == DEPRESSED and r.predicted == HEALTHY
    )
    false_positive = sum(
        1 for r in per_entry if r.label == HEALTHY and r.predicted == DEPRESSED
    )
    return EvalReport(
        best_threshold=best_threshold,
        accuracy=accuracy,
        correct_pct=100.0 * correct / n,
        unwell_misdiagnosed_pct=100.0 * false_negative / n,
        healthy_misdiagnosed_pct=100.0 * false_positive / n,
        per_entry=per_entry,
    )


def result_category(result: EntryResult) -> str:
    if result.label == DEPRESSED:
        return (
            CATEGORY_UNWELL_CORRECT
            if result.predicted == DEPRESSED
            else CATEGORY_UNWELL_MISDIAGNOSED
        )
    return (
        CATEGORY_HEALTHY_CORRECT
        if result.predicted == HEALTHY
        else CATEGORY_HEALTHY_MISDIAGNOSED
    )


def figure_data_csv(report: EvalReport) -> str:
    """Plot-ready per-entry rows plus a ``threshold,<value>`` footer.

    Enough to redraw the score scatter in any tool: each entry carries
    its score and one of the four diagnosis categories.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", "score", "label", "predicted", "category"])
    for result in report.per_entry:
        writer.writerow(
            [
                result.id,
                repr(result.score),
                result.label,
                result.predicted,
                result_category(result),
            ]
        )
    writer.writerow(["threshold", repr(report.best_threshold)])
    return buffer.getvalue()


def write_figure_data(report: EvalReport, path) -> None:
    atomic_write_text(path, figure_data_csv(report))


def report_to_json(report: EvalReport, mode: str | None = None) -> str:
    """Serialize a report deterministically (stable key order, exact floats)."""
    payload = {
        "mode": mode,
        "best_threshold": report.best_threshold,
        "accuracy": report.accuracy,
        "correct_pct": report.correct_pct,
        "unwell_misdiagnosed_pct": report.unwell_misdiagnosed_pct,
        "healthy_misdiagnosed_pct": report.healthy_misdiagnosed_pct,
        "per_entry": [
            {
                "id": r.id,
                "score": r.score,
                "label": r.label,
                "predicted": r.predicted,
                "category": result_category(r),
            }
            for r in report.per_entry
        ],
    }
    if mode is None:
        payload.pop("mode")
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def write_report(report: EvalReport, path, mode: str | None = None) -> None:
    atomic_write_text(path, report_to_json(report, mode))
