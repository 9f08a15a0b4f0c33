"""Wellness scoring: profile -> 0..100, plus threshold classification.

The mapping from a collocation profile to a score is a standardized
logistic model fit by full-batch gradient ascent on the label
likelihood (healthy = 1). Scores land on a 0-100 scale where 0 reads as
fully depressive and 100 as healthy, so a single threshold separates
the two predicted classes. A hybrid score is the arithmetic mean of the
collgram score and an external sentiment score on the same scale.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataFormatError, IndexVersionError
from .files import atomic_write_text
from .profile import CollgramProfile

DEPRESSED = "depressed"
HEALTHY = "healthy"
LABELS = (DEPRESSED, HEALTHY)

FEATURE_NAMES = ("mean_mi", "mean_t", "mean_log_dice", "mean_gravity", "absent_ratio")

MODEL_HEADER = "#collgram-model"
MODEL_VERSION = "v1"

DEFAULT_SEED = 42
DEFAULT_EPOCHS = 500
DEFAULT_LEARNING_RATE = 0.1


def sigmoid(values):
    """Numerically stable logistic function, scalar or ndarray."""
    array = np.asarray(values, dtype=np.float64)
    scalar = array.ndim == 0
    array = np.atleast_1d(array)
    out = np.empty_like(array)
    positive = array >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-array[positive]))
    exp_value = np.exp(array[~positive])
    out[~positive] = exp_value / (1.0 + exp_value)
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class ScoreModel:
    """Standardization statistics plus logistic weights.

    ``feature_means``/``feature_stds`` standardize the five profile
    features; ``degenerate_weight`` is the coefficient of the binary
    no-attested-pairs flag, which enters unstandardized. Constant
    training features keep std 1 and weight 0.
    """

    feature_means: tuple[float, ...]
    feature_stds: tuple[float, ...]
    weights: tuple[float, ...]
    degenerate_weight: float
    bias: float
    trained_on: int
    seed: int
    epochs: int
    learning_rate: float
    train_accuracy: float


def _feature_matrix(profiles) -> np.ndarray:
    return np.array(
        [
            (p.mean_mi, p.mean_t, p.mean_log_dice, p.mean_gravity, p.absent_ratio)
            for p in profiles
        ],
        dtype=np.float64,
    )


def fit_model(
    profiles: list[CollgramProfile],
    labels: list[str],
    seed: int = DEFAULT_SEED,
    epochs: int = DEFAULT_EPOCHS,
    learning_rate: float = DEFAULT_LEARNING_RATE,
) -> ScoreModel:
    """Fit the logistic scoring model on labeled profiles.

    Features are standardized to zero mean / unit std over the training
    set, then weights are learned by full-batch gradient ascent for
    ``epochs`` steps. Everything is deterministic given the inputs and
    ``seed`` (the seed only drives weight init).
    """
    if len(profiles) != len(labels):
        raise ValueError(
            f"got {len(profiles)} profiles but {len(labels)} labels"
        )
    if len(profiles) < 2:
        raise ValueError("cannot fit: need at least 2 labeled profiles")
    unknown = sorted(set(labels) - set(LABELS))
    if unknown:
        raise ValueError(f"unknown labels: {unknown}")
    if len(set(labels)) < 2:
        raise ValueError("cannot fit: one class absent")

    features = _feature_matrix(profiles)
    degenerate = np.array([1.0 if p.degenerate else 0.0 for p in profiles])
    target = np.array([1.0 if label == HEALTHY else 0.0 for label in labels])
    n = len(profiles)

    means = features.mean(axis=0)
    stds = features.std(axis=0)
    constant = stds == 0.0
    stds = np.where(constant, 1.0, stds)
    standardized = (features - means) / stds

    rng = np.random.default_rng(seed)
    weights = rng.normal(0.0, 0.01, size=len(FEATURE_NAMES))
    weights[constant] = 0.0
    degenerate_weight = 0.0
    bias = 0.0
    for _ in range(epochs):
        margin = standardized @ weights + degenerate * degenerate_weight + bias
        residual = target - sigmoid(margin)
        weights += learning_rate * (standardized.T @ residual) / n
        weights[constant] = 0.0
        degenerate_weight += learning_rate * float(degenerate @ residual) / n
        bias += learning_rate * float(residual.sum()) / n

    margin = standardized @ weights + degenerate * degenerate_weight + bias
    accuracy = float(np.mean((sigmoid(margin) >= 0.5) == (target == 1.0)))
    return ScoreModel(
        feature_means=tuple(float(v) for v in means),
        feature_stds=tuple(float(v) for v in stds),
        weights=tuple(float(v) for v in weights),
        degenerate_weight=degenerate_weight,
        bias=bias,
        trained_on=n,
        seed=seed,
        epochs=epochs,
        learning_rate=learning_rate,
        train_accuracy=accuracy,
    )


def score_profile(model: ScoreModel, profile: CollgramProfile) -> float:
    """Map a profile to the 0-100 wellness scale (higher = healthier)."""
    margin = model.bias + (model.degenerate_weight if profile.degenerate else 0.0)
    raw = (profile.mean_mi, profile.mean_t, profile.mean_log_dice,
           profile.mean_gravity, profile.absent_ratio)
    for value, mean, std, weight in zip(
        raw, model.feature_means, model.feature_stds, model.weights
    ):
        margin += weight * (value - mean) / std
    return 100.0 * float(sigmoid(margin))


def classify(score: float, threshold: float) -> str:
    """Healthy iff ``score >= threshold``; the tie goes to healthy."""
    return HEALTHY if score >= threshold else DEPRESSED


def hybrid_score(collgram: float, sentiment: float) -> float:
    """Arithmetic mean of two scores already on the 0-100 scale."""
    for name, value in (("collgram", collgram), ("sentiment", sentiment)):
        if not 0.0 <= value <= 100.0:
            raise ValueError(f"{name} score outside [0, 100]: {value!r}")
    return (collgram + sentiment) / 2.0


def save_model(model: ScoreModel, path) -> None:
    """Write the model as a versioned key-value text file (exact floats)."""

    def floats(values) -> str:
        return "\t".join(repr(v) for v in values)

    lines = [
        f"{MODEL_HEADER} {MODEL_VERSION}",
        "feature_names\t" + "\t".join(FEATURE_NAMES),
        "feature_means\t" + floats(model.feature_means),
        "feature_stds\t" + floats(model.feature_stds),
        "weights\t" + floats(model.weights),
        f"degenerate_weight\t{model.degenerate_weight!r}",
        f"bias\t{model.bias!r}",
        f"trained_on\t{model.trained_on}",
        f"seed\t{model.seed}",
        f"epochs\t{model.epochs}",
        f"learning_rate\t{model.learning_rate!r}",
        f"train_accuracy\t{model.train_accuracy!r}",
    ]
    atomic_write_text(path, "\n".join(lines) + "\n")


def _parse_float(text: str, key: str, path, line_no: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise DataFormatError(f"{key} is not a number: {text!r}", path, line_no)


def load_model(path) -> ScoreModel:
    """Read a model written by :func:`save_model`; round-trip is exact."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [line for line in text.split("\n") if line != ""]
    if not lines:
        raise DataFormatError("empty model file", path, 1)
    head = lines[0].split(" ")
    if len(head) != 2 or head[0] != MODEL_HEADER:
        raise DataFormatError(f"not a model file: {lines[0]!r}", path, 1)
    if head[1] != MODEL_VERSION:
        raise IndexVersionError(
            f"unsupported model version {head[1]!r} (expected {MODEL_VERSION!r})",
            path,
            1,
        )
    entries: dict[str, tuple[list[str], int]] = {}
    for line_no, line in enumerate(lines[1:], start=2):
        fields = line.split("\t")
        if len(fields) < 2:
            raise DataFormatError(f"malformed record: {line!r}", path, line_no)
        if fields[0] in entries:
            raise DataFormatError(f"duplicate key {fields[0]!r}", path, line_no)
        entries[fields[0]] = (fields[1:], line_no)

    def take(key: str, count: int | None = None) -> tuple[list[str], int]:
        if key not in entries:
            raise DataFormatError(f"missing key {key!r}", path)
        values, line_no = entries.pop(key)
        if count is not None and len(values) != count:
            raise DataFormatError(
                f"{key} needs {count} values, got {len(values)}", path, line_no
            )
        return values, line_no

    names, line_no = take("feature_names", len(FEATURE_NAMES))
    if tuple(names) != FEATURE_NAMES:
        raise DataFormatError(
            f"unexpected feature names {names!r}", path, line_no
        )

    def float_row(key: str) -> tuple[float, ...]:
        values, line_no = take(key, len(FEATURE_NAMES))
        return tuple(_parse_float(v, key, path, line_no) for v in values)

    def float_one(key: str) -> float:
        values, line_no = take(key, 1)
        return _parse_float(values[0], key, path, line_no)

    def int_one(key: str) -> int:
        values, line_no = take(key, 1)
        try:
            return int(values[0])
        except ValueError:
            raise DataFormatError(f"{key} is not an integer: {values[0]!r}", path, line_no)

    model = ScoreModel(
        feature_means=float_row("feature_means"),
        feature_stds=float_row("feature_stds"),
        weights=float_row("weights"),
        degenerate_weight=float_one("degenerate_weight"),
        bias=float_one("bias"),
        trained_on=int_one("trained_on"),
        seed=int_one("seed"),
        epochs=int_one("epochs"),
        learning_rate=float_one("learning_rate"),
        train_accuracy=float_one("train_accuracy"),
    )
    if entries:
        key = sorted(entries)[0]
        raise DataFormatError(f"unknown key {key!r}", path, entries[key][1])
    return model
