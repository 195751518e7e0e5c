"""Batch classification plus the reporting surfaces built on predictions.

Three reports, all pure functions of the predictions: category ratios,
per-reviewer category counts, and a priority ordering for comment triage.
Each has a CSV writer and an optional bar-chart writer.
"""

from __future__ import annotations

import csv
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .attributes import extract_attributes
from .modelconfig import ATTRS_CHANNEL, CODE_CHANNEL
from .network import InferenceError, TrainedModel, predict_batch
from .rubric import GROUP_NAMES
from .store import context_for_comment
from .types import FileRevisionPair, ReviewComment

# error column is appended so per-row failures can be recorded without
# aborting the batch; it is empty on success
PREDICTION_FIELDS = ("comment_id",) + GROUP_NAMES + ("predicted_group", "error")

ERROR_MISSING_PAIR = "missing_file_pair"
ERROR_NO_CONTEXT = "context_unavailable"

DEFAULT_PRIORITY = (
    "Functional",
    "Refactoring",
    "Documentation",
    "Discussion",
    "False Positive",
)


@dataclass
class PredictionRow:
    comment_id: str
    probabilities: dict[str, float] | None = None
    predicted_group: str = ""
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error

    def predicted_probability(self) -> float:
        """Probability assigned to the predicted group."""
        if self.probabilities is None or not self.predicted_group:
            return 0.0
        return self.probabilities[self.predicted_group]


# ---------------------------------------------------------------------------
# batch classification

def classify_batch(
    model: TrainedModel,
    comments: Iterable[ReviewComment],
    pairs: dict[str, FileRevisionPair] | None = None,
    out_path: str | Path | None = None,
) -> list[PredictionRow]:
    """Classify every comment, one output row each, never aborting the batch.

    Rows that cannot be assembled for the model's enabled channels carry an
    error code instead of probabilities. When out_path is given the rows are
    also written as a predictions CSV (header always present).
    """
    pairs = pairs or {}
    channels = model.config.channels_enabled
    rows: list[PredictionRow] = []
    inputs: list[tuple[str | None, str, object]] = []
    pending: list[int] = []  # row indices awaiting prediction

    for comment in comments:
        row = PredictionRow(comment_id=comment.comment_id)
        rows.append(row)
        pair = pairs.get(comment.comment_id)
        context, rcr = context_for_comment(comment, pair)

        code_text = None
        if CODE_CHANNEL in channels:
            if context is None:
                row.error = ERROR_NO_CONTEXT
                continue
            code_text = context.text

        attributes = None
        if ATTRS_CHANNEL in channels:
            if pair is None:
                row.error = ERROR_MISSING_PAIR
                continue
            attributes = extract_attributes(pair, rcr).vector

        pending.append(len(rows) - 1)
        inputs.append((code_text, comment.text, attributes))

    _predict_into(model, rows, pending, inputs)
    if out_path is not None:
        write_predictions(rows, out_path)
    return rows


def _predict_into(model, rows, pending, inputs) -> None:
    if not pending:
        return
    try:
        probs = predict_batch(model, inputs)
    except Exception:
        # isolate the failing rows: retry one at a time
        for idx, triple in zip(pending, inputs):
            try:
                result = predict_batch(model, [triple])[0]
            except (InferenceError, ValueError, RuntimeError) as exc:
                rows[idx].error = f"prediction_error:{exc}"
            else:
                _fill_row(rows[idx], result)
        return
    for idx, result in zip(pending, probs):
        _fill_row(rows[idx], result)


def _fill_row(row: PredictionRow, result) -> None:
    row.probabilities = result.as_dict()
    row.predicted_group = result.predicted_group


# ---------------------------------------------------------------------------
# predictions CSV

def write_predictions(rows: Iterable[PredictionRow], path: str | Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(PREDICTION_FIELDS)
        for row in rows:
            if row.ok and row.probabilities is not None:
                cells = [repr(row.probabilities[g]) for g in GROUP_NAMES]
                writer.writerow([row.comment_id, *cells, row.predicted_group, ""])
            else:
                writer.writerow([row.comment_id] + [""] * len(GROUP_NAMES) + ["", row.error])


def read_predictions(path: str | Path) -> list[PredictionRow]:
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != PREDICTION_FIELDS:
            raise ValueError(f"not a predictions file: {path}")
        rows = []
        for record in reader:
            if len(record) != len(PREDICTION_FIELDS):
                raise ValueError(f"malformed prediction row: {record!r}")
            comment_id, *cells = record
            error = cells[-1]
            if error:
                rows.append(PredictionRow(comment_id=comment_id, error=error))
                continue
            probabilities = {
                group: float(cell) for group, cell in zip(GROUP_NAMES, cells[:-2])
            }
            rows.append(
                PredictionRow(
                    comment_id=comment_id,
                    probabilities=probabilities,
                    predicted_group=cells[-2],
                )
            )
        return rows


# ---------------------------------------------------------------------------
# category ratios

def ratios(predictions: Iterable[PredictionRow]) -> dict:
    """Counts and percentages per predicted group; error rows are excluded."""
    counts = {name: 0 for name in GROUP_NAMES}
    total = 0
    for row in predictions:
        if not row.ok or not row.predicted_group:
            continue
        counts[row.predicted_group] += 1
        total += 1
    percentages = {
        name: round(100.0 * n / total, 2) if total else 0.0
        for name, n in counts.items()
    }
    return {"total": total, "counts": counts, "percentages": percentages}


def write_ratio_csv(distribution: dict, path: str | Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["group", "count", "percentage"])
        for name in GROUP_NAMES:
            writer.writerow(
                [name, distribution["counts"][name], distribution["percentages"][name]]
            )


# ---------------------------------------------------------------------------
# per-reviewer report

@dataclass
class ReviewerStats:
    reviewer_id: str
    counts: dict[str, int] = field(default_factory=dict)
    total: int = 0
    functional_ratio: float = 0.0

    def __post_init__(self):
        if self.counts and sum(self.counts.values()) != self.total:
            raise ValueError("per-group counts must sum to total")
        if not 0.0 <= self.functional_ratio <= 1.0:
            raise ValueError("functional_ratio outside [0, 1]")


def reviewer_report(
    predictions: Iterable[PredictionRow], comments: Iterable[ReviewComment]
) -> list[ReviewerStats]:
    """Per-reviewer category counts from the predictions.

    Sorted by functional count descending, ties broken by total comments
    descending, then reviewer id. Error rows and rows whose comment_id is
    not present in `comments` are excluded.
    """
    authors = {c.comment_id: c.author_id for c in comments}
    tallies: dict[str, dict[str, int]] = {}
    for row in predictions:
        if not row.ok or not row.predicted_group:
            continue
        author = authors.get(row.comment_id)
        if author is None:
            continue
        counts = tallies.setdefault(author, {name: 0 for name in GROUP_NAMES})
        counts[row.predicted_group] += 1

    stats = []
    for reviewer_id, counts in tallies.items():
        total = sum(counts.values())
        stats.append(
            ReviewerStats(
                reviewer_id=reviewer_id,
                counts=counts,
                total=total,
                functional_ratio=counts["Functional"] / total if total else 0.0,
            )
        )
    stats.sort(key=lambda s: (-s.counts["Functional"], -s.total, s.reviewer_id))
    return stats


def write_reviewer_csv(stats: Sequence[ReviewerStats], path: str | Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["reviewer_id", *GROUP_NAMES, "total", "functional_ratio"])
        for entry in stats:
            writer.writerow(
                [entry.reviewer_id]
                + [entry.counts[name] for name in GROUP_NAMES]
                + [entry.total, repr(entry.functional_ratio)]
            )


# ---------------------------------------------------------------------------
# prioritization

def prioritize(
    predictions: Iterable[PredictionRow],
    priority: Sequence[str] = DEFAULT_PRIORITY,
) -> list[PredictionRow]:
    """Order comments for author triage.

    Key: (group priority rank, predicted probability descending); the sort is
    stable so equal keys keep input order. Error rows cannot be ranked and
    are excluded.
    """
    if sorted(priority) != sorted(GROUP_NAMES):
        raise ValueError("priority must be a permutation of the five group names")
    rank = {name: i for i, name in enumerate(priority)}
    ranked = [row for row in predictions if row.ok and row.predicted_group]
    ranked.sort(key=lambda r: (rank[r.predicted_group], -r.predicted_probability()))
    return ranked


# ---------------------------------------------------------------------------
# charts (optional; matplotlib imported lazily so headless installs
# without plotting still work)

def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def write_ratio_chart(distribution: dict, path: str | Path) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4))
    values = [distribution["percentages"][name] for name in GROUP_NAMES]
    ax.bar(GROUP_NAMES, values, color="tab:blue")
    ax.set_ylabel("share of comments (%)")
    ax.set_title("Predicted category ratios")
    for label in ax.get_xticklabels():
        label.set_rotation(20)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def write_reviewer_chart(
    stats: Sequence[ReviewerStats], path: str | Path, top: int = 10
) -> None:
    plt = _plt()
    shown = list(stats)[:top]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    bottoms = [0] * len(shown)
    for name in GROUP_NAMES:
        heights = [s.counts[name] for s in shown]
        ax.bar([s.reviewer_id for s in shown], heights, bottom=bottoms, label=name)
        bottoms = [b + h for b, h in zip(bottoms, heights)]
    ax.set_ylabel("comments")
    ax.set_title("Comment categories per reviewer")
    ax.legend(fontsize="small")
    for label in ax.get_xticklabels():
        label.set_rotation(30)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
