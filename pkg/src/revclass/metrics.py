"""Confusion-matrix bookkeeping and the derived classification metrics.

Per-class precision, recall, F1, and Matthews correlation are computed
one-vs-rest from a single matrix; accuracy is trace over total. Any
metric whose denominator vanishes is reported as 0.0 and the metric
name is flagged on that class rather than raising.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class ConfusionMatrix:
    """Square count matrix, rows = ground truth, columns = predicted."""

    def __init__(self, labels, counts=None):
        self.labels: tuple[str, ...] = tuple(labels)
        n = len(self.labels)
        if n == 0:
            raise ValueError("confusion matrix needs at least one label")
        if counts is None:
            counts = np.zeros((n, n), dtype=np.int64)
        counts = np.asarray(counts, dtype=np.int64)
        if counts.shape != (n, n):
            raise ValueError(f"counts must be {n}x{n}, got {counts.shape}")
        if (counts < 0).any():
            raise ValueError("negative count in confusion matrix")
        self.counts = counts
        self._index = {label: i for i, label in enumerate(self.labels)}

    @classmethod
    def from_pairs(cls, truths, predictions, labels) -> "ConfusionMatrix":
        cm = cls(labels)
        for t, p in zip(truths, predictions, strict=True):
            cm.add(t, p)
        return cm

    def add(self, truth: str, predicted: str, count: int = 1) -> None:
        self.counts[self._index[truth], self._index[predicted]] += count

    def total(self) -> int:
        return int(self.counts.sum())

    def trace(self) -> int:
        return int(np.trace(self.counts))

    def row_sums(self) -> dict[str, int]:
        return {l: int(s) for l, s in zip(self.labels, self.counts.sum(axis=1))}

    def to_lists(self) -> list[list[int]]:
        return self.counts.tolist()

    def __repr__(self) -> str:
        return f"ConfusionMatrix(labels={self.labels}, total={self.total()})"


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    mcc: float
    support: int
    zero_division: tuple[str, ...] = ()


@dataclass
class MetricSummary:
    per_class: dict[str, ClassMetrics]
    accuracy: float
    total: int = 0
    labels: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "total": self.total,
            "per_class": {
                label: {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "mcc": m.mcc,
                    "support": m.support,
                    "zero_division": list(m.zero_division),
                }
                for label, m in self.per_class.items()
            },
        }


def compute_metrics(cm: ConfusionMatrix) -> MetricSummary:
    total = cm.total()
    if total == 0:
        raise ValueError("empty confusion matrix")
    counts = cm.counts.astype(np.float64)
    per_class: dict[str, ClassMetrics] = {}
    for i, label in enumerate(cm.labels):
        tp = counts[i, i]
        fp = counts[:, i].sum() - tp
        fn = counts[i, :].sum() - tp
        tn = total - tp - fp - fn
        flags: list[str] = []
        precision = _ratio(tp, tp + fp, "precision", flags)
        recall = _ratio(tp, tp + fn, "recall", flags)
        if precision + recall == 0.0:
            f1 = 0.0
            flags.append("f1")
        else:
            f1 = 2 * precision * recall / (precision + recall)
        denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
        if denom == 0.0:
            mcc = 0.0
            flags.append("mcc")
        else:
            mcc = (tp * tn - fp * fn) / math.sqrt(denom)
        per_class[label] = ClassMetrics(
            precision=precision,
            recall=recall,
            f1=f1,
            mcc=mcc,
            support=int(tp + fn),
            zero_division=tuple(flags),
        )
    return MetricSummary(
        per_class=per_class,
        accuracy=cm.trace() / total,
        total=total,
        labels=cm.labels,
    )


def _ratio(num: float, denom: float, name: str, flags: list[str]) -> float:
    if denom == 0.0:
        flags.append(name)
        return 0.0
    return num / denom


def pool_folds(per_fold: list[ConfusionMatrix]) -> ConfusionMatrix:
    """Elementwise sum of per-fold matrices over identical label sets."""
    if not per_fold:
        raise ValueError("no matrices to pool")
    labels = per_fold[0].labels
    pooled = np.zeros_like(per_fold[0].counts)
    for cm in per_fold:
        if cm.labels != labels:
            raise ValueError(f"label mismatch: {cm.labels} vs {labels}")
        pooled = pooled + cm.counts
    return ConfusionMatrix(labels, pooled)
