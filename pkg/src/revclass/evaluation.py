"""Cross-validation harness, ablation runner, and report assembly.

Reports carry two aggregations side by side: `pooled` sums the per-fold
confusion matrices first and derives metrics from the total matrix,
while `fold_mean` averages per-fold metric values. Published numbers in
this problem area mix the two conventions, so a report always states
both rather than picking one silently.

Fold assignments are fingerprinted; two reports built with the same
dataset, k, seed, and stratification mode carry the same fingerprint,
which makes paired model-vs-baseline comparisons checkable.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace

import numpy as np

from .folds import kfold_split, fold_fingerprint
from .metrics import ConfusionMatrix, compute_metrics, pool_folds
from .modelconfig import (
    ALL_CHANNELS,
    ATTRS_CHANNEL,
    CODE_CHANNEL,
    COMMENT_CHANNEL,
    GENERAL_NL,
    HYBRID_CODE_NL,
    ModelConfig,
)
from .network import predict_batch, train
from .rubric import GROUP_NAMES

REPORT_SCHEMA = "revclass.eval-report/1"
STRATIFICATION_NOTE = (
    "deviation: folds are stratified by group label for variance control; "
    "pass stratified=false for an unstratified faithfulness run"
)


@dataclass
class EvalReport:
    model_kind: str
    config: dict
    k: int
    seed: int
    stratified: bool
    fold_assignment_fingerprint: str
    config_fingerprint: str
    labels: tuple[str, ...]
    pooled_matrix: list[list[int]]
    pooled: dict
    fold_mean: dict
    per_fold: list[dict]
    notes: list[str]
    schema: str = REPORT_SCHEMA

    @property
    def accuracy(self) -> float:
        return self.pooled["accuracy"]

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "model_kind": self.model_kind,
            "config": self.config,
            "k": self.k,
            "seed": self.seed,
            "stratified": self.stratified,
            "fold_assignment_fingerprint": self.fold_assignment_fingerprint,
            "config_fingerprint": self.config_fingerprint,
            "labels": list(self.labels),
            "pooled_matrix": self.pooled_matrix,
            "pooled": self.pooled,
            "fold_mean": self.fold_mean,
            "per_fold": self.per_fold,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "EvalReport":
        if data.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"unknown report schema {data.get('schema')!r}")
        kwargs = {k: v for k, v in data.items() if k != "labels"}
        return cls(labels=tuple(data["labels"]), **kwargs)


def evaluate_folds(
    samples,
    folds,
    fit_predict,
    model_kind: str,
    config_dict: dict,
    k: int,
    seed: int,
    stratified: bool,
    extra_notes=(),
) -> EvalReport:
    """Run one fit/predict per fold and assemble the report.

    fit_predict(train, validation, test, fold_id) returns the predicted
    group name for each test sample, in order.
    """
    by_id = {s.comment.comment_id: s for s in samples}
    per_fold_cms: list[ConfusionMatrix] = []
    per_fold_entries: list[dict] = []
    for fold in folds:
        train_s = [by_id[i] for i in fold.train_ids]
        val_s = [by_id[i] for i in fold.validation_ids]
        test_s = [by_id[i] for i in fold.test_ids]
        predicted = fit_predict(train_s, val_s, test_s, fold.fold_id)
        cm = ConfusionMatrix(GROUP_NAMES)
        for sample, pred in zip(test_s, predicted, strict=True):
            cm.add(sample.group.value, pred)
        per_fold_cms.append(cm)
        per_fold_entries.append(
            {
                "fold_id": fold.fold_id,
                "matrix": cm.to_lists(),
                "metrics": compute_metrics(cm).to_dict(),
            }
        )

    pooled_cm = pool_folds(per_fold_cms)
    fingerprint_payload = json.dumps(
        {"config": config_dict, "k": k, "seed": seed, "stratified": stratified},
        sort_keys=True,
    )
    notes = [STRATIFICATION_NOTE] if stratified else []
    notes.extend(extra_notes)
    return EvalReport(
        model_kind=model_kind,
        config=config_dict,
        k=k,
        seed=seed,
        stratified=stratified,
        fold_assignment_fingerprint=fold_fingerprint(folds),
        config_fingerprint=hashlib.sha256(
            fingerprint_payload.encode("utf-8")
        ).hexdigest(),
        labels=GROUP_NAMES,
        pooled_matrix=pooled_cm.to_lists(),
        pooled=compute_metrics(pooled_cm).to_dict(),
        fold_mean=_fold_mean(per_fold_entries),
        per_fold=per_fold_entries,
        notes=notes,
    )


def _fold_mean(per_fold_entries: list[dict]) -> dict:
    accuracies = [e["metrics"]["accuracy"] for e in per_fold_entries]
    per_class: dict[str, dict[str, float]] = {}
    for label in GROUP_NAMES:
        per_class[label] = {
            metric: float(
                np.mean(
                    [e["metrics"]["per_class"][label][metric] for e in per_fold_entries]
                )
            )
            for metric in ("precision", "recall", "f1", "mcc")
        }
    return {"accuracy": float(np.mean(accuracies)), "per_class": per_class}


def cross_validate(
    samples,
    config: ModelConfig,
    k: int = 10,
    seed: int | None = None,
    stratified: bool = True,
) -> EvalReport:
    samples = list(samples)
    seed = config.seed if seed is None else seed
    folds = kfold_split(
        [(s.comment.comment_id, s.group.value) for s in samples],
        k=k,
        seed=seed,
        validation_fraction=config.validation_fraction,
        stratified=stratified,
    )

    def fit_predict(train_s, val_s, test_s, fold_id):
        model = train(train_s, config, validation=val_s, fold_id=fold_id)
        rows = [
            (
                s.context.text if s.context is not None else None,
                s.comment.text,
                s.attributes,
            )
            for s in test_s
        ]
        return [p.predicted_group for p in predict_batch(model, rows)]

    return evaluate_folds(
        samples,
        folds,
        fit_predict,
        model_kind="fusion",
        config_dict=config.to_dict(),
        k=k,
        seed=seed,
        stratified=stratified,
    )


ABLATIONS: tuple[str, ...] = (
    "code_context_only",
    "comment_only",
    "attributes_only",
    "full_hybrid",
    "full_general_comment",
)


def run_ablations(
    samples,
    base_config: ModelConfig,
    k: int = 10,
    seed: int | None = None,
    stratified: bool = True,
) -> dict[str, EvalReport]:
    """Channel and encoder ablations over one shared fold assignment."""
    seed = base_config.seed if seed is None else seed
    variants = {
        "code_context_only": base_config.with_channels(CODE_CHANNEL),
        "comment_only": base_config.with_channels(COMMENT_CHANNEL),
        "attributes_only": base_config.with_channels(ATTRS_CHANNEL),
        "full_hybrid": replace(
            base_config,
            channels_enabled=ALL_CHANNELS,
            comment_encoder=HYBRID_CODE_NL,
        ),
        "full_general_comment": replace(
            base_config,
            channels_enabled=ALL_CHANNELS,
            comment_encoder=GENERAL_NL,
        ),
    }
    reports = {
        name: cross_validate(samples, cfg, k=k, seed=seed, stratified=stratified)
        for name, cfg in variants.items()
    }
    fingerprints = {r.fold_assignment_fingerprint for r in reports.values()}
    if len(fingerprints) != 1:
        raise RuntimeError("ablation runs diverged onto different folds")
    return reports


def write_metric_table(report: EvalReport, path) -> None:
    """CSV mirror of the published table layout: one row per class with
    pooled precision/recall/F1/MCC, then an overall accuracy row."""
    import csv

    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["group", "precision", "recall", "f1", "mcc", "support"])
        per_class = report.pooled["per_class"]
        for label in report.labels:
            m = per_class[label]
            writer.writerow(
                [
                    label,
                    f"{m['precision']:.3f}",
                    f"{m['recall']:.3f}",
                    f"{m['f1']:.3f}",
                    f"{m['mcc']:.3f}",
                    m["support"],
                ]
            )
        writer.writerow(
            ["accuracy", f"{report.accuracy:.3f}", "", "", "", report.pooled["total"]]
        )
