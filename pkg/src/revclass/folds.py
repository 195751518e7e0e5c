"""Cross-validation fold construction.

Each of the k folds holds roughly 10% of the samples as its test set,
a further 10% of the dataset as validation, and the rest as training
data. Test sets partition the dataset. Stratified assignment deals each
class round-robin with a chained start offset, which keeps every class
within one sample of even across folds and the overall fold sizes
within one of each other; an unstratified mode cuts contiguous blocks
of one global shuffle instead.

The assignment fingerprint ties an evaluation report to the exact
splits that produced it, so paired comparisons can assert they ran on
identical folds.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FoldSplit:
    fold_id: int
    train_ids: tuple[str, ...]
    validation_ids: tuple[str, ...]
    test_ids: tuple[str, ...]

    def __post_init__(self):
        buckets = (set(self.train_ids), set(self.validation_ids), set(self.test_ids))
        if sum(len(b) for b in buckets) != len(
            self.train_ids + self.validation_ids + self.test_ids
        ) or (buckets[0] & buckets[1] or buckets[0] & buckets[2] or buckets[1] & buckets[2]):
            raise ValueError(f"fold {self.fold_id}: buckets overlap")


def kfold_split(
    labeled_ids,
    k: int = 10,
    seed: int = 0,
    validation_fraction: float = 0.10,
    stratified: bool = True,
) -> list[FoldSplit]:
    """Split (comment_id, group) pairs into k train/validation/test folds."""
    pairs = list(labeled_ids)
    ids = [i for i, _ in pairs]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate ids in dataset")
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > len(pairs):
        raise ValueError(f"k={k} exceeds dataset size {len(pairs)}")
    if not 0.0 < validation_fraction < 0.5:
        raise ValueError("validation_fraction must be in (0, 0.5)")

    rng = np.random.default_rng(seed)
    if stratified:
        test_buckets = _stratified_buckets(pairs, k, rng)
    else:
        order = rng.permutation(len(pairs))
        shuffled = [pairs[i] for i in order]
        test_buckets = [shuffled[f::k] for f in range(k)]

    class_totals: dict[str, int] = {}
    for _, group in pairs:
        class_totals[group] = class_totals.get(group, 0) + 1

    folds = []
    for fold_id, bucket in enumerate(test_buckets):
        test_ids = {i for i, _ in bucket}
        remaining = [p for p in _iteration_order(test_buckets) if p[0] not in test_ids]
        val, train = _take_validation(
            remaining, validation_fraction, stratified, class_totals
        )
        folds.append(
            FoldSplit(
                fold_id=fold_id,
                train_ids=tuple(i for i, _ in train),
                validation_ids=tuple(i for i, _ in val),
                test_ids=tuple(i for i, _ in bucket),
            )
        )
    return folds


def _stratified_buckets(pairs, k, rng):
    by_group: dict[str, list] = {}
    for pair in pairs:
        by_group.setdefault(pair[1], []).append(pair)
    buckets = [[] for _ in range(k)]
    start = 0
    for group in sorted(by_group):
        members = by_group[group]
        order = rng.permutation(len(members))
        for i, j in enumerate(order):
            buckets[(start + i) % k].append(members[j])
        start = (start + len(members)) % k
    return buckets


def _iteration_order(test_buckets):
    # Shuffled order (bucket concatenation) so validation picks are random
    # yet reproducible, never dataset-order prefixes.
    out = []
    for bucket in test_buckets:
        out.extend(bucket)
    return out


def _take_validation(remaining, fraction, stratified, class_totals):
    # fraction applies to the whole dataset, not to what the test set left
    if not stratified:
        dataset_size = sum(class_totals.values())
        cut = min(max(round(dataset_size * fraction), 1), len(remaining) - 1)
        return remaining[:cut], remaining[cut:]
    by_group: dict[str, list] = {}
    for pair in remaining:
        by_group.setdefault(pair[1], []).append(pair)
    val, train = [], []
    for group in sorted(by_group):
        members = by_group[group]
        want = round(class_totals[group] * fraction)
        want = min(max(want, 0), max(len(members) - 1, 0))
        val.extend(members[:want])
        train.extend(members[want:])
    return val, train


def fold_fingerprint(folds: list[FoldSplit]) -> str:
    """Stable digest of the complete fold assignment."""
    payload = json.dumps(
        [
            {
                "fold": f.fold_id,
                "train": sorted(f.train_ids),
                "validation": sorted(f.validation_ids),
                "test": sorted(f.test_ids),
            }
            for f in folds
        ],
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
