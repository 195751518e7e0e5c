"""Chance-corrected inter-rater agreement."""
from __future__ import annotations

from collections import Counter
from typing import Hashable, Sequence


def cohens_kappa(labels_a: Sequence[Hashable], labels_b: Sequence[Hashable]) -> float:
    """Cohen's kappa between two annotators' label lists.

    kappa = (p_o - p_e) / (1 - p_e), where p_o is the observed agreement
    rate and p_e the agreement expected from the two marginal label
    distributions. When p_e == 1 both raters are constant on the same
    label, so agreement is perfect and 1.0 is returned.
    """
    if len(labels_a) != len(labels_b):
        raise ValueError(
            f"label lists differ in length: {len(labels_a)} vs {len(labels_b)}"
        )
    if not labels_a:
        raise ValueError("label lists are empty")

    n = len(labels_a)
    p_o = sum(a == b for a, b in zip(labels_a, labels_b)) / n

    counts_a = Counter(labels_a)
    counts_b = Counter(labels_b)
    p_e = sum(counts_a[k] * counts_b.get(k, 0) for k in counts_a) / (n * n)

    if p_e == 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)
