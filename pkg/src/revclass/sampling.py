"""Deterministic uniform sampling of review comments."""
from __future__ import annotations

from typing import Sequence, TypeVar

import numpy as np

T = TypeVar("T")


def sample_comments(corpus: Sequence[T], n: int, seed: int) -> list[T]:
    """Uniform sample of n items without replacement, reproducible per seed.

    The permutation stream is NumPy's PCG64, which is stable across
    platforms and library versions, so a fixed (corpus order, n, seed)
    always yields the same sample in the same order.
    """
    if not corpus:
        raise ValueError("corpus is empty")
    if n < 0:
        raise ValueError(f"sample size must be >= 0, got {n}")
    if n > len(corpus):
        raise ValueError(f"sample size {n} exceeds corpus size {len(corpus)}")

    order = np.random.default_rng(seed).permutation(len(corpus))
    return [corpus[i] for i in order[:n]]
