"""Confusion-matrix metrics, including the published five-class matrix."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from revclass.metrics import ConfusionMatrix, compute_metrics, pool_folds
from revclass.rubric import GROUP_NAMES

# rows = truth, columns = predicted, in canonical group order
PUBLISHED_MATRIX = [
    [306, 29, 18, 28, 64],
    [32, 292, 3, 8, 52],
    [43, 29, 24, 26, 36],
    [37, 15, 13, 85, 90],
    [94, 57, 13, 57, 377],
]


def published_cm() -> ConfusionMatrix:
    return ConfusionMatrix(GROUP_NAMES, PUBLISHED_MATRIX)


def test_published_matrix_totals():
    cm = published_cm()
    assert cm.total() == 1828
    assert cm.trace() == 1084
    assert cm.row_sums() == {
        "Discussion": 445,
        "Documentation": 387,
        "False Positive": 158,
        "Functional": 240,
        "Refactoring": 598,
    }


def test_published_matrix_headline_numbers():
    summary = compute_metrics(published_cm())
    assert summary.accuracy == pytest.approx(1084 / 1828)
    assert round(summary.accuracy, 4) == 0.5930
    assert summary.per_class["Discussion"].recall == pytest.approx(306 / 445)
    assert summary.per_class["Refactoring"].recall == pytest.approx(377 / 598)


def test_published_matrix_precision_column_sums():
    summary = compute_metrics(published_cm())
    cols = np.array(PUBLISHED_MATRIX).sum(axis=0)
    for j, label in enumerate(GROUP_NAMES):
        expected = PUBLISHED_MATRIX[j][j] / cols[j]
        assert summary.per_class[label].precision == pytest.approx(expected)


def test_accuracy_is_prior_weighted_mean_recall():
    summary = compute_metrics(published_cm())
    total = 1828
    weighted = sum(
        summary.per_class[label].recall * summary.per_class[label].support / total
        for label in GROUP_NAMES
    )
    assert summary.accuracy == pytest.approx(weighted)


def test_perfect_classifier():
    cm = ConfusionMatrix(("a", "b"), [[4, 0], [0, 6]])
    summary = compute_metrics(cm)
    assert summary.accuracy == 1.0
    for m in summary.per_class.values():
        assert (m.precision, m.recall, m.f1, m.mcc) == (1.0, 1.0, 1.0, 1.0)
        assert m.zero_division == ()


def test_never_predicted_class_flags_not_raises():
    cm = ConfusionMatrix(("a", "b"), [[5, 0], [3, 0]])
    summary = compute_metrics(cm)
    b = summary.per_class["b"]
    assert b.precision == 0.0 and b.recall == 0.0 and b.f1 == 0.0
    assert "precision" in b.zero_division
    assert "mcc" in b.zero_division


def test_absent_class_flags_recall():
    cm = ConfusionMatrix(("a", "b"), [[5, 1], [0, 0]])
    flags = compute_metrics(cm).per_class["b"].zero_division
    assert "recall" in flags


def test_hand_checked_binary_mcc():
    # tp=6 fn=2 fp=1 tn=3 for class a
    cm = ConfusionMatrix(("a", "b"), [[6, 2], [1, 3]])
    m = compute_metrics(cm).per_class["a"]
    expected = (6 * 3 - 1 * 2) / np.sqrt((6 + 1) * (6 + 2) * (3 + 1) * (3 + 2))
    assert m.mcc == pytest.approx(expected)


def test_empty_matrix_rejected():
    with pytest.raises(ValueError):
        compute_metrics(ConfusionMatrix(("a", "b")))
    with pytest.raises(ValueError):
        ConfusionMatrix(())


def test_shape_and_sign_validation():
    with pytest.raises(ValueError):
        ConfusionMatrix(("a", "b"), [[1, 2, 3]])
    with pytest.raises(ValueError):
        ConfusionMatrix(("a", "b"), [[1, -2], [0, 1]])


def test_from_pairs_matches_manual_adds():
    truths = ["a", "a", "b", "b", "b"]
    preds = ["a", "b", "b", "b", "a"]
    cm = ConfusionMatrix.from_pairs(truths, preds, ("a", "b"))
    assert cm.to_lists() == [[1, 1], [1, 2]]


def test_pool_folds_sums_counts():
    a = ConfusionMatrix(("a", "b"), [[1, 2], [3, 4]])
    b = ConfusionMatrix(("a", "b"), [[10, 0], [0, 10]])
    pooled = pool_folds([a, b])
    assert pooled.to_lists() == [[11, 2], [3, 14]]
    assert pool_folds([a]).to_lists() == a.to_lists()


def test_pool_folds_rejects_label_mismatch():
    a = ConfusionMatrix(("a", "b"))
    b = ConfusionMatrix(("b", "a"))
    with pytest.raises(ValueError):
        pool_folds([a, b])
    with pytest.raises(ValueError):
        pool_folds([])


@st.composite
def small_matrices(draw):
    n = draw(st.integers(min_value=2, max_value=5))
    labels = tuple(f"c{i}" for i in range(n))
    counts = draw(
        st.lists(
            st.lists(st.integers(min_value=0, max_value=40), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )
    if sum(map(sum, counts)) == 0:
        counts[0][0] = 1
    return labels, counts


@given(small_matrices(), st.randoms(use_true_random=False))
def test_mcc_invariant_under_label_permutation(matrix, rng):
    labels, counts = matrix
    order = list(range(len(labels)))
    rng.shuffle(order)
    base = compute_metrics(ConfusionMatrix(labels, counts))
    permuted_counts = [[counts[i][j] for j in order] for i in order]
    permuted_labels = tuple(labels[i] for i in order)
    permuted = compute_metrics(ConfusionMatrix(permuted_labels, permuted_counts))
    assert permuted.accuracy == pytest.approx(base.accuracy)
    for label in labels:
        got = permuted.per_class[label]
        want = base.per_class[label]
        assert got.mcc == pytest.approx(want.mcc)
        assert got.recall == pytest.approx(want.recall)
        assert got.support == want.support


@given(small_matrices())
def test_metrics_are_bounded(matrix):
    labels, counts = matrix
    summary = compute_metrics(ConfusionMatrix(labels, counts))
    assert 0.0 <= summary.accuracy <= 1.0
    for m in summary.per_class.values():
        assert 0.0 <= m.precision <= 1.0
        assert 0.0 <= m.recall <= 1.0
        assert 0.0 <= m.f1 <= 1.0
        assert -1.0 <= m.mcc <= 1.0
