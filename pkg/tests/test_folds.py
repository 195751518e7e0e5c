"""Fold construction: partition, stratification, and reproducibility."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revclass.folds import FoldSplit, fold_fingerprint, kfold_split
from revclass.rubric import GROUP_NAMES

FULL_COUNTS = {
    "Discussion": 445,
    "Documentation": 387,
    "False Positive": 158,
    "Functional": 240,
    "Refactoring": 598,
}


def make_pairs(counts, prefix="c"):
    pairs = []
    for group, n in counts.items():
        tag = group[:3].lower().replace(" ", "")
        pairs.extend((f"{prefix}-{tag}-{i}", group) for i in range(n))
    return pairs


def test_test_sets_partition_the_dataset():
    pairs = make_pairs({"a": 23, "b": 31})
    folds = kfold_split(pairs, k=5, seed=1)
    seen = []
    for fold in folds:
        seen.extend(fold.test_ids)
    assert sorted(seen) == sorted(i for i, _ in pairs)
    assert len(seen) == len(set(seen))


def test_each_fold_is_a_three_way_split_of_everything():
    pairs = make_pairs({"a": 40, "b": 20})
    for fold in kfold_split(pairs, k=6, seed=3):
        ids = fold.train_ids + fold.validation_ids + fold.test_ids
        assert sorted(ids) == sorted(i for i, _ in pairs)


def test_full_scale_test_fold_sizes():
    pairs = make_pairs(FULL_COUNTS)
    folds = kfold_split(pairs, k=10, seed=0)
    sizes = sorted(len(f.test_ids) for f in folds)
    assert sizes == [182, 182] + [183] * 8
    assert sum(sizes) == 1828


def test_full_scale_stratification_within_one():
    pairs = make_pairs(FULL_COUNTS)
    folds = kfold_split(pairs, k=10, seed=0)
    for group, total in FULL_COUNTS.items():
        per_fold = [
            sum(1 for i in f.test_ids if f"-{group[:3].lower().replace(' ', '')}-" in i)
            for f in folds
        ]
        assert sum(per_fold) == total
        assert max(per_fold) - min(per_fold) <= 1


def test_validation_sizes_track_dataset_fraction():
    pairs = make_pairs(FULL_COUNTS)
    for fold in kfold_split(pairs, k=10, seed=0):
        # 10% of the class totals, rounded per class
        assert len(fold.validation_ids) == sum(
            round(n * 0.10) for n in FULL_COUNTS.values()
        )


def test_unstratified_mode_still_partitions():
    pairs = make_pairs({"a": 17, "b": 13})
    folds = kfold_split(pairs, k=4, seed=2, stratified=False)
    seen = sorted(i for f in folds for i in f.test_ids)
    assert seen == sorted(i for i, _ in pairs)


def test_same_seed_same_folds():
    pairs = make_pairs({"a": 30, "b": 18, "c": 12})
    a = kfold_split(pairs, k=5, seed=9)
    b = kfold_split(pairs, k=5, seed=9)
    assert fold_fingerprint(a) == fold_fingerprint(b)
    for x, y in zip(a, b):
        assert x == y


def test_different_seed_different_assignment():
    pairs = make_pairs({"a": 30, "b": 18, "c": 12})
    a = kfold_split(pairs, k=5, seed=1)
    b = kfold_split(pairs, k=5, seed=2)
    assert fold_fingerprint(a) != fold_fingerprint(b)


def test_fingerprint_ignores_listing_order():
    fold = FoldSplit(0, ("t1", "t2"), ("v1",), ("x1",))
    reordered = FoldSplit(0, ("t2", "t1"), ("v1",), ("x1",))
    assert fold_fingerprint([fold]) == fold_fingerprint([reordered])


def test_k_equals_size_gives_leave_one_out_tests():
    pairs = make_pairs({"a": 4, "b": 4})
    folds = kfold_split(pairs, k=8, seed=0)
    assert all(len(f.test_ids) == 1 for f in folds)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"k": 1},
        {"k": 99},
        {"validation_fraction": 0.0},
        {"validation_fraction": 0.5},
        {"validation_fraction": -0.1},
    ],
)
def test_bad_parameters_rejected(kwargs):
    pairs = make_pairs({"a": 10, "b": 10})
    with pytest.raises(ValueError):
        kfold_split(pairs, seed=0, **{"k": 4, **kwargs})


def test_duplicate_ids_rejected():
    pairs = [("same", "a"), ("same", "b"), ("other", "a"), ("fourth", "b")]
    with pytest.raises(ValueError):
        kfold_split(pairs, k=2, seed=0)


def test_overlapping_buckets_rejected_at_construction():
    with pytest.raises(ValueError):
        FoldSplit(0, ("x", "y"), ("y",), ("z",))


@settings(max_examples=40, deadline=None)
@given(
    st.dictionaries(
        st.sampled_from(GROUP_NAMES),
        st.integers(min_value=4, max_value=25),
        min_size=2,
        max_size=5,
    ),
    st.integers(min_value=2, max_value=6),
    st.integers(min_value=0, max_value=100),
)
def test_property_partition_and_stratification(counts, k, seed):
    pairs = make_pairs(counts)
    folds = kfold_split(pairs, k=k, seed=seed)
    all_ids = sorted(i for i, _ in pairs)
    assert sorted(i for f in folds for i in f.test_ids) == all_ids
    fold_sizes = [len(f.test_ids) for f in folds]
    assert max(fold_sizes) - min(fold_sizes) <= 1
    for group in counts:
        tag = f"-{group[:3].lower().replace(' ', '')}-"
        per_fold = [sum(1 for i in f.test_ids if tag in i) for f in folds]
        assert max(per_fold) - min(per_fold) <= 1
