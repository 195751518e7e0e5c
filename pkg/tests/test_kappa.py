import pytest
from hypothesis import given, strategies as st

from revclass.kappa import cohens_kappa

labels = st.sampled_from(["F", "R", "D", "Q", "X"])
label_pairs = st.lists(st.tuples(labels, labels), min_size=2, max_size=60)


def test_perfect_agreement():
    assert cohens_kappa(["a", "b", "a"], ["a", "b", "a"]) == pytest.approx(1.0)


def test_interleaved_disagreement_is_zero():
    # observed agreement 0.5 equals chance agreement 0.5 exactly
    assert cohens_kappa(["A", "A", "B", "B"], ["A", "B", "A", "B"]) == pytest.approx(0.0)


def test_worst_case_binary():
    assert cohens_kappa(["A", "A", "B", "B"], ["B", "B", "A", "A"]) == pytest.approx(-1.0)


def test_published_worked_example():
    # 2x2 table: 20 yes-yes, 5 yes-no, 10 no-yes, 15 no-no -> kappa = 0.4
    a = ["y"] * 25 + ["n"] * 25
    b = ["y"] * 20 + ["n"] * 5 + ["y"] * 10 + ["n"] * 15
    assert cohens_kappa(a, b) == pytest.approx(0.4)


def test_constant_identical_raters():
    assert cohens_kappa(["a", "a"], ["a", "a"]) == 1.0


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        cohens_kappa(["a"], ["a", "b"])


def test_empty_rejected():
    with pytest.raises(ValueError):
        cohens_kappa([], [])


@given(label_pairs)
def test_symmetry(pairs):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    assert cohens_kappa(a, b) == pytest.approx(cohens_kappa(b, a))


@given(label_pairs)
def test_relabeling_invariance(pairs):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    mapping = {"F": "0", "R": "1", "D": "2", "Q": "3", "X": "4"}
    renamed = cohens_kappa([mapping[x] for x in a], [mapping[x] for x in b])
    assert cohens_kappa(a, b) == pytest.approx(renamed)


@given(label_pairs)
def test_bounded(pairs):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    assert -1.0 - 1e-9 <= cohens_kappa(a, b) <= 1.0 + 1e-9
