"""Deterministic synthetic review-corpus snapshots.

Emits the same four files a published dataset export uses (comments.jsonl,
labels.csv, files.jsonl, changes.jsonl), sized to the real class
distribution by default, so the whole pipeline can be exercised offline:
import, context extraction, attribute extraction, training, evaluation.

Each group gets edit shapes that actually produce its signature attribute
signals (if-condition updates for Functional, renames and magic-string
replacements for Refactoring, docstring edits for Documentation, identity
pairs for Discussion, absent destinations for False Positive), and comment
texts carry the category vocabulary so the text channels are learnable.
"""

from __future__ import annotations

import csv
import json
from datetime import datetime, timedelta
from pathlib import Path

import numpy as np

from .rubric import GROUP_NAMES, GROUP_ORDER, Subcategory, group_of
from .store import LABEL_COLUMNS

# class sizes of the labeled corpus (sum 1,828)
FULL_COUNTS = {
    "Discussion": 445,
    "Documentation": 387,
    "False Positive": 158,
    "Functional": 240,
    "Refactoring": 598,
}

_SUBCATEGORIES = {
    group.value: tuple(s for s in Subcategory if group_of(s) is group)
    for group in GROUP_ORDER
}

_TEXTS = {
    Subcategory.FUNCTIONAL: "The result is wrong when the input list is empty",
    Subcategory.LOGICAL: "This condition looks wrong for the boundary case",
    Subcategory.VALIDATION: "Should validate the argument before using it",
    Subcategory.RESOURCE: "This leaks the file handle on the error path",
    Subcategory.TIMING: "Possible race when two workers call this at once",
    Subcategory.SUPPORT: "This breaks on the older runtime we still support",
    Subcategory.INTERFACE: "The signature change breaks existing callers",
    Subcategory.SOLUTION_APPROACH: "A dict lookup would be simpler than this loop",
    Subcategory.ALTERNATE_OUTPUT: "Consider returning None instead of raising here",
    Subcategory.CODE_ORGANIZATION: "Move this helper next to its only caller",
    Subcategory.VARIABLE_NAMING: "Rename s to something meaningful please",
    Subcategory.VISUAL_REPRESENTATION: "Formatting nit, wrap this long line",
    Subcategory.DOCUMENTATION: "Please add a docstring explaining the units",
    Subcategory.DESIGN_DISCUSSION: "Why was this chosen over the queue design",
    Subcategory.QUESTION: "Does this handle unicode paths correctly",
    Subcategory.PRAISE: "Nice cleanup, much easier to read now",
    Subcategory.FALSE_POSITIVE: "I think this is fine as written, ignoring",
}


# ---------------------------------------------------------------------------
# file-pair shapes; each returns (source, destination, anchor_line)

def _pair_condition_update(i):
    src = (
        f"def check_{i}(value):\n"
        f"    if value > 10:\n"
        f"        return True\n"
        f"    return False\n"
    )
    return src, src.replace("value > 10", "value > 25"), 2


def _pair_assert_added(i):
    src = f"def load_{i}(path):\n    data = read(path)\n    return data\n"
    dst = (
        f"def load_{i}(path):\n"
        f"    data = read(path)\n"
        f"    assert data is not None\n"
        f"    return data\n"
    )
    return src, dst, 2


def _pair_try_wrap(i):
    src = f"def send_{i}(msg):\n    deliver(msg)\n    return True\n"
    dst = (
        f"def send_{i}(msg):\n"
        f"    try:\n"
        f"        deliver(msg)\n"
        f"    except OSError:\n"
        f"        return False\n"
        f"    return True\n"
    )
    return src, dst, 2


def _pair_rename(i):
    src = (
        f"def sum_up_{i}(items):\n"
        f"    tot = 0\n"
        f"    for x in items:\n"
        f"        tot = tot + x\n"
        f"    return tot\n"
    )
    return src, src.replace("tot", "acc"), 2


def _pair_magic_string(i):
    src = f'def connect_{i}(client):\n    client.start("fast-retry")\n    return client\n'
    dst = f"def connect_{i}(client):\n    client.start(RETRY_MODE)\n    return client\n"
    return src, dst, 2


def _pair_function_swap(i):
    src = (
        f"def first_{i}():\n    return 1\n"
        f"\n"
        f"def second_{i}():\n    return 2\n"
    )
    dst = (
        f"def second_{i}():\n    return 2\n"
        f"\n"
        f"def first_{i}():\n    return 1\n"
    )
    return src, dst, 1


def _pair_docstring_added(i):
    src = f"def scale_{i}(vector, k):\n    return vector * k\n"
    dst = f'def scale_{i}(vector, k):\n    """Scale by k."""\n    return vector * k\n'
    return src, dst, 1


def _pair_docstring_updated(i):
    src = f'def norm_{i}(v):\n    """Normalise."""\n    return v / max(v)\n'
    dst = f'def norm_{i}(v):\n    """Normalise to the maximum."""\n    return v / max(v)\n'
    return src, dst, 2


def _pair_identity(i):
    src = (
        f"def ratio_{i}(a, b):\n"
        f"    if b == 0:\n"
        f"        return 0.0\n"
        f"    return a / b\n"
    )
    return src, src, 3


def _pair_no_destination(i):
    src = f"def maybe_{i}(flag):\n    return flag or default()\n"
    return src, None, 1


_SHAPES = {
    "Functional": (_pair_condition_update, _pair_assert_added, _pair_try_wrap),
    "Refactoring": (_pair_rename, _pair_magic_string, _pair_function_swap),
    "Documentation": (_pair_docstring_added, _pair_docstring_updated),
    "Discussion": (_pair_identity,),
    "False Positive": (_pair_no_destination,),
}


# ---------------------------------------------------------------------------

def generate_snapshot(
    out_dir: str | Path,
    counts: dict[str, int] | None = None,
    seed: int = 0,
    disagreement: float = 0.1,
) -> dict:
    """Write an import-ready snapshot; returns the file paths and totals.

    Deterministic under (counts, seed, disagreement).
    """
    counts = dict(FULL_COUNTS) if counts is None else counts
    unknown = set(counts) - set(GROUP_NAMES)
    if unknown:
        raise ValueError(f"unknown group names: {sorted(unknown)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    order = [name for name in GROUP_NAMES for _ in range(counts.get(name, 0))]
    order = [order[j] for j in rng.permutation(len(order))]

    authors = [f"r{j}" for j in range(10)]
    weights = np.array([5, 4, 4, 3, 3, 2, 2, 1, 1, 1], dtype=float)
    weights /= weights.sum()

    shape_cursor = {name: 0 for name in counts}
    sub_cursor = {name: 0 for name in counts}
    comments, labels, pairs, changes = [], [], [], []

    for i, group in enumerate(order):
        subs = _SUBCATEGORIES[group]
        sub = subs[sub_cursor[group] % len(subs)]
        sub_cursor[group] += 1
        shapes = _SHAPES[group]
        shape = shapes[shape_cursor[group] % len(shapes)]
        shape_cursor[group] += 1

        source, destination, anchor = shape(i)
        if i % 13 == 12:
            anchor = 50  # beyond EOF: exercises window drift handling
        path = f"src/m{i:04d}.py"
        change_id = f"ch{i // 3:04d}"
        comment_id = f"c{i:05d}"

        comments.append(
            {
                "comment_id": comment_id,
                "change_id": change_id,
                "patchset_number": 1,
                "file_path": path,
                "line": anchor,
                "author_id": authors[int(rng.choice(len(authors), p=weights))],
                "text": f"{_TEXTS[sub]} (case {i})",
                # reply threads only within the same change
                "thread_parent": (
                    comments[-1]["comment_id"]
                    if i % 19 == 18 and i % 3 != 0
                    else None
                ),
            }
        )

        annotator_b = sub
        if rng.random() < disagreement:
            others = [s for s in Subcategory if s is not sub]
            annotator_b = others[int(rng.choice(len(others)))]
        labels.append(
            {
                "comment_id": comment_id,
                "subcategory": sub.value,
                "group": group,
                "annotator_a": sub.value,
                "annotator_b": annotator_b.value,
                "final": sub.value,
            }
        )
        pairs.append(
            {
                "comment_id": comment_id,
                "file_path": path,
                "source": source,
                "destination": destination,
            }
        )

        if i % 3 == 0:
            changes.append(
                {
                    "change_id": change_id,
                    "project": "demo/project",
                    "status": "Merged" if (i // 3) % 4 else "Abandoned",
                    "created_at": (
                        datetime(2022, 1, 1) + timedelta(days=i // 3)
                    ).isoformat(),
                    "patchsets": [{"number": 1, "revision": f"rev{i // 3:04x}"}],
                }
            )

    paths = {
        "comments": out / "comments.jsonl",
        "labels": out / "labels.csv",
        "files": out / "files.jsonl",
        "changes": out / "changes.jsonl",
    }
    _write_jsonl(paths["comments"], comments)
    _write_jsonl(paths["files"], pairs)
    _write_jsonl(paths["changes"], changes)
    with open(paths["labels"], "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=LABEL_COLUMNS)
        writer.writeheader()
        writer.writerows(labels)

    return {
        "paths": {k: str(v) for k, v in paths.items()},
        "total": len(comments),
        "counts": {name: counts.get(name, 0) for name in GROUP_NAMES},
    }


def _write_jsonl(path: Path, records) -> None:
    with open(path, "w") as handle:
        for record in records:
            handle.write(json.dumps(record) + "\n")
