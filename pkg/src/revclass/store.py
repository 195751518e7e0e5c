"""On-disk corpus layout and labeled-dataset assembly.

A store directory holds line-delimited JSON for mined records plus a
label CSV, so modeling never depends on the mining endpoint being
reachable:

    changes.jsonl   one change per line
    comments.jsonl  one review comment per line
    files.jsonl     {comment_id, file_path, source, destination}
    labels.csv      comment_id, subcategory, group, annotator_a, annotator_b, final
    index.json      schema tag and record counts

Malformed lines are logged and skipped with a count, never fatal:
an interrupted mining run must not poison later imports.
"""
from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

from .attributes import extract_attributes
from .context import extract_context, extract_rcr
from .rubric import Group, Subcategory, group_of, parse_group, parse_subcategory
from .types import (
    ChangeRecord,
    ChangeStatus,
    CodeContext,
    FileRevisionPair,
    LabeledSample,
    PatchSetRef,
    ReviewComment,
    ReviewCommentRange,
)

log = logging.getLogger(__name__)

STORE_SCHEMA = "revclass.store/1"
LABEL_COLUMNS = ("comment_id", "subcategory", "group", "annotator_a", "annotator_b", "final")


@dataclass
class LabelRow:
    comment_id: str
    subcategory: Subcategory
    group: Group
    annotator_a: str = ""
    annotator_b: str = ""
    final: str = ""


@dataclass
class ImportSummary:
    comments: int = 0
    labels: int = 0
    file_pairs: int = 0
    skipped: int = 0


class CorpusStore:
    def __init__(self, root):
        self.root = Path(root)

    # -- layout ------------------------------------------------------------
    @property
    def changes_path(self) -> Path:
        return self.root / "changes.jsonl"

    @property
    def comments_path(self) -> Path:
        return self.root / "comments.jsonl"

    @property
    def files_path(self) -> Path:
        return self.root / "files.jsonl"

    @property
    def labels_path(self) -> Path:
        return self.root / "labels.csv"

    @property
    def index_path(self) -> Path:
        return self.root / "index.json"

    def initialize(self) -> "CorpusStore":
        self.root.mkdir(parents=True, exist_ok=True)
        if not self.index_path.exists():
            self._write_index({})
        return self

    def _write_index(self, counts: dict) -> None:
        payload = {"schema": STORE_SCHEMA, "counts": counts}
        self.index_path.write_text(json.dumps(payload, indent=2) + "\n")

    def read_index(self) -> dict:
        return json.loads(self.index_path.read_text())

    def refresh_index(self) -> dict:
        counts = {
            "changes": _count_lines(self.changes_path),
            "comments": _count_lines(self.comments_path),
            "file_pairs": _count_lines(self.files_path),
            "labels": len(self.read_labels()) if self.labels_path.exists() else 0,
        }
        self._write_index(counts)
        return counts

    # -- changes -----------------------------------------------------------
    def append_changes(self, changes) -> int:
        return _append_jsonl(self.changes_path, (change_to_dict(c) for c in changes))

    def iter_changes(self):
        for record in _iter_jsonl(self.changes_path):
            yield change_from_dict(record)

    # -- comments ----------------------------------------------------------
    def append_comments(self, comments) -> int:
        return _append_jsonl(self.comments_path, (comment_to_dict(c) for c in comments))

    def iter_comments(self):
        skipped = 0
        for record in _iter_jsonl(self.comments_path):
            try:
                yield comment_from_dict(record)
            except (KeyError, TypeError, ValueError) as exc:
                skipped += 1
                log.warning("skipping malformed comment record: %s", exc)
        if skipped:
            log.warning("skipped %d malformed comment records", skipped)

    # -- file pairs ----------------------------------------------------------
    def append_file_pairs(self, pairs) -> int:
        """pairs: iterable of (comment_id, FileRevisionPair)."""
        return _append_jsonl(
            self.files_path,
            (
                {
                    "comment_id": comment_id,
                    "file_path": pair.file_path,
                    "source": pair.source,
                    "destination": pair.destination,
                }
                for comment_id, pair in pairs
            ),
        )

    def file_pairs(self) -> dict[str, FileRevisionPair]:
        out: dict[str, FileRevisionPair] = {}
        for record in _iter_jsonl(self.files_path):
            out[record["comment_id"]] = FileRevisionPair(
                file_path=record.get("file_path", ""),
                source=record.get("source"),
                destination=record.get("destination"),
            )
        return out

    # -- labels --------------------------------------------------------------
    def write_labels(self, rows) -> int:
        count = 0
        with self.labels_path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(LABEL_COLUMNS)
            for row in rows:
                writer.writerow(
                    [
                        row.comment_id,
                        row.subcategory.value,
                        row.group.value,
                        row.annotator_a,
                        row.annotator_b,
                        row.final,
                    ]
                )
                count += 1
        return count

    def read_labels(self) -> list[LabelRow]:
        rows: list[LabelRow] = []
        skipped = 0
        with self.labels_path.open(newline="") as handle:
            for record in csv.DictReader(handle):
                try:
                    subcategory = parse_subcategory(record["subcategory"])
                    group = (
                        parse_group(record["group"])
                        if record.get("group")
                        else group_of(subcategory)
                    )
                    if group is not group_of(subcategory):
                        raise ValueError(
                            f"label group {group.value!r} contradicts subcategory "
                            f"{subcategory.value!r}"
                        )
                    rows.append(
                        LabelRow(
                            comment_id=record["comment_id"],
                            subcategory=subcategory,
                            group=group,
                            annotator_a=record.get("annotator_a", ""),
                            annotator_b=record.get("annotator_b", ""),
                            final=record.get("final", ""),
                        )
                    )
                except (KeyError, ValueError) as exc:
                    skipped += 1
                    log.warning("skipping malformed label row: %s", exc)
        if skipped:
            log.warning("skipped %d malformed label rows", skipped)
        return rows


# ---------------------------------------------------------------------------
# record (de)serialization

def change_to_dict(change: ChangeRecord) -> dict:
    return {
        "change_id": change.change_id,
        "project": change.project,
        "status": change.status.value,
        "created_at": change.created_at.isoformat(),
        "patchsets": [
            {"number": p.number, "revision": p.revision} for p in change.patchsets
        ],
    }


def change_from_dict(record: dict) -> ChangeRecord:
    return ChangeRecord(
        change_id=record["change_id"],
        project=record.get("project", ""),
        status=ChangeStatus(record["status"]),
        created_at=datetime.fromisoformat(record["created_at"]),
        patchsets=[
            PatchSetRef(number=p["number"], revision=p.get("revision", ""))
            for p in record.get("patchsets", [])
        ],
    )


def comment_to_dict(comment: ReviewComment) -> dict:
    return {
        "comment_id": comment.comment_id,
        "change_id": comment.change_id,
        "patchset_number": comment.patchset_number,
        "file_path": comment.file_path,
        "line": comment.line,
        "author_id": comment.author_id,
        "text": comment.text,
        "thread_parent": comment.thread_parent,
    }


def comment_from_dict(record: dict) -> ReviewComment:
    return ReviewComment(
        comment_id=record["comment_id"],
        change_id=record["change_id"],
        patchset_number=int(record.get("patchset_number", 1)),
        file_path=record["file_path"],
        line=int(record.get("line", 0)),
        author_id=record.get("author_id", ""),
        text=record["text"],
        thread_parent=record.get("thread_parent"),
    )


def _append_jsonl(path: Path, records) -> int:
    count = 0
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a") as handle:
        for record in records:
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
            count += 1
    return count


def _iter_jsonl(path: Path):
    if not path.exists():
        return
    skipped = 0
    with path.open() as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                skipped += 1
                log.warning("skipping unparseable line in %s: %s", path.name, exc)
    if skipped:
        log.warning("skipped %d unparseable lines in %s", skipped, path.name)


def _count_lines(path: Path) -> int:
    if not path.exists():
        return 0
    with path.open() as handle:
        return sum(1 for line in handle if line.strip())


# ---------------------------------------------------------------------------
# dataset import and assembly

def import_dataset(
    store: CorpusStore,
    labels_csv,
    comments_jsonl,
    files_jsonl=None,
) -> ImportSummary:
    """Build a store from a published snapshot (no mining required)."""
    store.initialize()
    summary = ImportSummary()

    comments = []
    for record in _iter_jsonl(Path(comments_jsonl)):
        try:
            comments.append(comment_from_dict(record))
        except (KeyError, TypeError, ValueError) as exc:
            summary.skipped += 1
            log.warning("skipping malformed comment: %s", exc)
    summary.comments = store.append_comments(comments)

    labels_text = Path(labels_csv).read_text()
    (store.labels_path).write_text(labels_text)
    summary.labels = len(store.read_labels())

    if files_jsonl is not None:
        pairs = []
        for record in _iter_jsonl(Path(files_jsonl)):
            try:
                pairs.append(
                    (
                        record["comment_id"],
                        FileRevisionPair(
                            file_path=record.get("file_path", ""),
                            source=record.get("source"),
                            destination=record.get("destination"),
                        ),
                    )
                )
            except (KeyError, TypeError) as exc:
                summary.skipped += 1
                log.warning("skipping malformed file pair: %s", exc)
        summary.file_pairs = store.append_file_pairs(pairs)

    store.refresh_index()
    return summary


@dataclass
class DatasetStats:
    total: int = 0
    missing_comment: int = 0
    missing_pair: int = 0
    context_unavailable: int = 0
    parse_failed: int = 0
    counts: dict[str, int] = field(default_factory=dict)


def load_labeled_samples(
    store: CorpusStore,
    attach_attributes: bool = True,
) -> tuple[list[LabeledSample], DatasetStats]:
    """Join comments, labels, and file pairs into training-ready samples."""
    comments = {c.comment_id: c for c in store.iter_comments()}
    pairs = store.file_pairs()
    stats = DatasetStats()
    samples: list[LabeledSample] = []
    for row in store.read_labels():
        comment = comments.get(row.comment_id)
        if comment is None:
            stats.missing_comment += 1
            log.warning("label for unknown comment %r", row.comment_id)
            continue
        pair = pairs.get(row.comment_id)
        if pair is None:
            stats.missing_pair += 1
        context, rcr = context_for_comment(comment, pair)
        if context is None:
            stats.context_unavailable += 1
        attributes = None
        if attach_attributes and pair is not None:
            result = extract_attributes(pair, rcr)
            attributes = result.vector
            if result.parse_failed:
                stats.parse_failed += 1
        sample = LabeledSample(
            comment=comment,
            subcategory=row.subcategory,
            group=row.group,
            context=context,
            attributes=attributes,
            is_source_related=True,
        )
        samples.append(sample)
        stats.counts[row.group.value] = stats.counts.get(row.group.value, 0) + 1
    stats.total = len(samples)
    return samples, stats


def context_for_comment(
    comment: ReviewComment, pair: FileRevisionPair | None
) -> tuple[CodeContext | None, ReviewCommentRange]:
    """Resolve the comment's window and context text, if any."""
    line = comment.effective_line
    if pair is not None and pair.has_source:
        rcr = extract_rcr(pair.source, line, file_path=comment.file_path)
        return extract_context(pair.source, rcr), rcr
    # no source to clamp against: unclamped window, no context text
    rcr = ReviewCommentRange(
        file_path=comment.file_path,
        comment_line=line,
        start_line=max(1, line - 10),
        end_line=line + 10,
    )
    return None, rcr


def class_distribution(samples) -> dict:
    """Group counts and two-decimal percentages over labeled samples."""
    counts: dict[str, int] = {}
    for s in samples:
        counts[s.group.value] = counts.get(s.group.value, 0) + 1
    total = sum(counts.values())
    percentages = {
        name: round(100.0 * n / total, 2) if total else 0.0
        for name, n in counts.items()
    }
    return {"total": total, "counts": counts, "percentages": percentages}
