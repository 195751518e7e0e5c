"""Core domain records shared across the pipeline."""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum

from .rubric import Group, Subcategory, group_of


class ChangeStatus(Enum):
    MERGED = "Merged"
    ABANDONED = "Abandoned"


@dataclass
class PatchSetRef:
    number: int
    revision: str = ""


@dataclass
class ChangeRecord:
    """One closed code review (change) with its ordered patchsets."""

    change_id: str
    project: str
    status: ChangeStatus
    created_at: datetime
    patchsets: list[PatchSetRef] = field(default_factory=list)

    def __post_init__(self) -> None:
        numbers = [p.number for p in self.patchsets]
        if any(b <= a for a, b in zip(numbers, numbers[1:])):
            raise ValueError(f"patchset numbers not strictly increasing: {numbers}")


@dataclass
class ReviewComment:
    """One inline review remark tied to a change, file path, and line.

    line 0 denotes a file-level comment; such comments are assigned line 1
    when a code context window is built.
    """

    comment_id: str
    change_id: str
    patchset_number: int
    file_path: str
    line: int
    author_id: str
    text: str
    thread_parent: str | None = None

    def __post_init__(self) -> None:
        if self.line < 0:
            raise ValueError(f"comment line must be >= 0, got {self.line}")
        if self.patchset_number < 1:
            raise ValueError(f"patchset_number must be >= 1, got {self.patchset_number}")
        if not self.text.strip():
            raise ValueError("comment text is empty")

    @property
    def effective_line(self) -> int:
        """Anchor line for context purposes; file-level comments anchor at 1."""
        return max(1, self.line)


@dataclass
class FileRevisionPair:
    """Source revision (commented on) and destination revision (finally merged).

    Either side may be absent: an absent destination means no change
    survived into the merged codebase; an absent source means the commented
    revision could not be recovered.
    """

    file_path: str
    source: str | None = None
    destination: str | None = None

    @property
    def has_source(self) -> bool:
        return self.source is not None

    @property
    def has_destination(self) -> bool:
        return self.destination is not None


@dataclass
class ReviewCommentRange:
    """The +-10 line window around a comment's anchor line."""

    file_path: str
    comment_line: int
    start_line: int
    end_line: int
    line_drift: bool = False

    def __post_init__(self) -> None:
        if not (1 <= self.start_line <= self.comment_line <= self.end_line):
            raise ValueError(
                f"invalid range: start={self.start_line} "
                f"comment={self.comment_line} end={self.end_line}"
            )

    def __len__(self) -> int:
        return self.end_line - self.start_line + 1

    def contains_line(self, line: int) -> bool:
        return self.start_line <= line <= self.end_line

    def intersects(self, start: int, end: int) -> bool:
        return start <= self.end_line and end >= self.start_line


@dataclass
class CodeContext:
    """Verbatim slice of the source file covering the comment range."""

    text: str
    line_span: ReviewCommentRange


@dataclass
class LabeledSample:
    """A review comment with its label, code context, and attribute vector."""

    comment: ReviewComment
    subcategory: Subcategory
    group: Group
    context: CodeContext | None = None
    attributes: "AttributeVector | None" = None
    is_source_related: bool = False

    def __post_init__(self) -> None:
        expected = group_of(self.subcategory)
        if self.group is not expected:
            raise ValueError(
                f"group {self.group.value!r} does not match subcategory "
                f"{self.subcategory.value!r} (expected {expected.value!r})"
            )
