"""Code context windows around review comments."""
from __future__ import annotations

from .types import CodeContext, ReviewCommentRange

WINDOW = 10  # lines kept on each side of the comment anchor


class ContextUnavailableError(Exception):
    """Raised when no source file exists to slice a context from."""


def split_lines(text: str) -> list[str]:
    """File text as a list of lines, without a phantom empty final line."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def extract_rcr(
    source_text: str, comment_line: int, file_path: str = ""
) -> ReviewCommentRange:
    """Clamp the +-10 line window around comment_line to the file bounds.

    Comment lines beyond the end of the file (review line numbers can
    outlive later edits) clamp to the last line and are flagged as drift.
    """
    if comment_line < 1:
        raise ValueError(f"comment_line must be >= 1, got {comment_line}")
    file_length = len(split_lines(source_text))
    if file_length == 0:
        raise ValueError("source file is empty")

    drift = comment_line > file_length
    anchor = min(comment_line, file_length)
    return ReviewCommentRange(
        file_path=file_path,
        comment_line=anchor,
        start_line=max(1, anchor - WINDOW),
        end_line=min(file_length, anchor + WINDOW),
        line_drift=drift,
    )


def extract_context(source_text: str | None, rcr: ReviewCommentRange) -> CodeContext:
    """Verbatim slice of the file's lines covered by the range."""
    if source_text is None:
        raise ContextUnavailableError(f"no source file for {rcr.file_path!r}")
    lines = split_lines(source_text)
    if rcr.end_line > len(lines):
        raise ValueError(
            f"range [{rcr.start_line}, {rcr.end_line}] exceeds file length {len(lines)}"
        )
    return CodeContext(
        text="\n".join(lines[rcr.start_line - 1 : rcr.end_line]),
        line_span=rcr,
    )
