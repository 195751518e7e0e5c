"""REST client for mining closed changes from a Gerrit-style endpoint.

Pages through `/changes/` with offset pagination, strips the XSSI
prefix Gerrit puts in front of every JSON body, retries transient
failures with exponential backoff, and persists a cursor after each
page so an interrupted run resumes where it stopped. Malformed change
records are logged and skipped with a running count; they never abort
a mining run.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

import requests

from .types import ChangeRecord, ChangeStatus, PatchSetRef, ReviewComment

log = logging.getLogger(__name__)

XSSI_PREFIX = ")]}'"
CLOSED_QUERY = '(status:merged OR status:abandoned) after:"{since}" before:"{until}"'


class MiningError(RuntimeError):
    """Mining failed after retries; carries the resumable offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.offset = offset


@dataclass
class MiningCursor:
    offset: int = 0
    fetched: int = 0
    skipped: int = 0
    done: bool = False

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.__dict__, indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "MiningCursor":
        return cls(**json.loads(Path(path).read_text()))


@dataclass
class GerritClient:
    endpoint: str
    session: requests.Session | None = None
    page_size: int = 100
    max_retries: int = 3
    backoff_base: float = 0.5
    timeout: float = 30.0
    sleeper: callable = time.sleep
    _session: requests.Session = field(init=False, repr=False)

    def __post_init__(self):
        self.endpoint = self.endpoint.rstrip("/")
        self._session = self.session or requests.Session()

    # -- changes -------------------------------------------------------------
    def fetch_changes(
        self,
        since: str,
        until: str,
        page_size: int | None = None,
        cursor: MiningCursor | None = None,
        cursor_path=None,
    ):
        """Yield every closed change in [since, until) exactly once."""
        page_size = self.page_size if page_size is None else page_size
        if page_size <= 0:
            raise ValueError(f"page_size must be positive, got {page_size}")
        _check_window(since, until)
        if cursor is None:
            cursor = (
                MiningCursor.load(cursor_path)
                if cursor_path and Path(cursor_path).exists()
                else MiningCursor()
            )
        if cursor.done:
            return

        query = CLOSED_QUERY.format(since=since, until=until)
        while True:
            params = {"q": query, "n": str(page_size), "S": str(cursor.offset)}
            payload = self._get_json("/changes/", params, cursor.offset)
            if not isinstance(payload, list):
                raise MiningError(
                    f"expected a change list, got {type(payload).__name__}",
                    cursor.offset,
                )
            for raw in payload:
                try:
                    change = parse_change(raw)
                except (KeyError, TypeError, ValueError) as exc:
                    cursor.skipped += 1
                    log.warning("skipping malformed change record: %s", exc)
                    continue
                cursor.fetched += 1
                yield change
            cursor.offset += len(payload)
            more = bool(payload) and bool(payload[-1].get("_more_changes"))
            if not more:
                cursor.done = True
            if cursor_path:
                cursor.save(cursor_path)
            if cursor.done:
                if cursor.skipped:
                    log.warning(
                        "mining finished; skipped %d malformed records",
                        cursor.skipped,
                    )
                return

    # -- comments ------------------------------------------------------------
    def fetch_comments(self, change_id: str) -> list[ReviewComment]:
        payload = self._get_json(f"/changes/{change_id}/comments", {}, 0)
        comments: list[ReviewComment] = []
        skipped = 0
        for file_path, entries in sorted(payload.items()):
            for raw in entries:
                try:
                    comments.append(parse_comment(raw, change_id, file_path))
                except (KeyError, TypeError, ValueError) as exc:
                    skipped += 1
                    log.warning("skipping malformed comment: %s", exc)
        if skipped:
            log.warning("change %s: skipped %d malformed comments", change_id, skipped)
        return comments

    # -- transport -----------------------------------------------------------
    def _get_json(self, path: str, params: dict, offset: int):
        url = self.endpoint + path
        last_error: Exception | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                self.sleeper(self.backoff_base * (2 ** (attempt - 1)))
            try:
                response = self._session.get(url, params=params, timeout=self.timeout)
                if response.status_code >= 500:
                    last_error = MiningError(
                        f"server error {response.status_code} from {url}", offset
                    )
                    continue
                response.raise_for_status()
                return _strip_xssi(response.text)
            except requests.RequestException as exc:
                last_error = exc
        raise MiningError(
            f"giving up on {url} after {self.max_retries + 1} attempts: {last_error}",
            offset,
        )


def _strip_xssi(body: str):
    if body.startswith(XSSI_PREFIX):
        body = body[len(XSSI_PREFIX):]
    return json.loads(body)


def _check_window(since: str, until: str) -> None:
    try:
        start = datetime.fromisoformat(since)
        end = datetime.fromisoformat(until)
    except ValueError as exc:
        raise ValueError(f"bad date window: {exc}") from exc
    if start > end:
        raise ValueError(f"date window is inverted: {since} > {until}")


def parse_change(raw: dict) -> ChangeRecord:
    status = raw["status"].capitalize()
    revisions = raw.get("revisions") or {}
    patchsets = sorted(
        (
            PatchSetRef(number=int(info["_number"]), revision=sha)
            for sha, info in revisions.items()
        ),
        key=lambda p: p.number,
    )
    return ChangeRecord(
        change_id=str(raw.get("id") or raw["change_id"]),
        project=raw.get("project", ""),
        status=ChangeStatus(status),
        created_at=_parse_timestamp(raw["created"]),
        patchsets=patchsets,
    )


def parse_comment(raw: dict, change_id: str, file_path: str) -> ReviewComment:
    # range comments anchor at their end line, which Gerrit stores as `line`
    author = raw.get("author") or {}
    return ReviewComment(
        comment_id=str(raw["id"]),
        change_id=change_id,
        patchset_number=int(raw.get("patch_set", 1)),
        file_path=file_path,
        line=int(raw.get("line", 0)),
        author_id=str(author.get("_account_id", "")),
        text=raw["message"],
        thread_parent=raw.get("in_reply_to"),
    )


def _parse_timestamp(value: str) -> datetime:
    # Gerrit emits "2011-07-01 10:35:00.000000000"; trim to microseconds
    value = value.strip()
    if "." in value:
        head, frac = value.split(".", 1)
        value = f"{head}.{frac[:6]}"
    return datetime.fromisoformat(value)
