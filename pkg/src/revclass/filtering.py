"""Source-relatedness filtering of labeled comments.

A comment survives when its file path looks like source (extension
allowlist, default Python), is not one of the review system's
pseudo-files (commit message and friends), and, when the commented
revision's text is available, actually parses. Retained samples get
is_source_related set; everything else is dropped.
"""
from __future__ import annotations

from .pytree import ParseFailure, parse_source
from .types import FileRevisionPair, LabeledSample

DEFAULT_ALLOWLIST = (".py",)

# Gerrit's magic paths: review artifacts, never source files.
MAGIC_PATHS = ("/COMMIT_MSG", "/MERGE_LIST", "/PATCHSET_LEVEL")


def filter_source_related(
    samples: list[LabeledSample],
    pairs: dict[str, FileRevisionPair] | None = None,
    allowlist: tuple[str, ...] = DEFAULT_ALLOWLIST,
) -> list[LabeledSample]:
    retained: list[LabeledSample] = []
    parse_ok_cache: dict[str, bool] = {}
    for sample in samples:
        path = sample.comment.file_path
        if path in MAGIC_PATHS or not path.endswith(tuple(allowlist)):
            continue
        if pairs is not None:
            pair = pairs.get(sample.comment.comment_id)
            if pair is not None and pair.has_source:
                ok = parse_ok_cache.get(pair.source)
                if ok is None:
                    ok = _parses(pair.source)
                    parse_ok_cache[pair.source] = ok
                if not ok:
                    continue
        sample.is_source_related = True
        retained.append(sample)
    return retained


def _parses(text: str) -> bool:
    try:
        parse_source(text)
    except ParseFailure:
        return False
    return True
