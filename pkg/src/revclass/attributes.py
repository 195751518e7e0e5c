"""The 27-attribute vector computed from a commented file revision pair.

Nine counts summarize the AST edit actions between the revision the
comment was written on (source) and the revision finally merged
(destination), fourteen count specific change shapes (conditions,
else branches, strings, try blocks, assignments, call arguments), and
four describe the files themselves.

Line-scoped variants restrict to the reviewed code region (RCR): a node
participates when its line span intersects the RCR. "Into line" counts
trace a destination-side landing site back through the node mapping to
the nearest matched ancestor and test that ancestor's source span
against the RCR.

When either side fails to parse, the 23 diff-derived counts stay zero
and the result is flagged, keeping the vector width fixed.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .astdiff import AstMapping, diff_asts
from .complexity import cyclomatic_complexity
from .pytree import BLOCK_KINDS, Node, ParseFailure, is_string_literal, parse_source
from .types import FileRevisionPair, ReviewCommentRange

_ASSIGNMENT_KINDS = ("Assign", "AugAssign", "AnnAssign")


@dataclass
class AttributeVector:
    # AST-based
    anyInserted: int = 0
    anyDeleted: int = 0
    getMovedSrcs: int = 0
    updatedSrcs: int = 0
    anythingInLineMoved: int = 0
    anythingInLineUpdated: int = 0
    anythingInLineDeleted: int = 0
    anythingMovedIntoLine: int = 0
    anythingInsertedIntoLine: int = 0
    # change-based
    insertedIfConditions: int = 0
    deletedIfConditions: int = 0
    elseInserted: int = 0
    elseDeleted: int = 0
    entireLineMoved: int = 0
    entireLineDeleted: int = 0
    stringsUpdated: int = 0
    magicStringsReplaced: int = 0
    movedBlocksInIfConditions: int = 0
    insertedAssertConditions: int = 0
    insertedTryCatch: int = 0
    removedTryCatch: int = 0
    updatedValueAssignments: int = 0
    updatedFunctionArguments: int = 0
    # file-based
    hasNewFile: int = 0
    hasOldFile: int = 0
    cyclomaticComplexity: int = 0
    commentLOC: int = 0

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in ATTRIBUTE_NAMES], dtype=np.float64)

    def to_dict(self) -> dict[str, int]:
        return {n: getattr(self, n) for n in ATTRIBUTE_NAMES}


ATTRIBUTE_NAMES: tuple[str, ...] = tuple(f.name for f in fields(AttributeVector))

# The nine action counts plus the fourteen change-shape counts depend on
# the diff; the four file-based fields do not.
DIFF_DERIVED_NAMES: tuple[str, ...] = ATTRIBUTE_NAMES[:23]


@dataclass
class ExtractionResult:
    vector: AttributeVector
    parse_failed: bool = False


def extract_attributes(
    pair: FileRevisionPair, rcr: ReviewCommentRange
) -> ExtractionResult:
    vec = AttributeVector(
        hasNewFile=int(pair.has_destination),
        hasOldFile=int(pair.has_source),
        commentLOC=rcr.comment_line,
    )
    parse_failed = False

    src_tree = dst_tree = None
    if pair.has_source:
        try:
            src_tree = parse_source(pair.source)
            vec.cyclomaticComplexity = cyclomatic_complexity(pair.source)
        except (ParseFailure, SyntaxError, ValueError):
            parse_failed = True
    if pair.has_destination:
        try:
            dst_tree = parse_source(pair.destination)
        except ParseFailure:
            parse_failed = True

    if src_tree is not None and dst_tree is not None and not parse_failed:
        mapping = diff_asts(src_tree, dst_tree)
        _fill_diff_fields(vec, mapping, rcr)

    return ExtractionResult(vector=vec, parse_failed=parse_failed)


def _fill_diff_fields(
    vec: AttributeVector, mapping: AstMapping, rcr: ReviewCommentRange
) -> None:
    inserted = mapping.inserted
    deleted = mapping.deleted
    moves = mapping.moves
    updates = mapping.updates

    vec.anyInserted = len(inserted)
    vec.anyDeleted = len(deleted)
    vec.getMovedSrcs = len(moves)
    vec.updatedSrcs = len(updates)

    def in_rcr(node: Node) -> bool:
        return rcr.intersects(node.start_line, node.end_line)

    vec.anythingInLineMoved = sum(1 for s, _ in moves if in_rcr(s))
    vec.anythingInLineUpdated = sum(1 for s, _ in updates if in_rcr(s))
    vec.anythingInLineDeleted = sum(1 for s in deleted if in_rcr(s))
    vec.anythingMovedIntoLine = sum(
        1 for _, d in moves if _lands_in_rcr(mapping, d, rcr)
    )
    vec.anythingInsertedIntoLine = sum(
        1 for d in inserted if _lands_in_rcr(mapping, d, rcr)
    )

    vec.insertedIfConditions = _kind_count(inserted, "If")
    vec.deletedIfConditions = _kind_count(deleted, "If")
    vec.elseInserted = _kind_count(inserted, "Else")
    vec.elseDeleted = _kind_count(deleted, "Else")

    moved_ids = {s.index for s, _ in moves}
    deleted_ids = {s.index for s in deleted}
    vec.entireLineMoved = _fully_covered_lines(mapping.src_root, rcr, moved_ids)
    vec.entireLineDeleted = _fully_covered_lines(mapping.src_root, rcr, deleted_ids)

    vec.stringsUpdated = sum(1 for s, _ in updates if is_string_literal(s))
    vec.magicStringsReplaced = detect_magic_string_replacements(mapping)
    vec.movedBlocksInIfConditions = sum(
        1
        for s, _ in moves
        if s.kind in BLOCK_KINDS and s.parent is not None and s.parent.kind == "If"
    )
    vec.insertedAssertConditions = _kind_count(inserted, "Assert")
    vec.insertedTryCatch = _kind_count(inserted, "Try")
    vec.removedTryCatch = _kind_count(deleted, "Try")

    updated_src_ids = {s.index for s, _ in updates}
    updated_dst_ids = {d.index for _, d in updates}
    vec.updatedValueAssignments = _updated_assignments(mapping, updated_src_ids)
    vec.updatedFunctionArguments = _updated_call_arguments(
        mapping.dst_root, updated_dst_ids
    )


def _kind_count(nodes, kind: str) -> int:
    return sum(1 for n in nodes if n.kind == kind)


def _lands_in_rcr(mapping: AstMapping, dst_node: Node, rcr: ReviewCommentRange) -> bool:
    anchor = dst_node.parent
    while anchor is not None and not mapping.dst_matched(anchor):
        anchor = anchor.parent
    if anchor is None:
        return False
    src = mapping.src_of(anchor)
    return rcr.intersects(src.start_line, src.end_line)


def _fully_covered_lines(
    src_root: Node, rcr: ReviewCommentRange, action_ids: set[int]
) -> int:
    """Source lines in the RCR all of whose leaves sit under an action node."""
    if not action_ids:
        return 0
    per_line: dict[int, bool] = {}
    for leaf in src_root.leaves():
        covered = _under_action(leaf, action_ids)
        for line in range(leaf.start_line, leaf.end_line + 1):
            if rcr.contains_line(line):
                per_line[line] = per_line.get(line, True) and covered
    return sum(1 for fully in per_line.values() if fully)


def _under_action(leaf: Node, action_ids: set[int]) -> bool:
    node: Node | None = leaf
    while node is not None:
        if node.index in action_ids:
            return True
        node = node.parent
    return False


def _updated_assignments(mapping: AstMapping, updated_src_ids: set[int]) -> int:
    count = 0
    for node in mapping.src_root.nodes():
        if node.kind not in _ASSIGNMENT_KINDS or not mapping.src_matched(node):
            continue
        rhs = _assignment_rhs(node)
        if rhs is not None and any(n.index in updated_src_ids for n in rhs.nodes()):
            count += 1
    return count


def _assignment_rhs(node: Node) -> Node | None:
    # Assign: [targets..., value]; AugAssign: [target, op, value];
    # AnnAssign: [target, annotation, value?] where value may be absent.
    if node.kind == "AnnAssign" and len(node.children) < 3:
        return None
    return node.children[-1] if node.children else None


def _updated_call_arguments(dst_root: Node, updated_dst_ids: set[int]) -> int:
    count = 0
    for node in dst_root.nodes():
        if node.kind != "Call":
            continue
        for arg in node.children[1:]:  # first child is the callee
            if any(n.index in updated_dst_ids for n in arg.nodes()):
                count += 1
    return count


def detect_magic_string_replacements(mapping: AstMapping) -> int:
    """String literals whose slot holds an identifier in the destination."""
    count = 0
    for node in mapping.src_root.nodes():
        if not is_string_literal(node) or mapping.src_matched(node):
            continue
        parent = node.parent
        if parent is None:
            continue
        dst_parent = mapping.dst_of(parent)
        if dst_parent is None:
            continue
        slot = next(i for i, c in enumerate(parent.children) if c is node)
        if slot < len(dst_parent.children) and dst_parent.children[slot].kind == "Name":
            count += 1
    return count
