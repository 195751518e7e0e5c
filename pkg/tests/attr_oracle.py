"""Independent brute-force oracle for the 27-attribute extractor.

Shares only the parser and the node correspondence (which tree matching
is right is pinned separately by the differ's own tests); everything
downstream is re-derived here from scratch with exhaustive loops:
insert/delete sets by scanning every node, move/update classification
with its own rank-counting formulation, window membership via explicit
line-range set intersection, line coverage via root-to-leaf path scans,
and cyclomatic complexity straight off the stdlib ast module.
"""

from __future__ import annotations

import ast

from revclass.astdiff import diff_asts
from revclass.attributes import ATTRIBUTE_NAMES
from revclass.pytree import ParseFailure, parse_source
from revclass.types import FileRevisionPair, ReviewCommentRange

_BLOCKY = ("Block", "Else", "Finally")
_ASSIGNS = ("Assign", "AugAssign", "AnnAssign")


def oracle_extract(pair: FileRevisionPair, rcr: ReviewCommentRange) -> dict:
    vals = dict.fromkeys(ATTRIBUTE_NAMES, 0)
    vals["hasNewFile"] = int(pair.destination is not None)
    vals["hasOldFile"] = int(pair.source is not None)
    vals["commentLOC"] = rcr.comment_line

    src_tree = _try_parse(pair.source)
    dst_tree = _try_parse(pair.destination)
    if src_tree is not None:
        vals["cyclomaticComplexity"] = _mccabe_raw(pair.source)
    if src_tree is None or dst_tree is None:
        return vals

    mapping = diff_asts(src_tree, dst_tree)

    inserted = [d for d in dst_tree.nodes() if mapping.src_of(d) is None]
    deleted = [s for s in src_tree.nodes() if mapping.dst_of(s) is None]
    updates: list[tuple] = []
    moves: list[tuple] = []
    for s in src_tree.nodes():
        d = mapping.dst_of(s)
        if d is None:
            continue
        if s.value != d.value:
            updates.append((s, d))
        elif _moved(mapping, s, d):
            moves.append((s, d))

    window = set(range(rcr.start_line, rcr.end_line + 1))

    def in_window(node) -> bool:
        return bool(set(range(node.start_line, node.end_line + 1)) & window)

    def lands_in_window(dst_node) -> bool:
        anc = dst_node.parent
        while anc is not None and mapping.src_of(anc) is None:
            anc = anc.parent
        return anc is not None and in_window(mapping.src_of(anc))

    vals["anyInserted"] = len(inserted)
    vals["anyDeleted"] = len(deleted)
    vals["getMovedSrcs"] = len(moves)
    vals["updatedSrcs"] = len(updates)
    vals["anythingInLineMoved"] = sum(1 for s, _ in moves if in_window(s))
    vals["anythingInLineUpdated"] = sum(1 for s, _ in updates if in_window(s))
    vals["anythingInLineDeleted"] = sum(1 for s in deleted if in_window(s))
    vals["anythingMovedIntoLine"] = sum(1 for _, d in moves if lands_in_window(d))
    vals["anythingInsertedIntoLine"] = sum(1 for d in inserted if lands_in_window(d))

    vals["insertedIfConditions"] = sum(1 for d in inserted if d.kind == "If")
    vals["deletedIfConditions"] = sum(1 for s in deleted if s.kind == "If")
    vals["elseInserted"] = sum(1 for d in inserted if d.kind == "Else")
    vals["elseDeleted"] = sum(1 for s in deleted if s.kind == "Else")
    vals["insertedAssertConditions"] = sum(1 for d in inserted if d.kind == "Assert")
    vals["insertedTryCatch"] = sum(1 for d in inserted if d.kind == "Try")
    vals["removedTryCatch"] = sum(1 for s in deleted if s.kind == "Try")

    move_ids = {s.index for s, _ in moves}
    delete_ids = {s.index for s in deleted}
    vals["entireLineMoved"] = _fully_covered(src_tree, window, move_ids)
    vals["entireLineDeleted"] = _fully_covered(src_tree, window, delete_ids)

    vals["stringsUpdated"] = sum(1 for s, _ in updates if _is_string(s))
    vals["magicStringsReplaced"] = _magic_strings(mapping, deleted)
    vals["movedBlocksInIfConditions"] = sum(
        1
        for s, _ in moves
        if s.kind in _BLOCKY and s.parent is not None and s.parent.kind == "If"
    )

    update_src_ids = {s.index for s, _ in updates}
    count = 0
    for s in src_tree.nodes():
        if s.kind not in _ASSIGNS or mapping.dst_of(s) is None:
            continue
        rhs = _rhs_of(s)
        if rhs is not None and any(n.index in update_src_ids for n in rhs.nodes()):
            count += 1
    vals["updatedValueAssignments"] = count

    update_dst_ids = {d.index for _, d in updates}
    count = 0
    for d in dst_tree.nodes():
        if d.kind != "Call":
            continue
        for arg in d.children[1:]:
            if any(n.index in update_dst_ids for n in arg.nodes()):
                count += 1
    vals["updatedFunctionArguments"] = count

    return vals


# ---------------------------------------------------------------------------

def _try_parse(text):
    if text is None:
        return None
    try:
        return parse_source(text)
    except ParseFailure:
        return None


def _mccabe_raw(source: str) -> int:
    tree = ast.parse(source)
    n = 1
    for node in ast.walk(tree):
        if isinstance(node, (ast.If, ast.For, ast.AsyncFor, ast.While, ast.IfExp)):
            n += 1
        elif isinstance(node, ast.ExceptHandler):
            n += 1
        elif isinstance(node, ast.BoolOp):
            n += len(node.values) - 1
        elif isinstance(node, ast.comprehension):
            n += len(node.ifs)
    return n


def _moved(mapping, s, d) -> bool:
    ps, pd = s.parent, d.parent
    if (ps is None) != (pd is None):
        return True
    if ps is None:
        return False
    if mapping.dst_of(ps) is not pd:
        return True
    # rank of s among siblings mapping under pd vs rank of d among their
    # partners, in destination document order
    shared_partner_ids = set()
    src_rank = None
    seen = 0
    for child in ps.children:
        partner = mapping.dst_of(child)
        if partner is None or partner.parent is not pd:
            continue
        shared_partner_ids.add(partner.index)
        if child is s:
            src_rank = seen
        seen += 1
    dst_rank = 0
    for child in pd.children:
        if child is d:
            break
        if child.index in shared_partner_ids:
            dst_rank += 1
    return src_rank != dst_rank


def _fully_covered(src_tree, window, action_ids) -> int:
    leaves = list(src_tree.leaves())
    covered_count = 0
    for line in sorted(window):
        on_line = [lf for lf in leaves if lf.start_line <= line <= lf.end_line]
        if not on_line:
            continue
        if all(_path_hits(lf, action_ids) for lf in on_line):
            covered_count += 1
    return covered_count


def _path_hits(leaf, action_ids) -> bool:
    node = leaf
    while node is not None:
        if node.index in action_ids:
            return True
        node = node.parent
    return False


def _is_string(node) -> bool:
    return node.kind == "Constant" and node.value[:1] in "'\""


def _magic_strings(mapping, deleted) -> int:
    count = 0
    for s in deleted:
        if not _is_string(s) or s.parent is None:
            continue
        partner = mapping.dst_of(s.parent)
        if partner is None:
            continue
        slot = s.parent.children.index(s)
        if slot < len(partner.children) and partner.children[slot].kind == "Name":
            count += 1
    return count


def _rhs_of(node):
    if node.kind == "AnnAssign":
        return node.children[-1] if len(node.children) == 3 else None
    return node.children[-1] if node.children else None
