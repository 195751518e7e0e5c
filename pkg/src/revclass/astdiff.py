"""Tree differencing between two parsed file revisions.

Two-phase matching:
  phase 1 anchors maximal isomorphic subtrees top-down (by subtree digest,
  minimum height 2), ties broken by smallest line-span distance then
  source order; phase 2 matches the remaining containers bottom-up when
  the ratio of mapped descendants (dice) reaches 0.5, then aligns the
  children of each newly matched container pair so leaf-level edits
  surface as updates instead of insert/delete noise. Roots always match.

Matched pairs are classified as Update when token values differ, Move
when the parent mapping or the relative sibling order changed; a pair
meeting both conditions counts once, as Update. Every unmatched
destination node is an Insert, every unmatched source node a Delete, so
the four action sets are disjoint by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from difflib import SequenceMatcher
from enum import Enum

from .pytree import Node

MIN_ANCHOR_HEIGHT = 2
MIN_DICE = 0.5


class ActionKind(Enum):
    INSERT = "insert"
    DELETE = "delete"
    MOVE = "move"
    UPDATE = "update"


@dataclass
class EditAction:
    kind: ActionKind
    src: Node | None = None
    dst: Node | None = None

    def __repr__(self) -> str:
        return f"<{self.kind.value} src={self.src} dst={self.dst}>"


@dataclass
class AstMapping:
    """Node correspondence between two trees plus the derived edit actions."""

    src_root: Node
    dst_root: Node
    src_to_dst: dict[int, Node] = field(default_factory=dict)  # src index -> dst node
    dst_to_src: dict[int, Node] = field(default_factory=dict)
    actions: list[EditAction] = field(default_factory=list)

    def match(self, src: Node, dst: Node) -> None:
        self.src_to_dst[src.index] = dst
        self.dst_to_src[dst.index] = src

    def dst_of(self, src: Node) -> Node | None:
        return self.src_to_dst.get(src.index)

    def src_of(self, dst: Node) -> Node | None:
        return self.dst_to_src.get(dst.index)

    def src_matched(self, node: Node) -> bool:
        return node.index in self.src_to_dst

    def dst_matched(self, node: Node) -> bool:
        return node.index in self.dst_to_src

    @property
    def inserted(self) -> list[Node]:
        return [a.dst for a in self.actions if a.kind is ActionKind.INSERT]

    @property
    def deleted(self) -> list[Node]:
        return [a.src for a in self.actions if a.kind is ActionKind.DELETE]

    @property
    def moves(self) -> list[tuple[Node, Node]]:
        return [(a.src, a.dst) for a in self.actions if a.kind is ActionKind.MOVE]

    @property
    def updates(self) -> list[tuple[Node, Node]]:
        return [(a.src, a.dst) for a in self.actions if a.kind is ActionKind.UPDATE]


def diff_asts(src_root: Node, dst_root: Node) -> AstMapping:
    mapping = AstMapping(src_root, dst_root)
    _match_anchors(mapping)
    _match_containers(mapping)
    _classify_actions(mapping)
    return mapping


# ---------------------------------------------------------------------------
# phase 1: top-down isomorphic anchors

def _match_anchors(mapping: AstMapping) -> None:
    src_nodes = list(mapping.src_root.nodes())
    dst_nodes = list(mapping.dst_root.nodes())
    max_height = max(
        (n.height for n in (mapping.src_root, mapping.dst_root)), default=0
    )
    for height in range(max_height, MIN_ANCHOR_HEIGHT - 1, -1):
        src_pool = _by_digest(src_nodes, height, mapping.src_matched)
        dst_pool = _by_digest(dst_nodes, height, mapping.dst_matched)
        for digest, src_candidates in src_pool.items():
            dst_candidates = dst_pool.get(digest)
            if not dst_candidates:
                continue
            taken: set[int] = set()
            for src in src_candidates:
                best = None
                best_key = None
                for dst in dst_candidates:
                    if dst.index in taken:
                        continue
                    key = (_span_distance(src, dst), dst.index)
                    if best_key is None or key < best_key:
                        best, best_key = dst, key
                if best is None:
                    break
                taken.add(best.index)
                _match_isomorphic(mapping, src, best)


def _by_digest(nodes, height, matched):
    pools: dict[str, list[Node]] = {}
    for node in nodes:
        if node.height == height and not matched(node):
            pools.setdefault(node.digest, []).append(node)
    return pools


def _span_distance(a: Node, b: Node) -> int:
    return abs(a.start_line - b.start_line) + abs(a.end_line - b.end_line)


def _match_isomorphic(mapping: AstMapping, src: Node, dst: Node) -> None:
    # Equal digests guarantee pairwise-equal shapes, so descend in lockstep.
    stack = [(src, dst)]
    while stack:
        s, d = stack.pop()
        mapping.match(s, d)
        stack.extend(zip(s.children, d.children))


# ---------------------------------------------------------------------------
# phase 2: bottom-up container matching + child recovery

def _match_containers(mapping: AstMapping) -> None:
    src_postorder = _postorder(mapping.src_root)
    for src in src_postorder:
        if mapping.src_matched(src) or src.is_leaf:
            continue
        candidate = _best_candidate(mapping, src)
        if candidate is not None:
            mapping.match(src, candidate)
            _recover_children(mapping, src, candidate)
    if not mapping.src_matched(mapping.src_root) and not mapping.dst_matched(
        mapping.dst_root
    ):
        mapping.match(mapping.src_root, mapping.dst_root)
        _recover_children(mapping, mapping.src_root, mapping.dst_root)


def _best_candidate(mapping: AstMapping, src: Node) -> Node | None:
    src_desc = [n for n in src.nodes() if n is not src]
    common: dict[int, tuple[Node, int]] = {}
    for s in src_desc:
        d = mapping.dst_of(s)
        if d is None:
            continue
        anc = d.parent
        while anc is not None:
            if anc.kind == src.kind and not mapping.dst_matched(anc):
                node, count = common.get(anc.index, (anc, 0))
                common[anc.index] = (node, count + 1)
            anc = anc.parent
    best = None
    best_key = None
    for node, count in common.values():
        dice = 2.0 * count / (len(src_desc) + node.size() - 1)
        if dice < MIN_DICE:
            continue
        key = (-dice, _span_distance(src, node), node.index)
        if best_key is None or key < best_key:
            best, best_key = node, key
    return best


def _recover_children(mapping: AstMapping, src: Node, dst: Node) -> None:
    # pass 1: pair identical subtrees among unmatched children, in order
    src_free = [c for c in src.children if not mapping.src_matched(c)]
    dst_free = [c for c in dst.children if not mapping.dst_matched(c)]
    dst_by_digest: dict[str, list[Node]] = {}
    for c in dst_free:
        dst_by_digest.setdefault(c.digest, []).append(c)
    for c in src_free:
        pool = dst_by_digest.get(c.digest)
        if pool:
            _match_isomorphic(mapping, c, pool.pop(0))

    # pass 2: align the rest by kind (longest common subsequence), recurse
    src_rest = [c for c in src.children if not mapping.src_matched(c)]
    dst_rest = [c for c in dst.children if not mapping.dst_matched(c)]
    if not src_rest or not dst_rest:
        return
    matcher = SequenceMatcher(
        a=[c.kind for c in src_rest], b=[c.kind for c in dst_rest], autojunk=False
    )
    for block in matcher.get_matching_blocks():
        for offset in range(block.size):
            s = src_rest[block.a + offset]
            d = dst_rest[block.b + offset]
            mapping.match(s, d)
            _recover_children(mapping, s, d)


def _postorder(root: Node) -> list[Node]:
    out: list[Node] = []
    stack = [root]
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(node.children)
    out.reverse()
    return out


# ---------------------------------------------------------------------------
# action classification

def _classify_actions(mapping: AstMapping) -> None:
    actions = mapping.actions
    for node in mapping.src_root.nodes():
        if not mapping.src_matched(node):
            actions.append(EditAction(ActionKind.DELETE, src=node))
    for node in mapping.dst_root.nodes():
        if not mapping.dst_matched(node):
            actions.append(EditAction(ActionKind.INSERT, dst=node))
    for node in mapping.src_root.nodes():
        dst = mapping.dst_of(node)
        if dst is None:
            continue
        updated = node.value != dst.value
        if updated:
            actions.append(EditAction(ActionKind.UPDATE, src=node, dst=dst))
        elif _is_moved(mapping, node, dst):
            actions.append(EditAction(ActionKind.MOVE, src=node, dst=dst))


def _is_moved(mapping: AstMapping, src: Node, dst: Node) -> bool:
    if (src.parent is None) != (dst.parent is None):
        return True
    if src.parent is None:
        return False
    if mapping.dst_of(src.parent) is not dst.parent:
        return True
    # Same matched parents: compare relative order among the siblings
    # mapped between the two parents.
    shared_src = [
        c
        for c in src.parent.children
        if (m := mapping.dst_of(c)) is not None and m.parent is dst.parent
    ]
    shared_dst_sorted = sorted(
        (mapping.dst_of(c) for c in shared_src), key=lambda n: n.index
    )
    return shared_src.index(src) != shared_dst_sorted.index(dst)
