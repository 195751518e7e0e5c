"""Grammar adapter: source text to a uniform syntax tree.

The differ and the attribute extractor work on this tree, never on a
language library's AST directly, so swapping the grammar means swapping
this module. The shipped grammar is Python.

Conversion choices that matter downstream:
  - identifier-like tokens become node values (names, attribute names,
    argument names, constants as repr), so value inequality is observable;
  - load/store expression contexts are dropped as noise;
  - statement bodies of compound statements are wrapped in Block nodes,
    else-suites in Else nodes and finally-suites in Finally nodes, which
    makes block moves and else insertion/deletion first-class edits
    (an elif chain stays a nested If, not an Else);
  - try and try* both map to kind "Try".
"""
from __future__ import annotations

import ast
import hashlib
from dataclasses import dataclass, field


class ParseFailure(Exception):
    """Source text did not parse; carries the offending position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass(eq=False)  # identity semantics; trees are graphs with parent links
class Node:
    kind: str
    value: str = ""
    start_line: int = 0
    end_line: int = 0
    children: list["Node"] = field(default_factory=list)
    parent: "Node | None" = None
    index: int = -1  # preorder position, assigned once after build
    height: int = 0
    digest: str = ""

    def __repr__(self) -> str:  # keep pytest diffs readable
        val = f" {self.value!r}" if self.value else ""
        return f"<{self.kind}{val} @{self.start_line}-{self.end_line}>"

    def nodes(self):
        """Preorder iterator over this subtree, including self."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self):
        return (n for n in self.nodes() if not n.children)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def token(self) -> tuple[str, str]:
        return (self.kind, self.value)


def annotate(root: Node) -> Node:
    """Assign parents, preorder indices, heights, and subtree digests."""
    for i, node in enumerate(root.nodes()):
        node.index = i
        for child in node.children:
            child.parent = node
    _fix_spans(root)
    _fill_heights(root)
    _fill_digests(root)
    return root


def _fill_heights(root: Node) -> None:
    for node in _postorder(root):
        node.height = 1 + max((c.height for c in node.children), default=0)


def _fill_digests(root: Node) -> None:
    for node in _postorder(root):
        payload = node.kind + "\x1f" + node.value + "\x1f" + "\x1e".join(
            c.digest for c in node.children
        )
        node.digest = hashlib.md5(payload.encode("utf-8")).hexdigest()


def _postorder(root: Node):
    out: list[Node] = []
    stack = [root]
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(node.children)
    return reversed(out)


# ---------------------------------------------------------------------------
# Python grammar conversion

_SKIPPED_FIELDS = {"ctx", "type_ignores", "type_comment"}

# Node kinds whose suites get wrapped into Block/Else/Finally containers.
_SUITE_KINDS = {
    "If", "For", "AsyncFor", "While", "With", "AsyncWith",
    "Try", "TryStar", "ExceptHandler",
    "FunctionDef", "AsyncFunctionDef", "ClassDef",
}

_NAME_FIELD = {
    "Name": "id",
    "arg": "arg",
    "FunctionDef": "name",
    "AsyncFunctionDef": "name",
    "ClassDef": "name",
    "Attribute": "attr",
    "keyword": "arg",
    "ImportFrom": "module",
    "ExceptHandler": "name",
}

STATEMENT_KINDS = {
    "FunctionDef", "AsyncFunctionDef", "ClassDef", "Return", "Delete",
    "Assign", "AugAssign", "AnnAssign", "For", "AsyncFor", "While", "If",
    "With", "AsyncWith", "Raise", "Try", "Assert", "Import", "ImportFrom",
    "Global", "Nonlocal", "Expr", "Pass", "Break", "Continue", "Match",
}

BLOCK_KINDS = {"Block", "Else", "Finally"}


def parse_source(text: str) -> Node:
    """Parse source text into the uniform tree.

    Raises ParseFailure (with line/column) when the text does not parse.
    """
    try:
        module = ast.parse(text)
    except SyntaxError as exc:
        raise ParseFailure(str(exc), exc.lineno, exc.offset) from exc
    except ValueError as exc:  # e.g. null bytes
        raise ParseFailure(str(exc)) from exc

    root = Node(kind="Module", start_line=1, end_line=1)
    root.children = [_convert(stmt) for stmt in module.body]
    return annotate(root)


def _convert(node: ast.AST) -> Node:
    kind = type(node).__name__
    if kind == "TryStar":
        kind = "Try"
    out = Node(
        kind=kind,
        value=_value_of(node),
        start_line=getattr(node, "lineno", 0) or 0,
        end_line=getattr(node, "end_lineno", 0) or 0,
    )

    wrap_suites = kind in _SUITE_KINDS or type(node).__name__ in _SUITE_KINDS
    for name, value in ast.iter_fields(node):
        if name in _SKIPPED_FIELDS:
            continue
        if wrap_suites and name == "body" and isinstance(value, list):
            out.children.append(_suite("Block", value))
        elif wrap_suites and name == "orelse" and isinstance(value, list) and value:
            out.children.append(_orelse(node, value))
        elif wrap_suites and name == "finalbody" and isinstance(value, list) and value:
            out.children.append(_suite("Finally", value))
        elif isinstance(value, list):
            out.children.extend(_convert(v) for v in value if isinstance(v, ast.AST))
        elif isinstance(value, ast.AST):
            out.children.append(_convert(value))
    return out


def _suite(kind: str, stmts: list[ast.AST]) -> Node:
    return Node(kind=kind, children=[_convert(s) for s in stmts])


def _orelse(parent: ast.AST, stmts: list[ast.AST]) -> Node:
    # `elif` parses as orelse=[If] sharing the parent's column; keep the
    # chain as a nested If rather than inventing an Else suite around it.
    if (
        isinstance(parent, ast.If)
        and len(stmts) == 1
        and isinstance(stmts[0], ast.If)
        and stmts[0].col_offset == parent.col_offset
    ):
        return _convert(stmts[0])
    return _suite("Else", stmts)


def _value_of(node: ast.AST) -> str:
    kind = type(node).__name__
    if kind == "Constant":
        return repr(node.value)
    if kind in ("Global", "Nonlocal"):
        return ",".join(node.names)
    if kind == "alias":
        return node.name + (f" as {node.asname}" if node.asname else "")
    fld = _NAME_FIELD.get(kind)
    if fld is not None:
        return str(getattr(node, fld) or "")
    return ""


def _fix_spans(root: Node) -> None:
    # Bottom-up: containers without positions adopt their children's extent.
    for node in _postorder(root):
        child_starts = [c.start_line for c in node.children if c.start_line]
        child_ends = [c.end_line for c in node.children if c.end_line]
        if node.start_line == 0 and child_starts:
            node.start_line = min(child_starts)
        if node.end_line == 0 and child_ends:
            node.end_line = max(child_ends)
        if child_starts:
            node.start_line = min([node.start_line] + child_starts)
        if child_ends:
            node.end_line = max([node.end_line] + child_ends)
    # Top-down: anything still unplaced inherits its parent's span.
    for node in root.nodes():
        if node.start_line == 0:
            node.start_line = node.parent.start_line if node.parent else 1
        if node.end_line == 0:
            node.end_line = node.parent.end_line if node.parent else node.start_line


def is_string_literal(node: Node) -> bool:
    return node.kind == "Constant" and node.value[:1] in ("'", '"')
