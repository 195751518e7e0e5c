"""Cyclomatic complexity of a Python source file.

Counted as 1 plus one per decision point: each if/elif, each loop
(for, while, async for), each boolean operator beyond the first operand
of an and/or chain, each except handler, each conditional expression,
and each filter clause inside a comprehension. Comprehension for-clauses
themselves add no branch. Unparseable text raises; callers that need a
lenient score handle the SyntaxError themselves.
"""
from __future__ import annotations

import ast

_LOOPS = (ast.For, ast.AsyncFor, ast.While)
_COMPREHENSIONS = (ast.ListComp, ast.SetComp, ast.DictComp, ast.GeneratorExp)


def cyclomatic_complexity(source: str) -> int:
    tree = ast.parse(source)
    score = 1
    for node in ast.walk(tree):
        if isinstance(node, ast.If) or isinstance(node, _LOOPS):
            score += 1
        elif isinstance(node, ast.BoolOp):
            score += len(node.values) - 1
        elif isinstance(node, ast.ExceptHandler):
            score += 1
        elif isinstance(node, ast.IfExp):
            score += 1
        elif isinstance(node, _COMPREHENSIONS):
            score += sum(len(gen.ifs) for gen in node.generators)
    return score
