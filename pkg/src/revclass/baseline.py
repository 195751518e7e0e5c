"""Attributes-only random-forest baseline for the paired comparison.

The attribute set replicates a change-type taxonomy originally defined
for Java tooling; each attribute is re-realized over this package's
Python syntax tree and differ. Two Java-only attributes (interface and
modifier changes) have no grammar equivalent and are emitted as
constant 0; `docs/baseline-attribute-mapping.md` is the authoritative
mapping table. The baseline reads file revisions only - never the
comment text or code context - so it measures what change shape alone
can predict.

Fold assignments reuse the same splitter as the fusion model's
evaluation; identical (dataset, k, seed, stratification, validation
fraction) yield byte-identical folds, making the comparison paired.
"""
from __future__ import annotations

from dataclasses import dataclass
from difflib import SequenceMatcher

import numpy as np

from .astdiff import diff_asts
from .evaluation import EvalReport, evaluate_folds
from .folds import kfold_split
from .pytree import STATEMENT_KINDS, Node, ParseFailure, is_string_literal, parse_source
from .types import FileRevisionPair, ReviewComment

FREGNAN_REPLICATION = "fregnan_replication"
TABLE2_27 = "table2_27"

_LOOP_KINDS = ("For", "AsyncFor", "While")
_METHOD_KINDS = ("FunctionDef", "AsyncFunctionDef")
_IMPORT_KINDS = ("Import", "ImportFrom")

BASELINE_ATTRIBUTES: tuple[str, ...] = (
    "statement_insert",
    "statement_delete",
    "statement_update",
    "statement_move",
    "condition_expression_change",
    "alternative_part_insert",
    "alternative_part_delete",
    "loop_insert",
    "loop_delete",
    "method_insert",
    "method_delete",
    "class_insert",
    "class_delete",
    "try_insert",
    "try_delete",
    "import_insert",
    "import_delete",
    "docstring_update",
    "lines_added",
    "lines_deleted",
    "src_loc",
    "dst_loc",
    "change_occurred",
    "interface_change",
    "modifier_change",
)

# No Python counterpart; always 0, flagged in the mapping table.
UNMAPPED_ATTRIBUTES: tuple[str, ...] = ("interface_change", "modifier_change")


@dataclass(frozen=True)
class BaselineConfig:
    n_trees: int = 100
    max_depth: int | None = None
    seed: int = 0
    attribute_set: str = FREGNAN_REPLICATION

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError("n_trees must be at least 1")
        if self.attribute_set not in (FREGNAN_REPLICATION, TABLE2_27):
            raise ValueError(f"unknown attribute set {self.attribute_set!r}")


@dataclass
class BaselineExtraction:
    values: dict[str, int]
    parse_failed: bool = False

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.values[n] for n in BASELINE_ATTRIBUTES], dtype=np.float64
        )


def extract_baseline_attributes(
    pair: FileRevisionPair, comment: ReviewComment | None = None
) -> BaselineExtraction:
    """Compute the replication attribute vector for one file pair.

    The comment parameter exists for signature parity with the main
    extractor; the baseline deliberately never reads it.
    """
    values = {name: 0 for name in BASELINE_ATTRIBUTES}
    parse_failed = False

    src_text = pair.source if pair.has_source else None
    dst_text = pair.destination if pair.has_destination else None
    values["change_occurred"] = int(dst_text is not None)
    if src_text is not None:
        values["src_loc"] = len(_lines(src_text))
    if dst_text is not None:
        values["dst_loc"] = len(_lines(dst_text))

    src_tree = dst_tree = None
    if src_text is not None:
        try:
            src_tree = parse_source(src_text)
        except ParseFailure:
            parse_failed = True
    if dst_text is not None:
        try:
            dst_tree = parse_source(dst_text)
        except ParseFailure:
            parse_failed = True

    if src_text is not None and dst_text is not None and not parse_failed:
        added, deleted = _line_churn(src_text, dst_text)
        values["lines_added"] = added
        values["lines_deleted"] = deleted
        _fill_change_counts(values, src_tree, dst_tree)

    return BaselineExtraction(values=values, parse_failed=parse_failed)


def _lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def _line_churn(src_text: str, dst_text: str) -> tuple[int, int]:
    matcher = SequenceMatcher(a=_lines(src_text), b=_lines(dst_text), autojunk=False)
    added = deleted = 0
    for tag, i1, i2, j1, j2 in matcher.get_opcodes():
        if tag in ("replace", "insert"):
            added += j2 - j1
        if tag in ("replace", "delete"):
            deleted += i2 - i1
    return added, deleted


def _fill_change_counts(values: dict, src_tree: Node, dst_tree: Node) -> None:
    mapping = diff_asts(src_tree, dst_tree)
    inserted = mapping.inserted
    deleted = mapping.deleted
    moves = mapping.moves
    updates = mapping.updates

    values["statement_insert"] = _kinds(inserted, STATEMENT_KINDS)
    values["statement_delete"] = _kinds(deleted, STATEMENT_KINDS)
    values["statement_move"] = sum(
        1 for s, _ in moves if s.kind in STATEMENT_KINDS
    )
    # distinct statements touched by a token update
    touched = {
        stmt.index
        for s, _ in updates
        if (stmt := _enclosing_statement(s)) is not None
    }
    values["statement_update"] = len(touched)

    values["alternative_part_insert"] = _kinds(inserted, ("Else",))
    values["alternative_part_delete"] = _kinds(deleted, ("Else",))
    values["loop_insert"] = _kinds(inserted, _LOOP_KINDS)
    values["loop_delete"] = _kinds(deleted, _LOOP_KINDS)
    values["method_insert"] = _kinds(inserted, _METHOD_KINDS)
    values["method_delete"] = _kinds(deleted, _METHOD_KINDS)
    values["class_insert"] = _kinds(inserted, ("ClassDef",))
    values["class_delete"] = _kinds(deleted, ("ClassDef",))
    values["try_insert"] = _kinds(inserted, ("Try",))
    values["try_delete"] = _kinds(deleted, ("Try",))
    values["import_insert"] = _kinds(inserted, _IMPORT_KINDS)
    values["import_delete"] = _kinds(deleted, _IMPORT_KINDS)

    values["docstring_update"] = sum(
        1 for s, _ in updates if _is_docstring_constant(s)
    )

    src_action_ids = (
        {s.index for s, _ in updates}
        | {s.index for s in deleted}
        | {s.index for s, _ in moves}
    )
    insert_ids = {d.index for d in inserted}
    count = 0
    for node in src_tree.nodes():
        if node.kind not in ("If", "While"):
            continue
        partner = mapping.dst_of(node)
        if partner is None or not node.children or not partner.children:
            continue
        src_test, dst_test = node.children[0], partner.children[0]
        if any(n.index in src_action_ids for n in src_test.nodes()) or any(
            n.index in insert_ids for n in dst_test.nodes()
        ):
            count += 1
    values["condition_expression_change"] = count


def _kinds(nodes, kinds) -> int:
    return sum(1 for n in nodes if n.kind in kinds)


def _enclosing_statement(node: Node) -> Node | None:
    current: Node | None = node
    while current is not None:
        if current.kind in STATEMENT_KINDS:
            return current
        current = current.parent
    return None


def _is_docstring_constant(node: Node) -> bool:
    if not is_string_literal(node):
        return False
    expr = node.parent
    if expr is None or expr.kind != "Expr":
        return False
    holder = expr.parent
    if holder is None or not holder.children or holder.children[0] is not expr:
        return False
    if holder.kind == "Module":
        return True
    return (
        holder.kind == "Block"
        and holder.parent is not None
        and holder.parent.kind in ("FunctionDef", "AsyncFunctionDef", "ClassDef")
    )


# ---------------------------------------------------------------------------
# training and evaluation

def train_and_evaluate_baseline(
    samples,
    config: BaselineConfig,
    k: int = 10,
    seed: int | None = None,
    stratified: bool = True,
    vectors: dict[str, np.ndarray] | None = None,
    validation_fraction: float = 0.10,
) -> EvalReport:
    """10-fold report for the attributes-only random forest.

    vectors maps comment_id to the attribute row. When omitted: the
    table2_27 set reads each sample's precomputed attribute vector; the
    replication set requires vectors (the CLI computes them from the
    stored file pairs).
    """
    from sklearn.ensemble import RandomForestClassifier

    samples = list(samples)
    seed = config.seed if seed is None else seed
    if vectors is None:
        if config.attribute_set != TABLE2_27:
            raise ValueError(
                "replication attribute set needs precomputed vectors; "
                "pass vectors={comment_id: row}"
            )
        vectors = {}
        for s in samples:
            if s.attributes is None:
                raise ValueError(f"sample {s.comment.comment_id} has no attributes")
            vectors[s.comment.comment_id] = s.attributes.as_array()
    missing = [s.comment.comment_id for s in samples if s.comment.comment_id not in vectors]
    if missing:
        raise ValueError(f"no attribute vector for {len(missing)} samples, e.g. {missing[0]!r}")

    folds = kfold_split(
        [(s.comment.comment_id, s.group.value) for s in samples],
        k=k,
        seed=seed,
        validation_fraction=validation_fraction,
        stratified=stratified,
    )

    def fit_predict(train_s, val_s, test_s, fold_id):
        # no early stopping here, so the carved-out validation split
        # goes back into training rather than being wasted
        fit_rows = train_s + val_s
        x = np.stack([vectors[s.comment.comment_id] for s in fit_rows])
        y = [s.group.value for s in fit_rows]
        forest = RandomForestClassifier(
            n_estimators=config.n_trees,
            max_depth=config.max_depth,
            random_state=config.seed,
        )
        forest.fit(x, y)
        x_test = np.stack([vectors[s.comment.comment_id] for s in test_s])
        return list(forest.predict(x_test))

    return evaluate_folds(
        samples,
        folds,
        fit_predict,
        model_kind="baseline:random_forest",
        config_dict={
            "n_trees": config.n_trees,
            "max_depth": config.max_depth,
            "seed": config.seed,
            "attribute_set": config.attribute_set,
            "validation_fraction": validation_fraction,
        },
        k=k,
        seed=seed,
        stratified=stratified,
        extra_notes=(
            f"hyperparameters: {config.n_trees}-tree forest, "
            f"depth={'unlimited' if config.max_depth is None else config.max_depth}; "
            "recorded here because only the algorithm family is prescribed",
        ),
    )
