"""Command-line surface: thin wrappers over the library.

Subcommands cover the whole pipeline: mine, import-dataset, sample,
extract, train, classify, evaluate, baseline, and the report group
(reviewers / prioritize / ratios). Every handler delegates to library
functions; no pipeline logic lives here.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .analytics import (
    classify_batch,
    prioritize,
    ratios,
    read_predictions,
    reviewer_report,
    write_predictions,
    write_ratio_chart,
    write_ratio_csv,
    write_reviewer_chart,
    write_reviewer_csv,
)
from .attributes import ATTRIBUTE_NAMES, extract_attributes
from .baseline import (
    BASELINE_ATTRIBUTES,
    BaselineConfig,
    FREGNAN_REPLICATION,
    TABLE2_27,
    extract_baseline_attributes,
    train_and_evaluate_baseline,
)
from .evaluation import cross_validate, write_metric_table
from .gerrit import GerritClient, MiningCursor, MiningError
from .modelconfig import parse_config
from .network import load_model, save_model, train
from .sampling import sample_comments
from .store import (
    CorpusStore,
    comment_from_dict,
    context_for_comment,
    import_dataset,
    load_labeled_samples,
    _iter_jsonl,
)
from .types import FileRevisionPair


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except (ValueError, OSError, MiningError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _open_store(path_str) -> CorpusStore:
    path = Path(path_str)
    if not path.is_dir():
        raise ValueError(f"store directory not found: {path}")
    return CorpusStore(path)


# ---------------------------------------------------------------------------
# handlers

def _cmd_mine(args) -> int:
    client = GerritClient(endpoint=args.endpoint)
    store = CorpusStore(Path(args.out))
    store.initialize()
    cursor_path = Path(args.out) / "mining-cursor.json"
    cursor = (
        MiningCursor.load(cursor_path) if cursor_path.exists() else MiningCursor()
    )
    n_changes = n_comments = 0
    for change in client.fetch_changes(
        args.since,
        args.until,
        page_size=args.page_size,
        cursor=cursor,
        cursor_path=cursor_path,
    ):
        comments = client.fetch_comments(change.change_id)
        store.append_changes([change])
        store.append_comments(comments)
        n_changes += 1
        n_comments += len(comments)
    store.refresh_index()
    print(
        f"mined {n_changes} changes, {n_comments} comments"
        f" ({cursor.skipped} malformed changes skipped) -> {args.out}"
    )
    return 0


def _cmd_import(args) -> int:
    summary = import_dataset(
        CorpusStore(Path(args.out)), args.labels, args.comments, args.files
    )
    print(
        f"imported {summary.comments} comments, {summary.labels} labels, "
        f"{summary.file_pairs} file pairs ({summary.skipped} skipped) -> {args.out}"
    )
    return 0


def _cmd_sample(args) -> int:
    store = _open_store(args.store)
    comments = list(store.iter_comments())
    chosen = sample_comments(comments, args.n, args.seed)
    if args.out:
        import csv

        with open(args.out, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["comment_id", "file_path", "line", "text"])
            for c in chosen:
                writer.writerow([c.comment_id, c.file_path, c.line, c.text])
        print(f"sampled {len(chosen)} of {len(comments)} comments -> {args.out}")
    else:
        for c in chosen:
            print(f"{c.comment_id}\t{c.text}")
    return 0


def _cmd_extract(args) -> int:
    import csv

    store = _open_store(args.dataset)
    pairs = store.file_pairs()
    written = skipped = 0
    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["comment_id", *ATTRIBUTE_NAMES, "parse_failed"])
        for comment in store.iter_comments():
            pair = pairs.get(comment.comment_id)
            if pair is None:
                skipped += 1
                continue
            _, rcr = context_for_comment(comment, pair)
            result = extract_attributes(pair, rcr)
            writer.writerow(
                [comment.comment_id]
                + [getattr(result.vector, name) for name in ATTRIBUTE_NAMES]
                + [int(result.parse_failed)]
            )
            written += 1
    print(f"extracted {written} attribute rows ({skipped} without file pair) -> {args.out}")
    return 0


def _cmd_train(args) -> int:
    config = parse_config(Path(args.config).read_text())
    samples, stats = load_labeled_samples(_open_store(args.dataset))
    model = train(samples, config)
    save_model(model, args.out)
    last = model.history[-1] if model.history else {}
    print(
        f"trained on {stats.total} samples, "
        f"final val_accuracy {last.get('val_accuracy', float('nan')):.3f} -> {args.out}"
    )
    return 0


def _cmd_classify(args) -> int:
    model = load_model(args.model)
    comments = [comment_from_dict(r) for r in _iter_jsonl(Path(args.infile))]
    pairs = {}
    if args.files:
        for record in _iter_jsonl(Path(args.files)):
            pairs[record["comment_id"]] = FileRevisionPair(
                file_path=record["file_path"],
                source=record.get("source"),
                destination=record.get("destination"),
            )
    rows = classify_batch(model, comments, pairs, out_path=args.out)
    errors = sum(1 for r in rows if not r.ok)
    print(f"wrote {len(rows)} predictions ({errors} rows with errors) -> {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    config = parse_config(Path(args.config).read_text())
    samples, _ = load_labeled_samples(_open_store(args.dataset))
    report = cross_validate(
        samples, config, k=args.k, seed=args.seed, stratified=not args.unstratified
    )
    Path(args.out).write_text(report.to_json())
    if args.table:
        write_metric_table(report, args.table)
    print(f"pooled accuracy {report.accuracy:.3f} over k={args.k} -> {args.out}")
    return 0


def _cmd_baseline(args) -> int:
    store = _open_store(args.dataset)
    samples, _ = load_labeled_samples(store)
    config = BaselineConfig(seed=args.seed or 0, attribute_set=args.attribute_set)
    vectors = None
    if args.attribute_set == FREGNAN_REPLICATION:
        pairs = store.file_pairs()
        vectors = {}
        for s in samples:
            pair = pairs.get(s.comment.comment_id)
            if pair is None:
                # no file info at all: all-zero row, same as a parse failure
                vectors[s.comment.comment_id] = np.zeros(
                    len(BASELINE_ATTRIBUTES), dtype=np.float64
                )
            else:
                vectors[s.comment.comment_id] = extract_baseline_attributes(pair).as_array()
    report = train_and_evaluate_baseline(
        samples,
        config,
        k=args.k,
        seed=args.seed,
        stratified=not args.unstratified,
        vectors=vectors,
        validation_fraction=args.validation_fraction,
    )
    Path(args.out).write_text(report.to_json())
    print(f"baseline pooled accuracy {report.accuracy:.3f} -> {args.out}")
    return 0


def _cmd_report_reviewers(args) -> int:
    predictions = read_predictions(args.predictions)
    comments = [comment_from_dict(r) for r in _iter_jsonl(Path(args.comments))]
    stats = reviewer_report(predictions, comments)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_reviewer_csv(stats, out / "reviewers.csv")
    if args.plot:
        write_reviewer_chart(stats, out / "reviewers.png")
    print(f"{len(stats)} reviewers -> {out / 'reviewers.csv'}")
    return 0


def _cmd_report_prioritize(args) -> int:
    predictions = read_predictions(args.predictions)
    priority = tuple(args.priority.split(",")) if args.priority else None
    ranked = prioritize(predictions, priority) if priority else prioritize(predictions)
    write_predictions(ranked, args.out)
    print(f"ranked {len(ranked)} comments -> {args.out}")
    return 0


def _cmd_report_ratios(args) -> int:
    distribution = ratios(read_predictions(args.predictions))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_ratio_csv(distribution, out / "ratios.csv")
    if args.plot:
        write_ratio_chart(distribution, out / "ratios.png")
    shares = ", ".join(
        f"{name} {distribution['percentages'][name]}%" for name in distribution["counts"]
    )
    print(f"{distribution['total']} predictions: {shares} -> {out / 'ratios.csv'}")
    return 0


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revclass")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine closed changes and comments from a review server")
    p.add_argument("--endpoint", required=True)
    p.add_argument("--since", required=True, help="ISO date, inclusive")
    p.add_argument("--until", required=True, help="ISO date, exclusive")
    p.add_argument("--out", required=True, help="store directory")
    p.add_argument("--page-size", type=int, default=None)
    p.set_defaults(func=_cmd_mine)

    p = sub.add_parser("import-dataset", help="build a store from a published snapshot")
    p.add_argument("--labels", required=True, help="labels CSV")
    p.add_argument("--comments", required=True, help="comments JSONL")
    p.add_argument("--files", default=None, help="file pairs JSONL")
    p.add_argument("--out", required=True, help="store directory")
    p.set_defaults(func=_cmd_import)

    p = sub.add_parser("sample", help="draw a reproducible uniform sample of comments")
    p.add_argument("--store", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None, help="CSV path (default: print to stdout)")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("extract", help="compute the attribute vector for every comment")
    p.add_argument("--dataset", required=True, help="store directory")
    p.add_argument("--out", required=True, help="attributes CSV")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("train", help="train the fusion classifier")
    p.add_argument("--dataset", required=True, help="store directory")
    p.add_argument("--config", required=True, help="key-value config file")
    p.add_argument("--out", required=True, help="model file")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("classify", help="classify a batch of comments")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="infile", required=True, help="comments JSONL")
    p.add_argument("--out", required=True, help="predictions CSV")
    p.add_argument("--files", default=None, help="file pairs JSONL")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("evaluate", help="k-fold cross-validation report")
    p.add_argument("--dataset", required=True, help="store directory")
    p.add_argument("--config", required=True, help="key-value config file")
    p.add_argument("--out", required=True, help="report JSON")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--unstratified", action="store_true")
    p.add_argument("--table", default=None, help="also write a metric-table CSV")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("baseline", help="random-forest baseline report")
    p.add_argument("--dataset", required=True, help="store directory")
    p.add_argument("--out", required=True, help="report JSON")
    p.add_argument(
        "--attribute-set",
        choices=[FREGNAN_REPLICATION, TABLE2_27],
        default=FREGNAN_REPLICATION,
    )
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--unstratified", action="store_true")
    p.add_argument(
        "--validation-fraction",
        type=float,
        default=0.10,
        help="match the model config's value for a paired fold comparison",
    )
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("report", help="summaries over a predictions file")
    rsub = p.add_subparsers(dest="report_command", required=True)

    r = rsub.add_parser("reviewers", help="per-reviewer category counts")
    r.add_argument("--predictions", required=True)
    r.add_argument("--comments", required=True, help="comments JSONL (maps ids to authors)")
    r.add_argument("--out", required=True, help="output directory")
    r.add_argument("--plot", action="store_true")
    r.set_defaults(func=_cmd_report_reviewers)

    r = rsub.add_parser("prioritize", help="order comments for author triage")
    r.add_argument("--predictions", required=True)
    r.add_argument("--out", required=True, help="ranked predictions CSV")
    r.add_argument(
        "--priority",
        default=None,
        help="comma-separated group order, highest first",
    )
    r.set_defaults(func=_cmd_report_prioritize)

    r = rsub.add_parser("ratios", help="predicted category distribution")
    r.add_argument("--predictions", required=True)
    r.add_argument("--out", required=True, help="output directory")
    r.add_argument("--plot", action="store_true")
    r.set_defaults(func=_cmd_report_ratios)

    return parser


if __name__ == "__main__":
    raise SystemExit(main())
