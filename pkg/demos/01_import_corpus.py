"""Build a labeled corpus store from a snapshot and inspect its makeup.

A snapshot is three flat files (comments.jsonl, labels.csv, files.jsonl).
Real ones come out of the `revclass mine` + annotation workflow; here we
generate a synthetic one so the demo runs offline.
"""

import tempfile
from pathlib import Path

from revclass.datagen import generate_snapshot
from revclass.store import CorpusStore, class_distribution, import_dataset, load_labeled_samples

COUNTS = {
    "Discussion": 12,
    "Documentation": 10,
    "False Positive": 5,
    "Functional": 8,
    "Refactoring": 15,
}


def main() -> None:
    root = Path(tempfile.mkdtemp(prefix="revclass-demo-"))
    snapshot = generate_snapshot(root / "snapshot", counts=COUNTS, seed=11)
    print(f"snapshot written under {root / 'snapshot'}")
    for name, path in snapshot["paths"].items():
        print(f"  {name}: {Path(path).name}")

    store = CorpusStore(root / "corpus")
    summary = import_dataset(
        store,
        snapshot["paths"]["labels"],
        snapshot["paths"]["comments"],
        snapshot["paths"]["files"],
    )
    print(f"\nimported {summary.comments} comments, {summary.labels} labels")

    samples, stats = load_labeled_samples(store)
    print(f"assembled {stats.total} training samples "
          f"({stats.missing_pair} without file pairs, "
          f"{stats.parse_failed} with unparseable sources)")

    distribution = class_distribution(samples)
    print("\nclass distribution:")
    for group, count in sorted(distribution["counts"].items()):
        pct = distribution["percentages"][group]
        print(f"  {group:<15} {count:>4}  {pct:>6.2f}%")


if __name__ == "__main__":
    main()
