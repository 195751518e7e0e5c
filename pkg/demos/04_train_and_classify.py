"""Train a classifier on a small corpus and turn predictions into reports.

Uses the hash-based stub encoder so no pretrained weights are needed; swap
`encoder_backend` to "pretrained" for the real thing. Ends with the two
consumer views: per-group ratios and author triage order.
"""

import tempfile
from pathlib import Path

from revclass.analytics import classify_batch, prioritize, ratios
from revclass.datagen import generate_snapshot
from revclass.modelconfig import STUB_BACKEND, ModelConfig
from revclass.network import train
from revclass.store import CorpusStore, import_dataset, load_labeled_samples

COUNTS = {name: 8 for name in
          ("Discussion", "Documentation", "False Positive", "Functional", "Refactoring")}


def main() -> None:
    root = Path(tempfile.mkdtemp(prefix="revclass-demo-"))
    snapshot = generate_snapshot(root / "snapshot", counts=COUNTS, seed=3)
    store = CorpusStore(root / "corpus")
    import_dataset(
        store,
        snapshot["paths"]["labels"],
        snapshot["paths"]["comments"],
        snapshot["paths"]["files"],
    )
    samples, _ = load_labeled_samples(store)

    config = ModelConfig(
        encoder_backend=STUB_BACKEND,
        max_sequence_length=48,
        stub_embedding_dim=24,
        max_epochs=6,
        validation_fraction=0.25,
        seed=1,
    )
    model = train(samples, config)
    last = model.history[-1]
    print(f"trained {len(model.history)} epochs, "
          f"final validation accuracy {last['val_accuracy']:.3f}")

    predictions_path = root / "predictions.csv"
    rows = classify_batch(
        model,
        store.iter_comments(),
        pairs=store.file_pairs(),
        out_path=predictions_path,
    )
    print(f"classified {len(rows)} comments -> {predictions_path}")

    distribution = ratios(rows)
    print("\npredicted group ratios:")
    for group, pct in sorted(distribution["percentages"].items()):
        print(f"  {group:<15} {pct:>6.2f}%")

    print("\ntriage order (top 5):")
    for row in prioritize(rows)[:5]:
        print(f"  {row.comment_id:<8} {row.predicted_group:<15} "
              f"p={row.predicted_probability():.2f}")


if __name__ == "__main__":
    main()
