"""Pit the fused classifier against the attributes-only random forest.

Both evaluations run k-fold on the same seed and validation fraction, and
the reports carry a fold-assignment fingerprint; equal fingerprints certify
a paired comparison on identical test sets.

Expect the forest to win here: the synthetic corpus encodes each group as a
distinctive change shape, which is exactly what the attribute vector sees,
while the stub text encoder gets only a few epochs. On real review data the
ordering reverses.
"""

import tempfile
from pathlib import Path

from revclass.baseline import TABLE2_27, BaselineConfig, train_and_evaluate_baseline
from revclass.datagen import generate_snapshot
from revclass.evaluation import cross_validate
from revclass.modelconfig import STUB_BACKEND, ModelConfig
from revclass.store import CorpusStore, import_dataset, load_labeled_samples

COUNTS = {name: 8 for name in
          ("Discussion", "Documentation", "False Positive", "Functional", "Refactoring")}


def main() -> None:
    root = Path(tempfile.mkdtemp(prefix="revclass-demo-"))
    snapshot = generate_snapshot(root / "snapshot", counts=COUNTS, seed=21)
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
        max_sequence_length=32,
        stub_embedding_dim=16,
        max_epochs=3,
        validation_fraction=0.25,
        seed=9,
    )
    model_report = cross_validate(samples, config, k=3)

    baseline_report = train_and_evaluate_baseline(
        samples,
        BaselineConfig(attribute_set=TABLE2_27, seed=9),
        k=3,
        seed=config.seed,
        validation_fraction=config.validation_fraction,
    )

    paired = (model_report.fold_assignment_fingerprint
              == baseline_report.fold_assignment_fingerprint)
    print(f"paired folds: {paired}")
    print(f"fused model accuracy:   {model_report.accuracy:.3f}")
    print(f"random forest accuracy: {baseline_report.accuracy:.3f}")

    print("\nper-class recall (model vs baseline):")
    for label in model_report.labels:
        m = model_report.pooled["per_class"][label]["recall"]
        b = baseline_report.pooled["per_class"][label]["recall"]
        print(f"  {label:<15} {m:.3f}  {b:.3f}")


if __name__ == "__main__":
    main()
