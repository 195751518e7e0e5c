"""Review-comment classification pipeline.

Mines code-review comments, extracts the surrounding code context and a
27-attribute change vector from source/destination file pairs, trains a
dual-encoder fusion classifier over five comment groups, and produces
evaluation reports and review-analytics summaries.
"""

from .rubric import GROUP_NAMES, Group, Subcategory, group_of
from .types import (
    ChangeRecord,
    CodeContext,
    FileRevisionPair,
    LabeledSample,
    ReviewComment,
    ReviewCommentRange,
)
from .context import extract_context, extract_rcr
from .attributes import ATTRIBUTE_NAMES, AttributeVector, extract_attributes
from .complexity import cyclomatic_complexity
from .kappa import cohens_kappa
from .modelconfig import ModelConfig, parse_config, write_config
from .network import TrainedModel, load_model, predict_sample, save_model, train
from .metrics import ConfusionMatrix, compute_metrics, pool_folds
from .folds import FoldSplit, kfold_split
from .evaluation import EvalReport, cross_validate, run_ablations
from .store import CorpusStore, import_dataset, load_labeled_samples

__version__ = "0.1.0"

__all__ = [
    "ATTRIBUTE_NAMES",
    "AttributeVector",
    "ChangeRecord",
    "CodeContext",
    "ConfusionMatrix",
    "CorpusStore",
    "EvalReport",
    "FileRevisionPair",
    "FoldSplit",
    "GROUP_NAMES",
    "Group",
    "LabeledSample",
    "ModelConfig",
    "ReviewComment",
    "ReviewCommentRange",
    "Subcategory",
    "TrainedModel",
    "cohens_kappa",
    "compute_metrics",
    "cross_validate",
    "cyclomatic_complexity",
    "extract_attributes",
    "extract_context",
    "extract_rcr",
    "group_of",
    "import_dataset",
    "kfold_split",
    "load_labeled_samples",
    "load_model",
    "parse_config",
    "pool_folds",
    "predict_sample",
    "run_ablations",
    "save_model",
    "train",
    "write_config",
    "__version__",
]
