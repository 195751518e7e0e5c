"""The fusion classifier: two recurrent text channels plus attributes.

Each enabled text channel embeds its tokens with a frozen encoder and
summarizes the sequence with a recurrent layer whose final state (at
the last non-padding position) is the channel vector. Channel vectors
concatenate in the fixed order (code, comment, attributes) and a dense
layer produces logits over the five groups; softmax gives class
probabilities.

Training uses Adam at its default step size, categorical cross-entropy,
and early stopping on validation loss with best-weight restoration.
Attribute columns are min-max scaled with bounds fit on the training
portion only. All randomness (weight init, batch order, validation
carving) derives from the config seed, so a fixed seed reproduces a run
bit-for-bit on the same platform.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn

from .attributes import ATTRIBUTE_NAMES, AttributeVector
from .encoders import TokenizedInput, get_encoder
from .modelconfig import (
    ATTRS_CHANNEL,
    CODE_CHANNEL,
    COMMENT_CHANNEL,
    ModelConfig,
)
from .rubric import GROUP_NAMES, GROUP_ORDER
from .types import LabeledSample

N_CLASSES = len(GROUP_NAMES)
MODEL_FORMAT = "revclass.model/1"


class InferenceError(ValueError):
    """A required channel's input is missing; message names the channel."""


@dataclass
class MinMaxParams:
    minimum: np.ndarray
    maximum: np.ndarray

    @classmethod
    def fit(cls, rows: np.ndarray) -> "MinMaxParams":
        return cls(minimum=rows.min(axis=0), maximum=rows.max(axis=0))

    def transform(self, rows: np.ndarray) -> np.ndarray:
        span = self.maximum - self.minimum
        out = np.zeros_like(rows, dtype=np.float64)
        nonzero = span != 0
        out[:, nonzero] = (rows[:, nonzero] - self.minimum[nonzero]) / span[nonzero]
        return out


@dataclass(frozen=True)
class ClassProbabilities:
    probabilities: np.ndarray  # aligned to GROUP_NAMES

    def __post_init__(self):
        p = self.probabilities
        if p.shape != (N_CLASSES,):
            raise ValueError(f"expected {N_CLASSES} probabilities, got {p.shape}")
        if not np.isfinite(p).all() or (p < 0).any() or (p > 1).any():
            raise ValueError("probabilities outside [0, 1]")
        if abs(float(p.sum()) - 1.0) > 1e-6:
            raise ValueError(f"probabilities sum to {p.sum()}, not 1")

    @property
    def predicted_group(self) -> str:
        return GROUP_NAMES[int(np.argmax(self.probabilities))]

    def as_dict(self) -> dict[str, float]:
        return {name: float(p) for name, p in zip(GROUP_NAMES, self.probabilities)}


class FusionClassifier(nn.Module):
    def __init__(self, config: ModelConfig, channel_dims: dict[str, int]):
        super().__init__()
        self.channels = config.channels_enabled
        width = 0
        # Construction order is fixed (code, comment, dense) so that a
        # seeded init draws the code channel's weights identically no
        # matter which comment encoder the config names.
        if CODE_CHANNEL in self.channels:
            self.code_lstm = nn.LSTM(
                channel_dims[CODE_CHANNEL], config.recurrent_units, batch_first=True
            )
            width += config.recurrent_units
        if COMMENT_CHANNEL in self.channels:
            self.comment_lstm = nn.LSTM(
                channel_dims[COMMENT_CHANNEL], config.recurrent_units, batch_first=True
            )
            width += config.recurrent_units
        if ATTRS_CHANNEL in self.channels:
            width += channel_dims[ATTRS_CHANNEL]
        self.fusion_width = width
        self.dense = nn.Linear(width, N_CLASSES)

    def forward(self, batch: dict[str, torch.Tensor]) -> torch.Tensor:
        parts = []
        if CODE_CHANNEL in self.channels:
            parts.append(_last_state(self.code_lstm, batch["code_emb"], batch["code_mask"]))
        if COMMENT_CHANNEL in self.channels:
            parts.append(
                _last_state(self.comment_lstm, batch["comment_emb"], batch["comment_mask"])
            )
        if ATTRS_CHANNEL in self.channels:
            parts.append(batch["attrs"])
        return self.dense(torch.cat(parts, dim=1))


def _last_state(lstm: nn.LSTM, emb: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
    out, _ = lstm(emb)
    lengths = mask.sum(dim=1).long()
    idx = (lengths - 1).clamp(min=0)
    gathered = out[torch.arange(out.shape[0]), idx]
    # all-padding rows carry no information: zero vector, not garbage
    return gathered * (lengths > 0).unsqueeze(1).to(gathered.dtype)


@dataclass
class TrainedModel:
    config: ModelConfig
    state_dict: dict
    channel_dims: dict[str, int]
    scaler: MinMaxParams | None = None
    labels: tuple[str, ...] = GROUP_NAMES
    fold_id: int | None = None
    history: list[dict] = field(default_factory=list)

    _runner: "_Runner | None" = field(default=None, repr=False, compare=False)

    def runner(self) -> "_Runner":
        if self._runner is None:
            self._runner = _Runner(self)
        return self._runner


class _Runner:
    """Inference-time assembly of encoders plus the torch module."""

    def __init__(self, trained: TrainedModel):
        self.config = trained.config
        self.scaler = trained.scaler
        self.encoders = _build_encoders(trained.config)
        self.module = FusionClassifier(trained.config, trained.channel_dims)
        expected = _expected_width(trained.config, trained.channel_dims)
        if self.module.fusion_width != expected:
            raise ValueError(
                f"fusion width {self.module.fusion_width} != expected {expected}"
            )
        self.module.load_state_dict(trained.state_dict)
        self.module.eval()


def _build_encoders(config: ModelConfig) -> dict:
    encoders = {}
    if CODE_CHANNEL in config.channels_enabled:
        encoders[CODE_CHANNEL] = get_encoder(config.code_encoder, config)
    if COMMENT_CHANNEL in config.channels_enabled:
        encoders[COMMENT_CHANNEL] = get_encoder(config.comment_encoder, config)
    return encoders


def _expected_width(config: ModelConfig, channel_dims: dict[str, int]) -> int:
    width = 0
    for channel in (CODE_CHANNEL, COMMENT_CHANNEL):
        if channel in config.channels_enabled:
            width += config.recurrent_units
    if ATTRS_CHANNEL in config.channels_enabled:
        width += channel_dims[ATTRS_CHANNEL]
    return width


# ---------------------------------------------------------------------------
# training

def train(
    samples,
    config: ModelConfig,
    validation=None,
    fold_id: int | None = None,
) -> TrainedModel:
    samples = list(samples)
    if len(samples) < 2:
        raise ValueError("need at least two training samples")
    if len({s.group for s in samples}) < 2:
        raise ValueError("single-class dataset: training needs at least two groups")

    if validation is None:
        train_part, val_part = _carve_validation(samples, config)
    else:
        train_part, val_part = samples, list(validation)
    if not val_part:
        raise ValueError("empty validation split")

    encoders = _build_encoders(config)
    channel_dims = {ch: enc.embedding_dim for ch, enc in encoders.items()}
    scaler = None
    if ATTRS_CHANNEL in config.channels_enabled:
        channel_dims[ATTRS_CHANNEL] = len(ATTRIBUTE_NAMES)
        scaler = MinMaxParams.fit(
            np.stack([_attr_row(s) for s in train_part])
        )

    train_feats = _prepare(train_part, encoders, scaler, config)
    val_feats = _prepare(val_part, encoders, scaler, config)

    torch.manual_seed(config.seed)
    model = FusionClassifier(config, channel_dims)
    optimizer = torch.optim.Adam(model.parameters())
    loss_fn = nn.CrossEntropyLoss()
    rng = np.random.default_rng(config.seed)

    best_val = float("inf")
    best_state = None
    patience_left = config.early_stopping_patience
    history: list[dict] = []
    for epoch in range(config.max_epochs):
        model.train()
        order = rng.permutation(len(train_part))
        epoch_loss = 0.0
        for start in range(0, len(order), config.batch_size):
            batch_idx = order[start : start + config.batch_size]
            batch = _batch(train_feats, batch_idx, encoders)
            logits = model(batch)
            loss = loss_fn(logits, batch["labels"])
            if not torch.isfinite(loss):
                raise RuntimeError(
                    f"non-finite training loss at epoch {epoch}, "
                    f"batch starting {start}: {float(loss)!r}"
                )
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            epoch_loss += float(loss.detach()) * len(batch_idx)
        val_loss, val_acc = _validation_pass(model, val_feats, encoders, config, loss_fn)
        history.append(
            {
                "epoch": epoch,
                "train_loss": epoch_loss / len(train_part),
                "val_loss": val_loss,
                "val_accuracy": val_acc,
            }
        )
        if val_loss < best_val:
            best_val = val_loss
            best_state = copy.deepcopy(model.state_dict())
            patience_left = config.early_stopping_patience
        else:
            patience_left -= 1
            if patience_left <= 0:
                break

    if config.early_stopping_restore_best and best_state is not None:
        model.load_state_dict(best_state)
    return TrainedModel(
        config=config,
        state_dict=model.state_dict(),
        channel_dims=channel_dims,
        scaler=scaler,
        fold_id=fold_id,
        history=history,
    )


def _carve_validation(samples, config: ModelConfig):
    rng = np.random.default_rng(config.seed)
    by_group: dict = {}
    for i, s in enumerate(samples):
        by_group.setdefault(s.group, []).append(i)
    val_idx = set()
    for group in sorted(by_group, key=lambda g: g.value):
        members = by_group[group]
        order = rng.permutation(len(members))
        want = min(
            max(round(len(members) * config.validation_fraction), 1),
            max(len(members) - 1, 0),
        )
        val_idx.update(members[j] for j in order[:want])
    train_part = [s for i, s in enumerate(samples) if i not in val_idx]
    val_part = [s for i, s in enumerate(samples) if i in val_idx]
    return train_part, val_part


def _attr_row(sample: LabeledSample) -> np.ndarray:
    if sample.attributes is None:
        raise InferenceError("attributes channel enabled but sample has no attributes")
    return sample.attributes.as_array()


def _prepare(samples, encoders, scaler, config: ModelConfig) -> dict:
    feats: dict = {"labels": np.array([GROUP_ORDER.index(s.group) for s in samples])}
    if CODE_CHANNEL in config.channels_enabled:
        feats["code"] = [
            encoders[CODE_CHANNEL].tokenize(_context_text(s)) for s in samples
        ]
    if COMMENT_CHANNEL in config.channels_enabled:
        feats["comment"] = [
            encoders[COMMENT_CHANNEL].tokenize(s.comment.text) for s in samples
        ]
    if ATTRS_CHANNEL in config.channels_enabled:
        rows = np.stack([_attr_row(s) for s in samples])
        feats["attrs"] = scaler.transform(rows).astype(np.float32)
    return feats


def _context_text(sample: LabeledSample) -> str:
    if sample.context is None:
        raise InferenceError("code_context channel enabled but sample has no context")
    return sample.context.text


def _batch(feats: dict, idx, encoders) -> dict[str, torch.Tensor]:
    batch: dict[str, torch.Tensor] = {
        "labels": torch.from_numpy(feats["labels"][idx]).long()
    }
    if "code" in feats:
        tokens = [feats["code"][i] for i in idx]
        batch["code_emb"] = torch.from_numpy(encoders[CODE_CHANNEL].embed_batch(tokens))
        batch["code_mask"] = torch.from_numpy(
            np.stack([t.attention_mask for t in tokens])
        ).to(torch.float32)
    if "comment" in feats:
        tokens = [feats["comment"][i] for i in idx]
        batch["comment_emb"] = torch.from_numpy(
            encoders[COMMENT_CHANNEL].embed_batch(tokens)
        )
        batch["comment_mask"] = torch.from_numpy(
            np.stack([t.attention_mask for t in tokens])
        ).to(torch.float32)
    if "attrs" in feats:
        batch["attrs"] = torch.from_numpy(feats["attrs"][idx])
    return batch


def _validation_pass(model, feats, encoders, config, loss_fn):
    model.eval()
    n = len(feats["labels"])
    total_loss = 0.0
    correct = 0
    with torch.no_grad():
        for start in range(0, n, config.batch_size):
            idx = np.arange(start, min(start + config.batch_size, n))
            batch = _batch(feats, idx, encoders)
            logits = model(batch)
            loss = loss_fn(logits, batch["labels"])
            total_loss += float(loss) * len(idx)
            correct += int((logits.argmax(dim=1) == batch["labels"]).sum())
    return total_loss / n, correct / n


# ---------------------------------------------------------------------------
# inference

def predict_proba(
    model: TrainedModel,
    code_context: str | None = None,
    comment_text: str | None = None,
    attributes: AttributeVector | None = None,
) -> ClassProbabilities:
    return predict_batch(model, [(code_context, comment_text, attributes)])[0]


def predict_sample(model: TrainedModel, sample: LabeledSample) -> ClassProbabilities:
    context = sample.context.text if sample.context is not None else None
    return predict_proba(
        model,
        code_context=context,
        comment_text=sample.comment.text,
        attributes=sample.attributes,
    )


def predict_batch(model: TrainedModel, rows) -> list[ClassProbabilities]:
    """rows: iterable of (code_context, comment_text, attributes) triples."""
    runner = model.runner()
    config = runner.config
    rows = list(rows)
    if not rows:
        return []
    feats: dict = {"labels": np.zeros(len(rows), dtype=np.int64)}
    if CODE_CHANNEL in config.channels_enabled:
        texts = []
        for code_context, _, _ in rows:
            if code_context is None:
                raise InferenceError("missing required channel: code_context")
            texts.append(code_context)
        feats["code"] = [runner.encoders[CODE_CHANNEL].tokenize(t) for t in texts]
    if COMMENT_CHANNEL in config.channels_enabled:
        texts = []
        for _, comment_text, _ in rows:
            if comment_text is None:
                raise InferenceError("missing required channel: comment_text")
            texts.append(comment_text)
        feats["comment"] = [runner.encoders[COMMENT_CHANNEL].tokenize(t) for t in texts]
    if ATTRS_CHANNEL in config.channels_enabled:
        vecs = []
        for _, _, attributes in rows:
            if attributes is None:
                raise InferenceError("missing required channel: attributes")
            vecs.append(attributes.as_array())
        feats["attrs"] = runner.scaler.transform(np.stack(vecs)).astype(np.float32)

    out: list[ClassProbabilities] = []
    with torch.no_grad():
        for start in range(0, len(rows), max(config.batch_size, 1)):
            idx = np.arange(start, min(start + config.batch_size, len(rows)))
            batch = _batch(feats, idx, runner.encoders)
            probs = torch.softmax(runner.module(batch), dim=1).numpy()
            # renormalize away float32 rounding so the contract holds exactly
            probs = probs / probs.sum(axis=1, keepdims=True)
            out.extend(ClassProbabilities(row.astype(np.float64)) for row in probs)
    return out


# ---------------------------------------------------------------------------
# persistence

def save_model(model: TrainedModel, path) -> None:
    payload = {
        "format": MODEL_FORMAT,
        "config": model.config.to_dict(),
        "state_dict": model.state_dict,
        "channel_dims": dict(model.channel_dims),
        "scaler_min": None if model.scaler is None else model.scaler.minimum.tolist(),
        "scaler_max": None if model.scaler is None else model.scaler.maximum.tolist(),
        "labels": list(model.labels),
        "fold_id": model.fold_id,
        "history": model.history,
    }
    torch.save(payload, path)


def load_model(path) -> TrainedModel:
    payload = torch.load(path, map_location="cpu", weights_only=False)
    if payload.get("format") != MODEL_FORMAT:
        raise ValueError(f"not a model file (format={payload.get('format')!r})")
    scaler = None
    if payload["scaler_min"] is not None:
        scaler = MinMaxParams(
            minimum=np.array(payload["scaler_min"], dtype=np.float64),
            maximum=np.array(payload["scaler_max"], dtype=np.float64),
        )
    model = TrainedModel(
        config=ModelConfig.from_dict(payload["config"]),
        state_dict=payload["state_dict"],
        channel_dims=dict(payload["channel_dims"]),
        scaler=scaler,
        labels=tuple(payload["labels"]),
        fold_id=payload["fold_id"],
        history=list(payload.get("history", [])),
    )
    model.runner()  # fail fast on width or weight-shape mismatches
    return model
