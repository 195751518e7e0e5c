"""Model configuration and its key-value file format.

The optimizer (Adam, default step size) and the loss (categorical
cross-entropy) are part of the training contract and intentionally not
configurable; everything else about the fusion model is.

Config files are plain `key = value` lines. `#` starts a comment.
Unknown keys are rejected rather than ignored so typos surface early.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

GENERAL_NL = "general_NL"
HYBRID_CODE_NL = "hybrid_code_NL"
ENCODER_KINDS = (GENERAL_NL, HYBRID_CODE_NL)

CODE_CHANNEL = "code_context"
COMMENT_CHANNEL = "comment_text"
ATTRS_CHANNEL = "attributes"
ALL_CHANNELS = (CODE_CHANNEL, COMMENT_CHANNEL, ATTRS_CHANNEL)

STUB_BACKEND = "stub"
PRETRAINED_BACKEND = "pretrained"


@dataclass(frozen=True)
class ModelConfig:
    comment_encoder: str = HYBRID_CODE_NL
    code_encoder: str = HYBRID_CODE_NL  # fixed; validated, not varied
    channels_enabled: tuple[str, ...] = ALL_CHANNELS
    recurrent_units: int = 50
    batch_size: int = 4
    max_epochs: int = 8
    validation_fraction: float = 0.10
    early_stopping_patience: int = 2
    early_stopping_restore_best: bool = True
    seed: int = 0
    max_sequence_length: int = 512
    encoder_backend: str = PRETRAINED_BACKEND
    stub_embedding_dim: int = 64
    hybrid_checkpoint: str = "microsoft/codebert-base"
    general_checkpoint: str = "bert-base-uncased"

    def __post_init__(self):
        if self.comment_encoder not in ENCODER_KINDS:
            raise ValueError(f"unknown comment encoder {self.comment_encoder!r}")
        if self.code_encoder != HYBRID_CODE_NL:
            raise ValueError("code encoder is fixed to the hybrid code/NL kind")
        channels = tuple(self.channels_enabled)
        if not channels:
            raise ValueError("at least one channel must be enabled")
        unknown = set(channels) - set(ALL_CHANNELS)
        if unknown:
            raise ValueError(f"unknown channels: {sorted(unknown)}")
        if len(set(channels)) != len(channels):
            raise ValueError("duplicate channel names")
        # store in canonical fusion order
        object.__setattr__(
            self,
            "channels_enabled",
            tuple(c for c in ALL_CHANNELS if c in channels),
        )
        if not 0.0 < self.validation_fraction < 0.5:
            raise ValueError("validation_fraction must be in (0, 0.5)")
        for name in ("recurrent_units", "batch_size", "max_epochs",
                     "max_sequence_length", "stub_embedding_dim"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.early_stopping_patience < 1:
            raise ValueError("early_stopping_patience must be positive")
        if self.encoder_backend not in (STUB_BACKEND, PRETRAINED_BACKEND):
            raise ValueError(f"unknown encoder backend {self.encoder_backend!r}")

    def with_channels(self, *channels: str) -> "ModelConfig":
        return replace(self, channels_enabled=tuple(channels))

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ModelConfig":
        kwargs = dict(data)
        if "channels_enabled" in kwargs:
            kwargs["channels_enabled"] = tuple(kwargs["channels_enabled"])
        return cls(**kwargs)


def parse_config(text: str) -> ModelConfig:
    known = {f.name: f for f in fields(ModelConfig)}
    kwargs: dict = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in known:
            raise ValueError(f"line {lineno}: unknown config key {key!r}")
        kwargs[key] = _parse_value(key, value)
    return ModelConfig(**kwargs)


def _parse_value(key: str, value: str):
    if key == "channels_enabled":
        return tuple(p.strip() for p in value.split(",") if p.strip())
    if key in ("validation_fraction",):
        return float(value)
    if key in ("early_stopping_restore_best",):
        if value.lower() in ("true", "1", "yes"):
            return True
        if value.lower() in ("false", "0", "no"):
            return False
        raise ValueError(f"{key}: expected a boolean, got {value!r}")
    if key in ("recurrent_units", "batch_size", "max_epochs", "seed",
               "max_sequence_length", "stub_embedding_dim",
               "early_stopping_patience"):
        return int(value)
    return value


def write_config(config: ModelConfig) -> str:
    lines = []
    for f in fields(ModelConfig):
        value = getattr(config, f.name)
        if isinstance(value, tuple):
            value = ",".join(value)
        lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"
