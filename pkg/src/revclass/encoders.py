"""Text-to-embedding channels: tokenization plus frozen pretrained encoders.

Two backends satisfy the same small interface. The pretrained backend
wraps a transformer checkpoint (resolved by name or local path at run
time, weights frozen, imported lazily so the dependency stays optional).
The stub backend derives token ids and embedding vectors from hashes,
giving a deterministic, network-free encoder for tests and smoke runs;
its output distinguishes encoder kinds by salting the hash, so swapping
the comment encoder changes comment embeddings and nothing else.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

import numpy as np

from .modelconfig import (
    GENERAL_NL,
    HYBRID_CODE_NL,
    PRETRAINED_BACKEND,
    STUB_BACKEND,
    ModelConfig,
)

PAD_ID = 0
BOS_ID = 1
EOS_ID = 2
_STUB_VOCAB = 50_000
_TOKEN_RE = re.compile(r"\w+|[^\w\s]")


@dataclass(frozen=True)
class TokenizedInput:
    token_ids: np.ndarray  # (max_length,) int64
    attention_mask: np.ndarray  # (max_length,) int64; padding positions 0

    def __post_init__(self):
        if self.token_ids.shape != self.attention_mask.shape:
            raise ValueError("token_ids and attention_mask lengths differ")

    @property
    def length(self) -> int:
        return int(self.attention_mask.sum())


class StubEncoder:
    """Hash-derived tokens and embeddings; deterministic, no checkpoint."""

    def __init__(self, kind: str, max_length: int = 512, dim: int = 64):
        self.name = f"stub:{kind}"
        self.kind = kind
        self.max_length = max_length
        self.embedding_dim = dim
        self._vectors: dict[int, np.ndarray] = {}

    def tokenize(self, text: str) -> TokenizedInput:
        body = [self._token_id(t) for t in _TOKEN_RE.findall(text)]
        ids = [BOS_ID] + body + [EOS_ID]
        if len(ids) > self.max_length:
            ids = ids[: self.max_length - 1] + [EOS_ID]
        mask = [1] * len(ids)
        pad = self.max_length - len(ids)
        ids.extend([PAD_ID] * pad)
        mask.extend([0] * pad)
        return TokenizedInput(
            token_ids=np.array(ids, dtype=np.int64),
            attention_mask=np.array(mask, dtype=np.int64),
        )

    def _token_id(self, token: str) -> int:
        payload = f"{self.kind}\x1f{token}".encode("utf-8")
        raw = int.from_bytes(hashlib.md5(payload).digest()[:8], "big")
        return 3 + raw % _STUB_VOCAB

    def embed(self, tokens: TokenizedInput) -> np.ndarray:
        out = np.zeros((self.max_length, self.embedding_dim), dtype=np.float32)
        for i, token_id in enumerate(tokens.token_ids):
            tid = int(token_id)
            if tid == PAD_ID:
                continue
            out[i] = self._vector(tid)
        return out

    def _vector(self, token_id: int) -> np.ndarray:
        vec = self._vectors.get(token_id)
        if vec is None:
            vec = (
                np.random.RandomState(token_id)
                .standard_normal(self.embedding_dim)
                .astype(np.float32)
            )
            self._vectors[token_id] = vec
        return vec

    def embed_batch(self, batch: list[TokenizedInput]) -> np.ndarray:
        return np.stack([self.embed(t) for t in batch])


class PretrainedEncoder:
    """Frozen transformer checkpoint behind the same interface."""

    def __init__(self, checkpoint: str, max_length: int = 512):
        try:
            from transformers import AutoModel, AutoTokenizer
        except ImportError as exc:  # pragma: no cover - environment-specific
            raise RuntimeError(
                "the pretrained encoder backend needs the 'transformers' extra"
            ) from exc
        self.name = f"pretrained:{checkpoint}"
        self.max_length = max_length
        self._tokenizer = AutoTokenizer.from_pretrained(checkpoint)
        self._model = AutoModel.from_pretrained(checkpoint)
        self._model.eval()
        for p in self._model.parameters():
            p.requires_grad_(False)
        self.embedding_dim = int(self._model.config.hidden_size)

    def tokenize(self, text: str) -> TokenizedInput:
        enc = self._tokenizer(
            text,
            truncation=True,
            max_length=self.max_length,
            padding="max_length",
        )
        return TokenizedInput(
            token_ids=np.array(enc["input_ids"], dtype=np.int64),
            attention_mask=np.array(enc["attention_mask"], dtype=np.int64),
        )

    def embed(self, tokens: TokenizedInput) -> np.ndarray:
        return self.embed_batch([tokens])[0]

    def embed_batch(self, batch: list[TokenizedInput]) -> np.ndarray:
        import torch

        ids = torch.from_numpy(np.stack([t.token_ids for t in batch]))
        mask = torch.from_numpy(np.stack([t.attention_mask for t in batch]))
        with torch.no_grad():
            out = self._model(input_ids=ids, attention_mask=mask)
        return out.last_hidden_state.to(torch.float32).numpy()


def get_encoder(kind: str, config: ModelConfig):
    """Resolve an encoder kind to a backend instance per the config."""
    if kind not in (GENERAL_NL, HYBRID_CODE_NL):
        raise ValueError(f"unknown encoder kind {kind!r}")
    if config.encoder_backend == STUB_BACKEND:
        return StubEncoder(
            kind,
            max_length=config.max_sequence_length,
            dim=config.stub_embedding_dim,
        )
    if config.encoder_backend == PRETRAINED_BACKEND:
        checkpoint = (
            config.hybrid_checkpoint
            if kind == HYBRID_CODE_NL
            else config.general_checkpoint
        )
        return PretrainedEncoder(checkpoint, max_length=config.max_sequence_length)
    raise ValueError(f"unknown encoder backend {config.encoder_backend!r}")


def tokenize(text: str, encoder) -> TokenizedInput:
    return encoder.tokenize(text)
