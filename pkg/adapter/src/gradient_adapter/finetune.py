"""Toy-scale fine-tuning on prefix-encoded paraphrase pairs.

Trains a tiny seq2seq (mean-pooled encoder, GRU-cell decoder, teacher
forcing) on (encoded source -> target) pairs from a canonical JSONL
corpus. This is the training recipe in miniature: big enough to show a
real loss curve on a CPU in seconds, nowhere near big enough to
paraphrase. The artifact directory holds the checkpoint, the vocab, the
config, and a JSONL training log with one row per optimizer step; calling
finetune again with the same directory resumes from the checkpoint.
"""

from __future__ import annotations

import json
import os
import random
from typing import Optional

import torch
from torch import nn

from emogradient import corpus, prefix

from .config import AdapterConfig

PAD, BOS, EOS, UNK = 0, 1, 2, 3
SPECIALS = ("<pad>", "<bos>", "<eos>", "<unk>")


class InvalidDatasetError(ValueError):
    pass


def load_pairs(path: str) -> list[tuple[str, str]]:
    """(prefix-encoded source, target) pairs; rows missing a label are
    skipped since they cannot be prefix-encoded."""
    records, _ = corpus.ingest(path, "generic")
    pairs = []
    for r in records:
        se, te = r.source_emotion.emotion, r.target_emotion.emotion
        if se is None or te is None:
            continue
        pairs.append((prefix.encode(r.source, se, te), r.target))
    if not pairs:
        raise InvalidDatasetError(f"no trainable pairs in {path}")
    return pairs


def build_vocab(pairs: list[tuple[str, str]]) -> list[str]:
    words = sorted({w for src, tgt in pairs for w in src.split() + tgt.split()})
    return list(SPECIALS) + words


class TinySeq2Seq(nn.Module):
    def __init__(self, vocab_size: int, dim: int = 32, hidden: int = 64):
        super().__init__()
        self.emb = nn.Embedding(vocab_size, dim, padding_idx=PAD)
        self.enc = nn.Linear(dim, hidden)
        self.cell = nn.GRUCell(dim, hidden)
        self.out = nn.Linear(hidden, vocab_size)

    def forward(self, src: torch.Tensor, tgt_in: torch.Tensor) -> torch.Tensor:
        mask = (src != PAD).float().unsqueeze(-1)
        pooled = (self.emb(src) * mask).sum(1) / mask.sum(1).clamp(min=1.0)
        h = torch.tanh(self.enc(pooled))
        steps = []
        for t in range(tgt_in.size(1)):
            h = self.cell(self.emb(tgt_in[:, t]), h)
            steps.append(self.out(h))
        return torch.stack(steps, dim=1)


def _tensorize(batch, index, max_length):
    def ids(text):
        return [index.get(w, UNK) for w in text.split()][:max_length]

    srcs = [ids(src) for src, _ in batch]
    tgts = [ids(tgt) for _, tgt in batch]
    s_len = max(len(s) for s in srcs)
    t_len = max(len(t) for t in tgts) + 1  # room for BOS/EOS
    src_t = torch.full((len(batch), s_len), PAD, dtype=torch.long)
    tgt_in = torch.full((len(batch), t_len), PAD, dtype=torch.long)
    tgt_out = torch.full((len(batch), t_len), PAD, dtype=torch.long)
    for i, (s, t) in enumerate(zip(srcs, tgts)):
        src_t[i, : len(s)] = torch.tensor(s)
        tgt_in[i, : len(t) + 1] = torch.tensor([BOS] + t)
        tgt_out[i, : len(t) + 1] = torch.tensor(t + [EOS])
    return src_t, tgt_in, tgt_out


def finetune(
    train_path: str,
    out_dir: str,
    config: Optional[AdapterConfig] = None,
    seed: int = 42,
) -> dict:
    """Train and write artifacts; returns a summary with the loss endpoints."""
    config = config or AdapterConfig()
    pairs = load_pairs(train_path)
    os.makedirs(out_dir, exist_ok=True)
    ckpt_path = os.path.join(out_dir, "checkpoint.pt")
    log_path = os.path.join(out_dir, "training_log.jsonl")

    resumed = os.path.exists(ckpt_path)
    if resumed:
        payload = torch.load(ckpt_path)
        vocab = payload["vocab"]
        start_step = payload["step"]
    else:
        vocab = build_vocab(pairs)
        start_step = 0
    index = {w: i for i, w in enumerate(vocab)}

    torch.manual_seed(seed)
    model = TinySeq2Seq(len(vocab))
    if resumed:
        model.load_state_dict(payload["model"])
    optimizer = torch.optim.Adam(model.parameters(), lr=1e-2)
    loss_fn = nn.CrossEntropyLoss(ignore_index=PAD)
    rng = random.Random(seed)

    log_rows = []
    step = start_step
    with open(log_path, "a" if resumed else "w", encoding="utf-8") as fh:
        for epoch in range(config.epochs):
            order = list(range(len(pairs)))
            rng.shuffle(order)
            for start in range(0, len(order), config.batch_size):
                batch = [pairs[i] for i in order[start : start + config.batch_size]]
                src, tgt_in, tgt_out = _tensorize(batch, index, config.max_length)
                logits = model(src, tgt_in)
                loss = loss_fn(logits.reshape(-1, len(vocab)), tgt_out.reshape(-1))
                optimizer.zero_grad()
                loss.backward()
                optimizer.step()
                step += 1
                row = {"step": step, "epoch": epoch, "loss": loss.item()}
                log_rows.append(row)
                fh.write(json.dumps(row) + "\n")

    torch.save({"model": model.state_dict(), "vocab": vocab, "step": step}, ckpt_path)
    with open(os.path.join(out_dir, "vocab.json"), "w", encoding="utf-8") as fh:
        json.dump(vocab, fh)
    with open(os.path.join(out_dir, "config.json"), "w", encoding="utf-8") as fh:
        json.dump(
            {"epochs": config.epochs, "batch_size": config.batch_size,
             "max_length": config.max_length, "seed": seed},
            fh, indent=2,
        )

    return {
        "out_dir": out_dir,
        "pairs": len(pairs),
        "vocab_size": len(vocab),
        "steps": step - start_step,
        "first_loss": log_rows[0]["loss"],
        "last_loss": log_rows[-1]["loss"],
        "resumed": resumed,
    }
