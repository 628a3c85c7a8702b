"""Paraphrase evaluation metrics computed from scratch: emotion exact match,
BLEU, GLEU, ROUGE-1/2/L, and METEOR, plus the shared tokenizer.

Conventions, fixed so goldens stay stable:
  * exact_match compares emotion labels positionally; a position counts only
    when both labels are present and equal, so none vs none is a non-match.
  * BLEU is corpus-level: n = 1..4 uniform weights, clipped counts,
    unsmoothed by default (any zero precision gives 0), brevity penalty
    min(1, e^(1 - r/c)) over total lengths.
  * GLEU aggregates matches and totals for n = 1..4 together, then takes
    min(precision, recall).
  * ROUGE-1/2 and ROUGE-L are means over per-pair F1 (clipped n-gram overlap
    and LCS respectively).
  * METEOR is a mean over per-pair scores: exact stage then Porter-stem
    stage, greedy left-to-right alignment that prefers continuing the
    current chunk, Fmean = 10PR/(R+9P), penalty 0.5 * (chunks/matches)^3.

All corpus operations share one counting pass per pair (`_pair_stats`), so
the combined scorer and the individual metric functions cannot drift apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .stem import porter_stem

_TRAIL_PUNCT = frozenset(".,!?;:")

METRIC_NAMES = ("exact_match", "bleu", "gleu", "rouge1", "rouge2", "rougeL", "meteor")

TokenSeq = Sequence[str]
Corpus = Sequence[tuple[TokenSeq, TokenSeq]]


@dataclass(frozen=True)
class MetricValue:
    name: str
    value: float


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, detach trailing .,!?;: characters as
    standalone tokens kept in their original order."""
    out: list[str] = []
    for raw in text.lower().split():
        trail: list[str] = []
        while raw and raw[-1] in _TRAIL_PUNCT:
            trail.append(raw[-1])
            raw = raw[:-1]
        if raw:
            out.append(raw)
        out.extend(reversed(trail))
    return out


# ---------------------------------------------------------------- kernels

@lru_cache(maxsize=65536)
def _ngram_counts(toks: tuple, n: int) -> dict:
    # cached: corpora reuse the same reference (or hypothesis) many times.
    # callers must treat the returned dict as read-only.
    d: dict = {}
    if n == 1:
        for g in toks:
            d[g] = d.get(g, 0) + 1
    else:
        for i in range(len(toks) - n + 1):
            g = toks[i : i + n]
            d[g] = d.get(g, 0) + 1
    return d


def _clipped(hyp_counts: dict, ref_counts: dict) -> int:
    m = 0
    for g, c in hyp_counts.items():
        o = ref_counts.get(g, 0)
        if o:
            m += c if c < o else o
    return m


def _f1(overlap: int, hyp_total: int, ref_total: int) -> float:
    if not overlap:
        return 0.0
    p = overlap / hyp_total
    r = overlap / ref_total
    return 2.0 * p * r / (p + r)


def _lcs_len(a: tuple, b: tuple) -> int:
    if not a or not b:
        return 0
    la, lb = len(a), len(b)
    if la < lb:
        a, b, la, lb = b, a, lb, la
    prev = [0] * (lb + 1)
    for x in a:
        cur = [0] * (lb + 1)
        for j in range(lb):
            if x == b[j]:
                cur[j + 1] = prev[j] + 1
            else:
                u, v = cur[j], prev[j + 1]
                cur[j + 1] = u if u >= v else v
        prev = cur
    return prev[lb]


_stem_cache: dict[str, str] = {}


@lru_cache(maxsize=65536)
def _stems(toks: tuple) -> tuple:
    out = []
    for w in toks:
        s = _stem_cache.get(w)
        if s is None:
            s = porter_stem(w)
            _stem_cache[w] = s
        out.append(s)
    return tuple(out)


def _meteor_pair(h: tuple, r: tuple) -> float:
    lh, lr = len(h), len(r)
    if not lh or not lr:
        return 0.0
    match = [-1] * lh
    used = [False] * lr
    hstems, rstems = _stems(h), _stems(r)
    stages = [(h, r)]
    # a stem pass can add nothing when stemming changed no token of either side
    if hstems != h or rstems != r:
        stages.append((hstems, rstems))
    for hseq, rseq in stages:
        for i in range(lh):
            if match[i] >= 0:
                continue
            w = hseq[i]
            # prefer the slot that continues the previous chunk
            cont = match[i - 1] + 1 if i and match[i - 1] >= 0 else -1
            j = -1
            if 0 <= cont < lr and not used[cont] and rseq[cont] == w:
                j = cont
            else:
                for jj in range(lr):
                    if not used[jj] and rseq[jj] == w:
                        j = jj
                        break
            if j >= 0:
                used[j] = True
                match[i] = j
    m = 0
    chunks = 0
    prev_i = prev_j = -5
    for i in range(lh):
        j = match[i]
        if j < 0:
            continue
        m += 1
        if i != prev_i + 1 or j != prev_j + 1:
            chunks += 1
        prev_i, prev_j = i, j
    if not m:
        return 0.0
    p = m / lh
    q = m / lr
    fmean = 10.0 * p * q / (q + 9.0 * p)
    return fmean * (1.0 - 0.5 * (chunks / m) ** 3)


# ------------------------------------------------------------ pair scoring

@dataclass(frozen=True)
class PairScores:
    bleu: float
    gleu: float
    rouge1: float
    rouge2: float
    rougeL: float
    meteor: float


def _pair_stats(h: tuple, r: tuple):
    """(lh, lr, (m1..m4), rouge1, rouge2, rougeL, meteor) for one pair."""
    lh, lr = len(h), len(r)
    ms = []
    for n in (1, 2, 3, 4):
        if lh < n or lr < n:
            ms.append(0)
            continue
        ms.append(_clipped(_ngram_counts(h, n), _ngram_counts(r, n)))
    r1 = _f1(ms[0], lh, lr) if ms[0] else 0.0
    r2 = _f1(ms[1], lh - 1, lr - 1) if ms[1] else 0.0
    lcs = _lcs_len(h, r)
    rl = _f1(lcs, lh, lr) if lcs else 0.0
    return lh, lr, tuple(ms), r1, r2, rl, _meteor_pair(h, r)


def _bleu_parts(stats: list, smoothing: bool) -> tuple[list[float], float, float]:
    """(precisions p1..p4, brevity penalty, score) over aggregated counts."""
    c = sum(s[0] for s in stats)
    r = sum(s[1] for s in stats)
    precisions = []
    for k in range(4):
        m = sum(s[2][k] for s in stats)
        t = sum(lh - k if lh > k else 0 for lh, *_ in stats)
        if smoothing:
            m, t = m + 1, t + 1
        precisions.append(m / t if t else 0.0)
    bp = 1.0 if c == 0 or c >= r else math.exp(1.0 - r / c)
    if any(p == 0.0 for p in precisions):
        return precisions, bp, 0.0
    score = math.exp(0.25 * sum(math.log(p) for p in precisions)) * bp
    return precisions, bp, score


def _agg(stats: list, smoothing: bool = False) -> PairScores:
    n_pairs = len(stats)
    if not n_pairs:
        raise ValueError("empty corpus")
    match_tot = [0, 0, 0, 0]
    hyp_tot = [0, 0, 0, 0]
    ref_tot = [0, 0, 0, 0]
    for lh, lr, ms, *_ in stats:
        for k in range(4):
            match_tot[k] += ms[k]
            hyp_tot[k] += lh - k if lh > k else 0
            ref_tot[k] += lr - k if lr > k else 0
    _, _, bleu_val = _bleu_parts(stats, smoothing)
    tm = sum(match_tot)
    th = sum(hyp_tot)
    tr = sum(ref_tot)
    gleu_val = min(tm / th, tm / tr) if tm and th and tr else 0.0
    return PairScores(
        bleu_val,
        gleu_val,
        sum(s[3] for s in stats) / n_pairs,
        sum(s[4] for s in stats) / n_pairs,
        sum(s[5] for s in stats) / n_pairs,
        sum(s[6] for s in stats) / n_pairs,
    )


def pair_scores(hyp_tokens: TokenSeq, ref_tokens: TokenSeq) -> PairScores:
    """All six reference metrics for one token pair (BLEU and GLEU degenerate
    to their singleton-corpus values).

    Computed inline rather than through ``_agg`` because the exhaustive
    oracle comparison calls this millions of times; a property test pins the
    two paths to identical results.
    """
    stats = _pair_stats(tuple(hyp_tokens), tuple(ref_tokens))
    lh, lr, ms, r1, r2, rl, met = stats
    log_sum = 0.0
    bleu_val = None
    th = tr = 0
    for k in range(4):
        hn = lh - k if lh > k else 0
        rn = lr - k if lr > k else 0
        th += hn
        tr += rn
        if bleu_val is None:
            if ms[k] == 0 or hn == 0:
                bleu_val = 0.0
            else:
                log_sum += math.log(ms[k] / hn)
    if bleu_val is None:
        bp = 1.0 if lh >= lr else math.exp(1.0 - lr / lh)
        bleu_val = math.exp(0.25 * log_sum) * bp
    tm = ms[0] + ms[1] + ms[2] + ms[3]
    gleu_val = min(tm / th, tm / tr) if tm and th and tr else 0.0
    return PairScores(bleu_val, gleu_val, r1, r2, rl, met)


def _corpus_stats(corpus: Corpus) -> list:
    return [_pair_stats(tuple(h), tuple(r)) for h, r in corpus]


def score_corpus(corpus: Corpus) -> PairScores:
    """The six reference metrics over a corpus in one shared pass."""
    return _agg(_corpus_stats(corpus))


# -------------------------------------------------------------- public API

def _emotion_of(label) -> int | None:
    # accepts an EmotionLabel-shaped object or a bare id / None
    return getattr(label, "emotion", label)


def exact_match(pred_labels: Sequence, target_labels: Sequence) -> MetricValue:
    """Fraction of positions where both emotion labels are present and equal.

    Takes EmotionLabels or bare emotion ids; an absent emotion never matches,
    including none vs none. Empty input scores 0.0.
    """
    if len(pred_labels) != len(target_labels):
        raise ValueError(
            f"label count mismatch: {len(pred_labels)} vs {len(target_labels)}"
        )
    hits = 0
    for p, t in zip(pred_labels, target_labels):
        pe, te = _emotion_of(p), _emotion_of(t)
        if pe is not None and te is not None and pe == te:
            hits += 1
    value = hits / len(pred_labels) if pred_labels else 0.0
    return MetricValue("exact_match", value)


def bleu(corpus: Corpus, smoothing: bool = False) -> MetricValue:
    return MetricValue("bleu", _agg(_corpus_stats(corpus), smoothing=smoothing).bleu)


def bleu_components(corpus: Corpus, smoothing: bool = False) -> dict[str, float]:
    """BLEU broken into its parts: p1..p4, brevity penalty, and the score."""
    stats = _corpus_stats(corpus)
    if not stats:
        raise ValueError("empty corpus")
    precisions, bp, score = _bleu_parts(stats, smoothing)
    return {
        "p1": precisions[0],
        "p2": precisions[1],
        "p3": precisions[2],
        "p4": precisions[3],
        "brevity_penalty": bp,
        "bleu": score,
    }


def gleu(corpus: Corpus) -> MetricValue:
    return MetricValue("gleu", _agg(_corpus_stats(corpus)).gleu)


def rouge_n(corpus: Corpus, n: int) -> MetricValue:
    if n == 1:
        return MetricValue("rouge1", _agg(_corpus_stats(corpus)).rouge1)
    if n == 2:
        return MetricValue("rouge2", _agg(_corpus_stats(corpus)).rouge2)
    raise ValueError(f"rouge_n supports n in {{1, 2}}, got {n}")


def rouge_l(corpus: Corpus) -> MetricValue:
    return MetricValue("rougeL", _agg(_corpus_stats(corpus)).rougeL)


def meteor(corpus: Corpus) -> MetricValue:
    return MetricValue("meteor", _agg(_corpus_stats(corpus)).meteor)
