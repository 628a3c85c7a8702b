"""Emotion classifier gateway.

Backends share one contract: ``classify_scores(texts)`` returns one
28-float score vector per input text, order-preserving, each value in [0,1]
(independent sigmoids, not a distribution). ``dominant_emotion`` applies
the single-label thresholding rule on top: the maximum score wins only if
it is strictly above the threshold, ties broken by lowest emotion id.

Three backends: ``remote`` (HTTP model server), ``lexicon`` (deterministic
keyword table, a test fixture rather than a claim about accuracy), and
``fixed`` (explicit text-to-scores map for tests).
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import requests

from .errors import BackendUnavailableError, MalformedResponseError, with_retries
from .taxonomy import NUM_EMOTIONS, resolve

ScoreVector = tuple[float, ...]

CLASSIFIER_URL_ENV = "GRADIENT_CLASSIFIER_URL"
DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class EmotionLabel:
    """Dominant emotion for one text; emotion is None exactly when no score
    cleared the threshold, and then score is None too."""

    emotion: Optional[int]
    score: Optional[float]

    def __post_init__(self):
        if (self.emotion is None) != (self.score is None):
            raise ValueError("emotion and score must be both present or both absent")


NO_LABEL = EmotionLabel(None, None)


@dataclass(frozen=True)
class ClassifierConfig:
    backend: str = "lexicon"  # remote | lexicon | fixed
    endpoint: Optional[str] = None
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if self.backend not in ("remote", "lexicon", "fixed"):
            raise ValueError(f"unknown classifier backend {self.backend!r}")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must be strictly inside (0,1), got {self.threshold}")


def check_score_vector(raw: Sequence) -> ScoreVector:
    if len(raw) != NUM_EMOTIONS:
        raise ValueError(f"score vector must have {NUM_EMOTIONS} entries, got {len(raw)}")
    out = []
    for v in raw:
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not 0.0 <= v <= 1.0:
            raise ValueError(f"score out of [0,1]: {v!r}")
        out.append(float(v))
    return tuple(out)


def dominant_emotion(scores: Sequence[float], threshold: float = DEFAULT_THRESHOLD) -> EmotionLabel:
    """Strictly-above-threshold argmax; ties go to the lowest emotion id."""
    if len(scores) != NUM_EMOTIONS:
        raise ValueError(f"score vector must have {NUM_EMOTIONS} entries, got {len(scores)}")
    best_id = 0
    best = scores[0]
    for i in range(1, NUM_EMOTIONS):
        if scores[i] > best:
            best = scores[i]
            best_id = i
    if best > threshold:
        return EmotionLabel(best_id, float(best))
    return NO_LABEL


class Classifier:
    """Shared label composition over a backend's classify_scores."""

    def classify_scores(self, texts: Sequence[str]) -> list[ScoreVector]:
        raise NotImplementedError

    def classify_label(
        self, texts: Sequence[str], threshold: float = DEFAULT_THRESHOLD
    ) -> list[EmotionLabel]:
        return [dominant_emotion(v, threshold) for v in self.classify_scores(texts)]


_WORD_RE = re.compile(r"[\w']+")

# Deterministic keyword table so the toolkit runs with no model at all.
# One-word cues only; weights sit above the default 0.5 threshold.
DEFAULT_LEXICON: dict[str, tuple[str, float]] = {
    "impressive": ("admiration", 0.9),
    "admire": ("admiration", 0.9),
    "funny": ("amusement", 0.9),
    "hilarious": ("amusement", 0.9),
    "angry": ("anger", 0.9),
    "furious": ("anger", 0.9),
    "hate": ("anger", 0.8),
    "annoying": ("annoyance", 0.9),
    "annoyed": ("annoyance", 0.9),
    "irritating": ("annoyance", 0.8),
    "agree": ("approval", 0.8),
    "approve": ("approval", 0.9),
    "caring": ("caring", 0.9),
    "comfort": ("caring", 0.8),
    "confused": ("confusion", 0.9),
    "confusing": ("confusion", 0.8),
    "curious": ("curiosity", 0.9),
    "wondering": ("curiosity", 0.8),
    "wish": ("desire", 0.8),
    "crave": ("desire", 0.9),
    "disappointed": ("disappointment", 0.9),
    "disappointing": ("disappointment", 0.8),
    "disagree": ("disapproval", 0.8),
    "disapprove": ("disapproval", 0.9),
    "disgusting": ("disgust", 0.9),
    "gross": ("disgust", 0.8),
    "embarrassed": ("embarrassment", 0.9),
    "awkward": ("embarrassment", 0.7),
    "excited": ("excitement", 0.9),
    "thrilled": ("excitement", 0.9),
    "afraid": ("fear", 0.9),
    "terrified": ("fear", 0.9),
    "scared": ("fear", 0.9),
    "thanks": ("gratitude", 0.9),
    "thank": ("gratitude", 0.9),
    "grateful": ("gratitude", 0.9),
    "mourning": ("grief", 0.9),
    "grieving": ("grief", 0.9),
    "happy": ("joy", 0.9),
    "joyful": ("joy", 0.9),
    "glad": ("joy", 0.8),
    "love": ("love", 0.9),
    "adore": ("love", 0.9),
    "nervous": ("nervousness", 0.9),
    "anxious": ("nervousness", 0.9),
    "hopeful": ("optimism", 0.9),
    "optimistic": ("optimism", 0.9),
    "proud": ("pride", 0.9),
    "realized": ("realization", 0.8),
    "realize": ("realization", 0.7),
    "relieved": ("relief", 0.9),
    "relief": ("relief", 0.8),
    "sorry": ("remorse", 0.8),
    "regret": ("remorse", 0.9),
    "sad": ("sadness", 0.9),
    "unhappy": ("sadness", 0.9),
    "miserable": ("sadness", 0.9),
    "surprised": ("surprise", 0.9),
    "wow": ("surprise", 0.8),
}


class LexiconClassifier(Classifier):
    """Keyword-to-(emotion, weight) table; a text's score for an emotion is
    min(1, sum of weights of its keywords present in the text), matched on
    lowercase word boundaries."""

    def __init__(self, lexicon: Optional[Mapping[str, tuple]] = None):
        table = DEFAULT_LEXICON if lexicon is None else lexicon
        self._by_word: dict[str, tuple[int, float]] = {}
        for word, (emotion, weight) in table.items():
            self._by_word[word.lower()] = (resolve(emotion).id, float(weight))

    def classify_scores(self, texts: Sequence[str]) -> list[ScoreVector]:
        out = []
        for text in texts:
            scores = [0.0] * NUM_EMOTIONS
            for word in set(_WORD_RE.findall(text.lower())):
                hit = self._by_word.get(word)
                if hit:
                    eid, weight = hit
                    scores[eid] = min(1.0, scores[eid] + weight)
            out.append(tuple(scores))
        return out


class FixedClassifier(Classifier):
    """Explicit text-to-scores map for tests; unseen texts score all zeros.

    Map values are either a full 28-float vector or a sparse
    {emotion name or id: score} dict.
    """

    def __init__(self, mapping: Mapping[str, object]):
        self._table: dict[str, ScoreVector] = {}
        for text, value in mapping.items():
            if isinstance(value, Mapping):
                scores = [0.0] * NUM_EMOTIONS
                for emotion, score in value.items():
                    scores[resolve(emotion).id] = float(score)
                self._table[text] = check_score_vector(scores)
            else:
                self._table[text] = check_score_vector(value)

    def classify_scores(self, texts: Sequence[str]) -> list[ScoreVector]:
        zeros = (0.0,) * NUM_EMOTIONS
        return [self._table.get(t, zeros) for t in texts]


class RemoteClassifier(Classifier):
    """POST {endpoint}/classify with {"texts": [...]}; expects
    {"scores": [[28 floats], ...]} back, one row per text."""

    def __init__(
        self,
        endpoint: str,
        timeout: float = 30.0,
        attempts: int = 3,
        base_delay: float = 0.2,
        session: Optional[requests.Session] = None,
        sleep=None,
    ):
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout
        self.attempts = attempts
        self.base_delay = base_delay
        self._session = session or requests.Session()
        self._sleep_kwargs = {} if sleep is None else {"sleep": sleep}

    def classify_scores(self, texts: Sequence[str]) -> list[ScoreVector]:
        def call():
            return self._session.post(
                f"{self.endpoint}/classify",
                json={"texts": list(texts)},
                timeout=self.timeout,
            )

        resp = with_retries(
            call,
            attempts=self.attempts,
            base_delay=self.base_delay,
            retry_on=(requests.ConnectionError, requests.Timeout),
            **self._sleep_kwargs,
        )
        if resp.status_code != 200:
            raise BackendUnavailableError(
                f"classifier returned HTTP {resp.status_code}: {resp.text[:200]}"
            )
        try:
            payload = resp.json()
            rows = payload["scores"]
            if len(rows) != len(texts):
                raise ValueError(f"expected {len(texts)} rows, got {len(rows)}")
            return [check_score_vector(row) for row in rows]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponseError(f"bad classifier response: {exc}") from exc


def make_classifier(
    config: ClassifierConfig,
    fixed_map: Optional[Mapping[str, object]] = None,
    lexicon: Optional[Mapping[str, tuple]] = None,
) -> Classifier:
    if config.backend == "lexicon":
        return LexiconClassifier(lexicon)
    if config.backend == "fixed":
        return FixedClassifier(fixed_map or {})
    endpoint = config.endpoint or os.environ.get(CLASSIFIER_URL_ENV)
    if not endpoint:
        raise ValueError(
            f"remote classifier needs an endpoint (flag or {CLASSIFIER_URL_ENV})"
        )
    return RemoteClassifier(endpoint)
