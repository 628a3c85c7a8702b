"""Emotion-gradient paraphrasing toolkit.

Classify a text's emotion, suggest intensity-lowering transitions over a
cluster-structured emotion graph, encode the transition as a task prefix
for a pluggable text-to-text generator, prepare emotion-labeled paraphrase
corpora, and score generated paraphrases (emotion Exact Match plus
BLEU / GLEU / ROUGE-1/2/L / METEOR).
"""

__version__ = "0.1.0"

from .taxonomy import Emotion, EMOTIONS, NEUTRAL_ID, emotion_by_id, emotion_by_name
from .graph import TransitionGraph, build_default, targets_of, is_valid_transition

__all__ = [
    "Emotion",
    "EMOTIONS",
    "NEUTRAL_ID",
    "emotion_by_id",
    "emotion_by_name",
    "TransitionGraph",
    "build_default",
    "targets_of",
    "is_valid_transition",
]
