"""Shared fixtures and small builders used across the test suite."""

import pytest

from emogradient.classify import EmotionLabel, FixedClassifier
from emogradient.corpus import PairRecord
from emogradient.taxonomy import emotion_by_name


def label(name, score=0.9):
    """EmotionLabel for an emotion name, or the explicit no-label value."""
    if name is None:
        return EmotionLabel(None, None)
    return EmotionLabel(emotion_by_name(name).id, score)


def record(rid, source, target, src=None, tgt=None, **kw):
    """PairRecord with optional emotion names for the two sides (None = blank)."""
    kw.setdefault("origin", "generic")
    return PairRecord(
        id=rid,
        source=source,
        target=target,
        source_emotion=label(src),
        target_emotion=label(tgt),
        **kw,
    )


def fixed_for(texts_to_names, score=0.9):
    """FixedClassifier mapping each text to one dominant emotion."""
    return FixedClassifier(
        {text: {name: score} for text, name in texts_to_names.items()}
    )


@pytest.fixture
def tmp_jsonl(tmp_path):
    def write(name, lines):
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return write
