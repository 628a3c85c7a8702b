"""Canonical 28-emotion vocabulary with cluster structure and intensity ranks.

IDs follow the GoEmotions convention: the 27 non-neutral emotions in
alphabetical order (admiration=0 .. surprise=26), neutral last (27).
Each emotion belongs to one of 11 clusters; within a cluster,
``intensity_rank`` orders members from closest-to-neutral (0) upward.
"""

from __future__ import annotations

from dataclasses import dataclass


class UnknownEmotionError(LookupError):
    """Raised when a name or id does not resolve to one of the 28 emotions."""


@dataclass(frozen=True)
class Emotion:
    id: int
    name: str
    cluster: int
    intensity_rank: int


# (name, cluster, intensity_rank); order fixes the id assignment.
_TABLE = [
    ("admiration", 4, 0),
    ("amusement", 2, 0),
    ("anger", 11, 3),
    ("annoyance", 11, 1),
    ("approval", 6, 1),
    ("caring", 3, 1),
    ("confusion", 7, 1),
    ("curiosity", 7, 0),
    ("desire", 3, 2),
    ("disappointment", 10, 0),
    ("disapproval", 11, 0),
    ("disgust", 11, 2),
    ("embarrassment", 9, 0),
    ("excitement", 2, 2),
    ("fear", 8, 1),
    ("gratitude", 5, 1),
    ("grief", 10, 2),
    ("joy", 2, 1),
    ("love", 2, 3),
    ("nervousness", 8, 0),
    ("optimism", 3, 0),
    ("pride", 4, 1),
    ("realization", 6, 0),
    ("relief", 5, 0),
    ("remorse", 9, 1),
    ("sadness", 10, 1),
    ("surprise", 7, 2),
    ("neutral", 1, 0),
]

EMOTIONS: tuple[Emotion, ...] = tuple(
    Emotion(i, name, cluster, rank) for i, (name, cluster, rank) in enumerate(_TABLE)
)

NUM_EMOTIONS = len(EMOTIONS)
NEUTRAL_ID = 27
NUM_CLUSTERS = 11

_BY_NAME = {e.name: e for e in EMOTIONS}

_CLUSTERS: dict[int, tuple[Emotion, ...]] = {}
for _c in range(1, NUM_CLUSTERS + 1):
    _members = [e for e in EMOTIONS if e.cluster == _c]
    _members.sort(key=lambda e: (-e.intensity_rank, e.id))
    _CLUSTERS[_c] = tuple(_members)
del _c, _members


def emotion_by_name(name: str) -> Emotion:
    """Case-insensitive, whitespace-trimmed lookup by emotion name."""
    e = _BY_NAME.get(name.strip().lower())
    if e is None:
        raise UnknownEmotionError(f"unknown emotion name: {name!r}")
    return e


def emotion_by_id(emotion_id: int) -> Emotion:
    if 0 <= emotion_id < NUM_EMOTIONS:
        return EMOTIONS[emotion_id]
    raise UnknownEmotionError(f"emotion id out of range: {emotion_id}")


def cluster_members(cluster: int) -> list[Emotion]:
    """Members of one cluster, most intense first."""
    if cluster not in _CLUSTERS:
        raise ValueError(f"cluster out of range: {cluster}")
    return list(_CLUSTERS[cluster])


def resolve(token: str | int) -> Emotion:
    """Resolve a name or an integer id (also numeric strings) to an Emotion."""
    if isinstance(token, int):
        return emotion_by_id(token)
    text = token.strip()
    if text.lstrip("-").isdigit():
        return emotion_by_id(int(text))
    return emotion_by_name(text)


def taxonomy_document() -> dict:
    """The compiled-in taxonomy in the graph-config document shape."""
    return {
        "emotions": [
            {"name": e.name, "cluster": e.cluster, "intensity_rank": e.intensity_rank}
            for e in EMOTIONS
        ]
    }
