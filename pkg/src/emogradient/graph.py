"""Directed emotion transition graph: within-cluster intensity-lowering edges
plus a universal edge to neutral.

The default graph connects each emotion to every strictly lower-intensity
emotion in its own cluster (lowering closure) and every non-neutral emotion
to neutral. A JSON config document can override intensity ranks, cluster
membership, and the explicit edge list; all invariants are re-validated on
load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .taxonomy import EMOTIONS, NEUTRAL_ID, NUM_EMOTIONS, Emotion, emotion_by_name
from .taxonomy import UnknownEmotionError


class GraphConfigError(ValueError):
    """The config document does not parse into a well-formed graph."""


class GraphInvariantError(GraphConfigError):
    """A structural invariant is violated; the message names the offender."""


@dataclass(frozen=True)
class TransitionGraph:
    """28 nodes plus a directed edge set; cluster/rank views may be
    config-overridden relative to the compiled-in taxonomy."""

    clusters: tuple[int, ...]
    ranks: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    @property
    def node_count(self) -> int:
        return NUM_EMOTIONS

    def out_degree(self, emotion_id: int) -> int:
        return sum(1 for a, _ in self.edges if a == emotion_id)


@dataclass(frozen=True)
class TransitionSuggestion:
    target: int
    hops: int
    rationale: str  # "within-cluster lowering" | "to-neutral"


def _lowering_closure(clusters, ranks) -> frozenset[tuple[int, int]]:
    edges = set()
    for a in range(NUM_EMOTIONS):
        if a == NEUTRAL_ID:
            continue
        edges.add((a, NEUTRAL_ID))
        for b in range(NUM_EMOTIONS):
            if b == NEUTRAL_ID or b == a:
                continue
            if clusters[a] == clusters[b] and ranks[a] > ranks[b]:
                edges.add((a, b))
    return frozenset(edges)


def build_default(taxonomy: tuple[Emotion, ...] = EMOTIONS) -> TransitionGraph:
    """Graph over the given taxonomy with the full lowering closure."""
    clusters = tuple(e.cluster for e in taxonomy)
    ranks = tuple(e.intensity_rank for e in taxonomy)
    g = TransitionGraph(clusters, ranks, _lowering_closure(clusters, ranks))
    _validate(g)
    return g


def _validate(g: TransitionGraph) -> None:
    names = [e.name for e in EMOTIONS]
    neutral_cluster = g.clusters[NEUTRAL_ID]
    for i, c in enumerate(g.clusters):
        if i != NEUTRAL_ID and c == neutral_cluster:
            raise GraphInvariantError(
                f"emotion {names[i]!r} shares the neutral cluster {neutral_cluster}"
            )
    seen: dict[tuple[int, int], str] = {}
    for i in range(NUM_EMOTIONS):
        key = (g.clusters[i], g.ranks[i])
        if key in seen:
            raise GraphInvariantError(
                f"duplicate intensity_rank {g.ranks[i]} in cluster {g.clusters[i]}: "
                f"{seen[key]!r} and {names[i]!r}"
            )
        seen[key] = names[i]

    to_neutral = set()
    for a, b in g.edges:
        ea, eb = names[a], names[b]
        if a == b:
            raise GraphInvariantError(f"self-edge on {ea!r}")
        if a == NEUTRAL_ID:
            raise GraphInvariantError(f"neutral must have out-degree 0, found edge to {eb!r}")
        if b == NEUTRAL_ID:
            to_neutral.add(a)
            continue
        if g.clusters[a] != g.clusters[b]:
            raise GraphInvariantError(f"cross-cluster edge ({ea!r} -> {eb!r})")
        if g.ranks[a] <= g.ranks[b]:
            raise GraphInvariantError(
                f"edge ({ea!r} -> {eb!r}) does not lower intensity "
                f"(rank {g.ranks[a]} -> {g.ranks[b]})"
            )
    for i in range(NUM_EMOTIONS):
        if i != NEUTRAL_ID and i not in to_neutral:
            raise GraphInvariantError(f"missing to-neutral edge from {names[i]!r}")


def load_graph(config: str | dict) -> TransitionGraph:
    """Parse a JSON config document into a validated TransitionGraph.

    The document holds ``emotions: [{name, cluster, intensity_rank}]`` and
    optionally ``edges: [[src, dst], ...]`` (names). Without ``edges`` the
    lowering closure over the declared ranks is built.
    """
    if isinstance(config, str):
        try:
            doc = json.loads(config)
        except json.JSONDecodeError as exc:
            raise GraphConfigError(f"invalid JSON: {exc}") from exc
    else:
        doc = config
    if not isinstance(doc, dict) or "emotions" not in doc:
        raise GraphConfigError("config must be an object with an 'emotions' list")

    clusters = list(e.cluster for e in EMOTIONS)
    ranks = list(e.intensity_rank for e in EMOTIONS)
    declared = set()
    for row in doc["emotions"]:
        try:
            e = emotion_by_name(row["name"])
        except (UnknownEmotionError, TypeError, KeyError) as exc:
            raise GraphConfigError(f"bad emotions entry {row!r}: {exc}") from exc
        if e.id in declared:
            raise GraphConfigError(f"duplicate emotion entry {e.name!r}")
        declared.add(e.id)
        cluster = row.get("cluster", e.cluster)
        rank = row.get("intensity_rank", e.intensity_rank)
        if not isinstance(cluster, int) or cluster < 1:
            raise GraphConfigError(f"bad cluster for {e.name!r}: {cluster!r}")
        if not isinstance(rank, int) or rank < 0:
            raise GraphConfigError(f"bad intensity_rank for {e.name!r}: {rank!r}")
        clusters[e.id] = cluster
        ranks[e.id] = rank
    if len(declared) not in (0, NUM_EMOTIONS):
        missing = sorted(e.name for e in EMOTIONS if e.id not in declared)
        raise GraphConfigError(f"emotions list must cover all 28; missing {missing}")

    if "edges" in doc:
        edges = set()
        for pair in doc["edges"]:
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise GraphConfigError(f"bad edge entry {pair!r}")
            try:
                a, b = emotion_by_name(pair[0]), emotion_by_name(pair[1])
            except UnknownEmotionError as exc:
                raise GraphConfigError(str(exc)) from exc
            edges.add((a.id, b.id))
        g = TransitionGraph(tuple(clusters), tuple(ranks), frozenset(edges))
    else:
        g = TransitionGraph(
            tuple(clusters), tuple(ranks), _lowering_closure(clusters, ranks)
        )
    _validate(g)
    return g


def dump_graph(g: TransitionGraph) -> dict:
    """The graph as a config document; load_graph(dump_graph(g)) == g."""
    return {
        "emotions": [
            {"name": e.name, "cluster": g.clusters[e.id], "intensity_rank": g.ranks[e.id]}
            for e in EMOTIONS
        ],
        "edges": [
            [EMOTIONS[a].name, EMOTIONS[b].name]
            for a, b in sorted(g.edges)
        ],
    }


def graph_to_json(g: TransitionGraph) -> str:
    return json.dumps(dump_graph(g), indent=2) + "\n"


def targets_of(g: TransitionGraph, src: int) -> list[TransitionSuggestion]:
    """All suggestions reachable from ``src``: within-cluster hops ascending,
    ties by target id, the to-neutral hop always last."""
    within = []
    neutral = None
    for a, b in g.edges:
        if a != src:
            continue
        if b == NEUTRAL_ID:
            # neutral sits conceptually one rank below every rank-0 emotion
            neutral = TransitionSuggestion(b, g.ranks[src] + 1, "to-neutral")
        else:
            within.append(
                TransitionSuggestion(b, g.ranks[src] - g.ranks[b], "within-cluster lowering")
            )
    within.sort(key=lambda s: (s.hops, s.target))
    if neutral is not None:
        within.append(neutral)
    return within


def is_valid_transition(g: TransitionGraph, src: int, dst: int) -> bool:
    return (src, dst) in g.edges
