"""Corpus pipeline: ingest formats, labeling, drop rules, splits, export."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emogradient.classify import NO_LABEL, FixedClassifier, LexiconClassifier
from emogradient.corpus import (
    CorpusError,
    FilterStats,
    PairRecord,
    PresplitPolicy,
    RandomSplitPolicy,
    corpus_stats,
    export,
    filter_pairs,
    ingest,
    label_pairs,
    record_to_dict,
    restrict_to_graph,
    split_pairs,
    swap_for_limited_data,
)
from emogradient.errors import BackendUnavailableError
from emogradient.graph import build_default

from conftest import fixed_for, label, record


# --- ingest: PAWS ------------------------------------------------------------


def test_ingest_paws(tmp_path):
    p = tmp_path / "paws.tsv"
    p.write_text(
        "id\tsentence1\tsentence2\tlabel\n"
        "101\tThe cat sat here.\tHere sat the cat.\t1\n"
        "102\tUnrelated text.\tTotally different.\t0\n"
        "103\tShort row only\t1\n"
        "104\tBad label row\tother side\tmaybe\n"
        "105\tSecond good pair.\tA second good pair.\t1\n",
        encoding="utf-8",
    )
    records, skipped = ingest(str(p), "paws")
    assert [r.id for r in records] == ["paws-101", "paws-105"]
    assert records[0].source == "The cat sat here."
    assert records[0].target == "Here sat the cat."
    assert records[0].origin == "paws"
    assert records[0].split == "unsplit"
    assert skipped == 2  # short row + bad label; label-0 rows are not malformed


def test_ingest_paws_without_header(tmp_path):
    p = tmp_path / "paws.tsv"
    p.write_text("7\ta b\tb a\t1\n", encoding="utf-8")
    records, skipped = ingest(str(p), "paws")
    assert len(records) == 1 and skipped == 0


def test_ingest_split_tagging(tmp_path):
    p = tmp_path / "paws.tsv"
    p.write_text("7\ta b\tb a\t1\n", encoding="utf-8")
    records, _ = ingest(str(p), "paws", split="test")
    assert records[0].split == "test"


# --- ingest: MRPC -------------------------------------------------------------


def test_ingest_mrpc(tmp_path):
    p = tmp_path / "mrpc.tsv"
    p.write_text(
        "Quality\t#1 ID\t#2 ID\t#1 String\t#2 String\n"
        "1\t11\t12\tHe said hello.\tHello was said by him.\n"
        "0\t13\t14\tNothing alike.\tCompletely different.\n"
        "1\t15\t16\tGood pair two.\tSecond good pair.\n"
        "oops\t17\t18\tBad quality.\trow\n",
        encoding="utf-8",
    )
    records, skipped = ingest(str(p), "mrpc")
    assert [r.id for r in records] == ["mrpc-11-12", "mrpc-15-16"]
    assert records[0].origin == "mrpc"
    assert skipped == 1


# --- ingest: QQP --------------------------------------------------------------


def test_ingest_qqp_tsv(tmp_path):
    p = tmp_path / "qqp.tsv"
    p.write_text(
        "id\tqid1\tqid2\tquestion1\tquestion2\tis_duplicate\n"
        "21\t1\t2\tHow do I cook rice?\tWhat is the way to cook rice?\t1\n"
        "22\t3\t4\tWhere is Paris?\tWho is Paris?\t0\n",
        encoding="utf-8",
    )
    records, skipped = ingest(str(p), "qqp")
    assert [r.id for r in records] == ["qqp-21"]
    assert skipped == 0


def test_ingest_qqp_csv_with_quotes(tmp_path):
    p = tmp_path / "qqp.csv"
    p.write_text(
        'id,qid1,qid2,question1,question2,is_duplicate\n'
        '31,5,6,"How, exactly, does it work?","How does it work, exactly?",1\n'
        '32,7,8,broken row,1\n',
        encoding="utf-8",
    )
    records, skipped = ingest(str(p), "qqp")
    assert [r.id for r in records] == ["qqp-31"]
    assert records[0].source == "How, exactly, does it work?"
    assert skipped == 1


# --- ingest: Twitter-URL -------------------------------------------------------


def test_ingest_twitter_votes_and_pwi(tmp_path):
    p = tmp_path / "twitter.tsv"
    p.write_text(
        "so excited for tonight\tcannot wait for tonight\t(4, 6)\n"
        "the game was great\twhat a great game\t0.91\n"
        "only two columns\there\n"
        "bad votes\there too\t(7, 6)\n"
        "bad pwi\there three\t1.5\n"
        "bad pwi nan\there four\tnan\n",
        encoding="utf-8",
    )
    records, skipped = ingest(str(p), "twitter-url")
    assert len(records) == 2
    assert records[0].rater_votes == (4, 6)
    assert records[0].pwi is None
    assert records[1].pwi == pytest.approx(0.91)
    assert records[1].rater_votes is None
    assert records[0].origin == "twitter-url"
    assert skipped == 4


# --- ingest: generic JSONL -----------------------------------------------------


def test_ingest_generic_round_trip(tmp_path):
    records = [
        record("g-1", 'He said "stop".', "Line with\nnewline", "anger", "annoyance"),
        record("g-2", "plain", "pair", pwi=0.8, rater_votes=(3, 4)),
        record("g-3", "unlabeled", "pair two"),
    ]
    path = tmp_path / "corpus.jsonl"
    assert export(records, str(path)) == 3
    again, skipped = ingest(str(path), "generic")
    assert skipped == 0
    assert again == records


def test_export_is_byte_stable(tmp_path):
    records = [record("g-1", "a b", "b a", "anger", "annoyance", pwi=0.5)]
    p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    export(records, str(p1))
    again, _ = ingest(str(p1), "generic")
    export(again, str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_export_canonical_field_order(tmp_path):
    p = tmp_path / "c.jsonl"
    export([record("g-1", "a", "b", "anger", "annoyance")], str(p))
    doc = json.loads(p.read_text(encoding="utf-8"))
    assert list(doc.keys()) == [
        "id", "source", "target", "source_emotion", "target_emotion",
        "pwi", "rater_votes", "origin", "split",
    ]
    assert doc["source_emotion"] == {"id": 2, "score": 0.9}
    assert doc["pwi"] is None


def test_ingest_generic_skips_garbage_lines(tmp_path):
    p = tmp_path / "bad.jsonl"
    p.write_text(
        '{"id": "ok", "source": "a", "target": "b"}\n'
        "not json at all\n"
        '{"id": "missing-target", "source": "a"}\n',
        encoding="utf-8",
    )
    records, skipped = ingest(str(p), "generic")
    assert [r.id for r in records] == ["ok"]
    assert skipped == 2


def test_ingest_unknown_format_and_missing_file(tmp_path):
    with pytest.raises(CorpusError):
        ingest(str(tmp_path / "x.tsv"), "silly-format")
    with pytest.raises(CorpusError):
        ingest(str(tmp_path / "not-there.tsv"), "paws")


# --- PairRecord validation ------------------------------------------------------


def test_record_validation():
    with pytest.raises(ValueError):
        record("r", "", "target")
    with pytest.raises(ValueError):
        record("r", "source", "")
    with pytest.raises(ValueError):
        record("r", "a", "b", pwi=1.5)
    with pytest.raises(ValueError):
        record("r", "a", "b", rater_votes=(5, 4))
    with pytest.raises(ValueError):
        record("r", "a", "b", rater_votes=(1, 0))
    with pytest.raises(ValueError):
        record("r", "a", "b", origin="unknown")
    with pytest.raises(ValueError):
        record("r", "a", "b", split="validation")


# --- labeling -------------------------------------------------------------------


def test_label_pairs_with_fixed_classifier():
    records = [record("r1", "src one", "tgt one"), record("r2", "src two", "tgt two")]
    clf = fixed_for(
        {"src one": "anger", "tgt one": "annoyance", "src two": "joy", "tgt two": "joy"}
    )
    out = label_pairs(records, clf)
    assert [r.id for r in out] == ["r1", "r2"]
    assert out[0].source_emotion == label("anger")
    assert out[0].target_emotion == label("annoyance")
    assert out[1].source_emotion.emotion == out[1].target_emotion.emotion


def test_label_pairs_unknown_text_gets_blank_label():
    out = label_pairs([record("r1", "mystery", "texts")], FixedClassifier({}))
    assert out[0].source_emotion == NO_LABEL
    assert out[0].target_emotion == NO_LABEL


def test_label_pairs_empty_stream():
    assert label_pairs([], LexiconClassifier()) == []


def test_label_pairs_error_carries_record_ids():
    class Broken(LexiconClassifier):
        def classify_scores(self, texts):
            raise BackendUnavailableError("backend is down")

    with pytest.raises(BackendUnavailableError, match="r-xyz"):
        label_pairs([record("r-xyz", "a", "b")], Broken())


def test_label_pairs_respects_threshold():
    clf = FixedClassifier({"weak": {"anger": 0.55}})
    strong = label_pairs([record("r", "weak", "weak")], clf, threshold=0.5)
    weak = label_pairs([record("r", "weak", "weak")], clf, threshold=0.6)
    assert strong[0].source_emotion.emotion == 2
    assert weak[0].source_emotion == NO_LABEL


# --- filter rules ----------------------------------------------------------------


def bucket_corpus():
    return [
        record("keep-1", "a", "b", "anger", "annoyance"),
        record("blank-1", "a", "b", None, "annoyance"),
        record("blank-2", "a", "b", "anger", None),
        record("nn-1", "a", "b", "neutral", "neutral"),
        record("match-1", "a", "b", "joy", "joy"),
        record("pwi-1", "a", "b", "anger", "annoyance", pwi=0.70),
        record("minority-1", "a", "b", "anger", "annoyance", rater_votes=(2, 6)),
        record("keep-2", "a", "b", "fear", "nervousness", pwi=0.95, rater_votes=(5, 6)),
    ]


def test_filter_buckets_and_conservation():
    kept, stats = filter_pairs(bucket_corpus(), pwi_threshold=0.8, require_majority=True)
    assert [r.id for r in kept] == ["keep-1", "keep-2"]
    assert stats.input_count == 8
    assert stats.kept_count == 2
    assert stats.dropped_blank_emotion == 2
    assert stats.dropped_neutral_neutral == 1
    assert stats.dropped_matching_emotion == 1
    assert stats.dropped_pwi == 1
    assert stats.dropped_rater_minority == 1


def test_filter_rules_off_by_default():
    kept, stats = filter_pairs(bucket_corpus())
    # without the optional rules, pwi and votes do not drop anything
    assert {r.id for r in kept} == {"keep-1", "keep-2", "pwi-1", "minority-1"}
    assert stats.dropped_pwi == 0
    assert stats.dropped_rater_minority == 0


def test_filter_first_rule_wins():
    # violates both the majority rule and matching emotions; counted once,
    # at the earlier rule
    r = record("both", "a", "b", "joy", "joy", rater_votes=(1, 6))
    _, stats = filter_pairs([r], require_majority=True)
    assert stats.dropped_rater_minority == 1
    assert stats.dropped_matching_emotion == 0


def test_filter_tie_votes_are_minority():
    r = record("tie", "a", "b", "anger", "annoyance", rater_votes=(3, 6))
    kept, stats = filter_pairs([r], require_majority=True)
    assert kept == []
    assert stats.dropped_rater_minority == 1


def test_filter_pwi_boundary_is_kept():
    r = record("edge", "a", "b", "anger", "annoyance", pwi=0.8)
    kept, _ = filter_pairs([r], pwi_threshold=0.8)
    assert kept == [r]


def test_filter_missing_pwi_passes_the_cutoff():
    r = record("nopwi", "a", "b", "anger", "annoyance")
    kept, stats = filter_pairs([r], pwi_threshold=0.99)
    assert kept == [r]
    assert stats.dropped_pwi == 0


def test_filter_is_idempotent():
    kept, _ = filter_pairs(bucket_corpus(), pwi_threshold=0.8, require_majority=True)
    again, stats = filter_pairs(kept, pwi_threshold=0.8, require_majority=True)
    assert again == kept
    assert stats.kept_count == stats.input_count


def test_filter_stats_conservation_guard():
    with pytest.raises(ValueError):
        FilterStats(input_count=5, kept_count=1, dropped_blank_emotion=1)
    FilterStats(input_count=2, kept_count=1, dropped_blank_emotion=1)


def test_pwi_thresholds_shrink_kept_sets():
    records = [
        record(f"r{i}", "a", "b", "anger", "annoyance", pwi=p)
        for i, p in enumerate([0.75, 0.78, 0.79, 0.80, 0.81, 0.82, 0.83, 0.90])
    ]
    kept_sets = []
    for t in (0.775, 0.8, 0.825):
        kept, _ = filter_pairs(records, pwi_threshold=t)
        kept_sets.append({r.id for r in kept})
    assert kept_sets[0] > kept_sets[1] > kept_sets[2]


# --- splits ----------------------------------------------------------------------


def many_records(n):
    return [record(f"r{i:03d}", f"src {i}", f"tgt {i}") for i in range(n)]


def test_random_split_counts_and_partition():
    records = many_records(100)
    train, test = split_pairs(records, RandomSplitPolicy(ratio=0.75, seed=7))
    assert len(train) == 75 and len(test) == 25
    assert {r.id for r in train} | {r.id for r in test} == {r.id for r in records}
    assert {r.id for r in train} & {r.id for r in test} == set()
    assert all(r.split == "train" for r in train)
    assert all(r.split == "test" for r in test)


def test_random_split_floor_rounding():
    train, test = split_pairs(many_records(10), RandomSplitPolicy(ratio=0.78, seed=1))
    assert len(train) == 7 and len(test) == 3


def test_random_split_is_deterministic():
    a = split_pairs(many_records(40), RandomSplitPolicy(seed=42))
    b = split_pairs(many_records(40), RandomSplitPolicy(seed=42))
    c = split_pairs(many_records(40), RandomSplitPolicy(seed=43))
    assert a == b
    assert a != c


def test_presplit_honors_tags():
    records = [
        record("a", "x", "y", split="train"),
        record("b", "x", "y", split="test"),
        record("c", "x", "y", split="train"),
    ]
    train, test = split_pairs(records, PresplitPolicy())
    assert [r.id for r in train] == ["a", "c"]
    assert [r.id for r in test] == ["b"]


def test_presplit_rejects_unsplit_records():
    records = [record("a", "x", "y", split="train"), record("b", "x", "y")]
    with pytest.raises(CorpusError, match="unsplit"):
        split_pairs(records, PresplitPolicy())


def test_bad_ratio_rejected():
    with pytest.raises(ValueError):
        RandomSplitPolicy(ratio=0.0)
    with pytest.raises(ValueError):
        RandomSplitPolicy(ratio=1.0)


def test_swap_is_a_pure_involution():
    train, test = many_records(6)[:4], many_records(6)[4:]
    s_train, s_test = swap_for_limited_data(train, test)
    assert (s_train, s_test) == (test, train)
    back = swap_for_limited_data(s_train, s_test)
    assert back == (train, test)
    assert swap_for_limited_data([], train) == (list(train), [])


# --- graph restriction -------------------------------------------------------------


def test_restrict_keeps_only_graph_edges():
    g = build_default()
    records = [
        record("valid-1", "a", "b", "anger", "annoyance"),
        record("valid-2", "a", "b", "anger", "neutral"),
        record("raising", "a", "b", "annoyance", "anger"),
        record("cross", "a", "b", "joy", "sadness"),
        record("blank", "a", "b", None, "anger"),
    ]
    kept, fraction = restrict_to_graph(records, g)
    assert [r.id for r in kept] == ["valid-1", "valid-2"]
    assert fraction == pytest.approx(2 / 5)


def test_restrict_empty_input_convention():
    kept, fraction = restrict_to_graph([], build_default())
    assert kept == []
    assert fraction == 1.0


# --- stats ---------------------------------------------------------------------------


def test_corpus_stats_summary():
    records = [
        record("a", "x", "y", "anger", "annoyance", origin="paws", split="train"),
        record("b", "x", "y", origin="paws", split="test"),
        record("c", "x", "y", "joy", "neutral", pwi=0.9, origin="qqp"),
        record("d", "x", "y", rater_votes=(3, 4), origin="twitter-url"),
    ]
    stats = corpus_stats(records)
    assert stats["total"] == 4
    assert stats["by_origin"] == {"paws": 2, "qqp": 1, "twitter-url": 1}
    assert stats["by_split"] == {"test": 1, "train": 1, "unsplit": 2}
    assert stats["labeled_both"] == 2
    assert stats["with_pwi"] == 1
    assert stats["with_rater_votes"] == 1


# --- properties ----------------------------------------------------------------------


emotion_names = st.sampled_from(["anger", "annoyance", "joy", "neutral", None])


@settings(max_examples=60, deadline=None)
@given(
    data=st.lists(
        st.tuples(
            emotion_names,
            emotion_names,
            st.one_of(st.none(), st.floats(0.0, 1.0, allow_nan=False)),
        ),
        min_size=0,
        max_size=30,
    ),
    pwi_threshold=st.one_of(st.none(), st.floats(0.1, 0.9)),
    require_majority=st.booleans(),
)
def test_filter_conservation_property(data, pwi_threshold, require_majority):
    records = [
        record(f"r{i}", "s", "t", src, tgt, pwi=pwi)
        for i, (src, tgt, pwi) in enumerate(data)
    ]
    kept, stats = filter_pairs(
        records, pwi_threshold=pwi_threshold, require_majority=require_majority
    )
    assert stats.input_count == len(records)
    assert stats.kept_count == len(kept)
    again, stats2 = filter_pairs(
        kept, pwi_threshold=pwi_threshold, require_majority=require_majority
    )
    assert again == kept
    assert stats2.kept_count == stats2.input_count


def test_record_to_dict_votes_as_list():
    d = record_to_dict(record("r", "a", "b", rater_votes=(3, 4)))
    assert d["rater_votes"] == [3, 4]
