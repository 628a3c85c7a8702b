"""Surface-overlap metrics: tokenizer, kernels, corpus scores, oracle agreement."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emogradient import metrics
from emogradient.classify import EmotionLabel
from emogradient.metrics import (
    METRIC_NAMES,
    MetricValue,
    bleu,
    bleu_components,
    exact_match,
    gleu,
    meteor,
    pair_scores,
    rouge_l,
    rouge_n,
    score_corpus,
    tokenize,
)

import oracles


def toks(s):
    return tokenize(s)


def v(metric_value):
    assert isinstance(metric_value, MetricValue)
    assert metric_value.name in METRIC_NAMES
    return metric_value.value


# --- tokenizer ---------------------------------------------------------------


def test_tokenize_basic():
    assert tokenize("The cat sat.") == ["the", "cat", "sat", "."]


def test_tokenize_empty_and_space():
    assert tokenize("") == []
    assert tokenize("   \t ") == []


def test_tokenize_keeps_inner_apostrophes():
    assert tokenize("Don't stop") == ["don't", "stop"]


def test_tokenize_detaches_trailing_punctuation_in_order():
    assert tokenize("Really?!") == ["really", "?", "!"]
    assert tokenize("wait...") == ["wait", ".", ".", "."]


def test_tokenize_inner_punctuation_stays_attached():
    assert tokenize("a,b stays") == ["a,b", "stays"]
    assert tokenize("a,b, stays") == ["a,b", ",", "stays"]


# --- exact match -------------------------------------------------------------


def lab(eid, score=0.9):
    if eid is None:
        return EmotionLabel(None, None)
    return EmotionLabel(eid, score)


def test_exact_match_counts_equal_ids():
    pred = [lab(2), lab(3), lab(27)]
    tgt = [lab(2), lab(17), lab(27)]
    assert v(exact_match(pred, tgt)) == pytest.approx(2 / 3)


def test_exact_match_none_never_matches():
    assert v(exact_match([lab(None)], [lab(None)])) == 0.0
    assert v(exact_match([lab(None)], [lab(2)])) == 0.0
    assert v(exact_match([lab(2)], [lab(None)])) == 0.0


def test_exact_match_ignores_scores():
    assert v(exact_match([lab(2, 0.6)], [lab(2, 0.99)])) == 1.0


def test_exact_match_accepts_bare_ids():
    assert v(exact_match([2, None, 5], [2, 3, 5])) == pytest.approx(2 / 3)


def test_exact_match_empty_is_zero():
    assert v(exact_match([], [])) == 0.0


def test_exact_match_length_mismatch():
    with pytest.raises(ValueError):
        exact_match([lab(2)], [lab(2), lab(3)])


# --- hand fixtures -----------------------------------------------------------


def test_bleu_unigram_precision_fixture():
    # hyp "the the the the" vs ref "the cat": clipped unigram overlap is 1 of 4
    corpus = [(toks("the the the the"), toks("the cat"))]
    parts = bleu_components(corpus)
    assert parts["p1"] == pytest.approx(1 / 4, abs=1e-12)
    assert parts["p2"] == 0.0
    assert parts["bleu"] == 0.0  # unsmoothed: a zero order zeroes the product


def test_bleu_brevity_penalty_fixture():
    # c=2, r=3: BP = exp(1 - 3/2)
    corpus = [(toks("the cat"), toks("the cat sat"))]
    parts = bleu_components(corpus)
    assert parts["brevity_penalty"] == pytest.approx(math.exp(-0.5), abs=1e-12)


def test_bleu_no_penalty_when_longer():
    corpus = [(toks("the cat sat down"), toks("the cat"))]
    assert bleu_components(corpus)["brevity_penalty"] == 1.0


def test_bleu_identity_is_one():
    corpus = [(toks("the cat sat on the mat ."),) * 2]
    assert v(bleu(corpus)) == pytest.approx(1.0, abs=1e-12)


def test_bleu_smoothing_rescues_short_pairs():
    corpus = [(toks("the cat"), toks("the cat"))]
    assert v(bleu(corpus)) == 0.0
    assert v(bleu(corpus, smoothing=True)) > 0.0


def test_gleu_fixture():
    # matches 3, hyp n-grams 3, ref n-grams 6: min(1, 0.5) = 0.5
    corpus = [(toks("the cat"), toks("the cat sat"))]
    assert v(gleu(corpus)) == pytest.approx(0.5, abs=1e-12)


def test_rouge1_fixture():
    # P = 1, R = 2/3, F1 = 0.8
    corpus = [(toks("the cat"), toks("the cat sat"))]
    assert v(rouge_n(corpus, 1)) == pytest.approx(0.8, abs=1e-12)


def test_rouge_l_fixture():
    # LCS = 4 over |hyp| = 4 and |ref| = 6: P = 1, R = 2/3, F1 = 0.8
    corpus = [(toks("the cat on mat"), toks("the cat sat on the mat"))]
    assert v(rouge_l(corpus)) == pytest.approx(0.8, abs=1e-12)


def test_rouge_l_word_order_matters():
    corpus = [(["a", "b"], ["b", "a"])]
    # LCS length 1 against length-2 sides: F1 = 0.5
    assert v(rouge_l(corpus)) == pytest.approx(0.5, abs=1e-12)


def test_rouge_n_rejects_other_orders():
    with pytest.raises(ValueError):
        rouge_n([(["a"], ["a"])], 3)


def test_meteor_identity_values():
    # one aligned chunk over m identical tokens: 1 - 0.5 / m^3
    for m in range(1, 11):
        seq = [f"tok{i}" for i in range(m)]
        want = 1.0 - 0.5 / m**3
        assert v(meteor([(seq, seq)])) == pytest.approx(want, abs=1e-12)


def test_meteor_stem_stage():
    # "cats" matches "cat" only after stemming; one chunk, penalty 0.5
    assert v(meteor([(["cats"], ["cat"])])) == pytest.approx(0.5, abs=1e-12)


def test_meteor_no_match_is_zero():
    assert v(meteor([(["aaa"], ["bbb"])])) == 0.0


def test_meteor_recall_weighting():
    # m=1, P=1, R=1/2: Fmean = 10PR/(R+9P); one chunk over one match
    val = v(meteor([(["alpha"], ["alpha", "beta"])]))
    fmean = 10 * 1.0 * 0.5 / (0.5 + 9 * 1.0)
    assert val == pytest.approx(fmean * (1 - 0.5 * 1.0), abs=1e-12)


def test_empty_corpus_rejected_everywhere():
    for fn in (bleu, gleu, rouge_l, meteor):
        with pytest.raises(ValueError):
            fn([])
    with pytest.raises(ValueError):
        rouge_n([], 1)
    with pytest.raises(ValueError):
        score_corpus([])
    with pytest.raises(ValueError):
        bleu_components([])


def test_empty_sides_allowed_inside_corpus():
    corpus = [([], ["a", "b"]), (["a", "b"], ["a", "b"])]
    for fn in (gleu, rouge_l, meteor):
        assert 0.0 <= v(fn(corpus)) <= 1.0
    assert 0.0 <= v(rouge_n(corpus, 1)) <= 1.0
    assert 0.0 <= v(bleu(corpus)) <= 1.0


def test_score_corpus_matches_individual_functions():
    corpus = [
        (toks("the cat sat"), toks("the cat sat on the mat")),
        (toks("dogs run fast"), toks("a dog runs fast")),
    ]
    six = score_corpus(corpus)
    assert six.bleu == v(bleu(corpus))
    assert six.gleu == v(gleu(corpus))
    assert six.rouge1 == v(rouge_n(corpus, 1))
    assert six.rouge2 == v(rouge_n(corpus, 2))
    assert six.rougeL == v(rouge_l(corpus))
    assert six.meteor == v(meteor(corpus))


# --- properties and oracle agreement -----------------------------------------

words = st.sampled_from(
    ["the", "cat", "cats", "sat", "running", "run", "quickly", "happy", "a", "b"]
)
seqs = st.lists(words, min_size=0, max_size=8)
pairs = st.tuples(seqs, seqs)
corpora = st.lists(pairs, min_size=1, max_size=6)


@settings(max_examples=120, deadline=None)
@given(corpus=corpora)
def test_all_metrics_bounded(corpus):
    for fn in (bleu, gleu, rouge_l, meteor):
        assert 0.0 <= v(fn(corpus)) <= 1.0
    assert 0.0 <= v(rouge_n(corpus, 1)) <= 1.0
    assert 0.0 <= v(rouge_n(corpus, 2)) <= 1.0


@settings(max_examples=80, deadline=None)
@given(corpus=st.lists(pairs, min_size=2, max_size=6), seed=st.randoms())
def test_pair_order_does_not_matter(corpus, seed):
    shuffled = list(corpus)
    seed.shuffle(shuffled)
    for fn in (bleu, gleu, rouge_l, meteor):
        assert v(fn(corpus)) == pytest.approx(v(fn(shuffled)), abs=1e-12)
    assert v(rouge_n(corpus, 2)) == pytest.approx(v(rouge_n(shuffled, 2)), abs=1e-12)


@settings(max_examples=150, deadline=None)
@given(pair=pairs)
def test_singleton_fast_path_matches_corpus_path(pair):
    # pair_scores takes an inlined route; it must agree with the corpus
    # functions on every single-pair corpus
    ps = pair_scores(pair[0], pair[1])
    corpus = [pair]
    assert ps.bleu == pytest.approx(v(bleu(corpus)), abs=1e-12)
    assert ps.gleu == pytest.approx(v(gleu(corpus)), abs=1e-12)
    assert ps.rouge1 == pytest.approx(v(rouge_n(corpus, 1)), abs=1e-12)
    assert ps.rouge2 == pytest.approx(v(rouge_n(corpus, 2)), abs=1e-12)
    assert ps.rougeL == pytest.approx(v(rouge_l(corpus)), abs=1e-12)
    assert ps.meteor == pytest.approx(v(meteor(corpus)), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(corpus=corpora)
def test_oracle_agreement_on_random_corpora(corpus):
    assert v(bleu(corpus)) == pytest.approx(oracles.bleu_corpus(corpus), abs=1e-12)
    assert v(gleu(corpus)) == pytest.approx(oracles.gleu_corpus(corpus), abs=1e-12)
    assert v(rouge_n(corpus, 1)) == pytest.approx(
        oracles.rouge_n_corpus(corpus, 1), abs=1e-12
    )
    assert v(rouge_n(corpus, 2)) == pytest.approx(
        oracles.rouge_n_corpus(corpus, 2), abs=1e-12
    )
    assert v(rouge_l(corpus)) == pytest.approx(
        oracles.rouge_l_corpus(corpus), abs=1e-12
    )
    assert v(meteor(corpus)) == pytest.approx(
        oracles.meteor_corpus(corpus, stem=True), abs=1e-9
    )


@settings(max_examples=80, deadline=None)
@given(seq=st.lists(words, min_size=4, max_size=10))
def test_identity_maxes_every_metric(seq):
    corpus = [(seq, seq)]
    assert v(bleu(corpus)) == pytest.approx(1.0, abs=1e-12)
    assert v(gleu(corpus)) == pytest.approx(1.0, abs=1e-12)
    assert v(rouge_n(corpus, 1)) == pytest.approx(1.0, abs=1e-12)
    assert v(rouge_l(corpus)) == pytest.approx(1.0, abs=1e-12)
    assert v(meteor(corpus)) == pytest.approx(1.0 - 0.5 / len(seq) ** 3, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(a=seqs, b=seqs)
def test_lcs_symmetry_and_bounds(a, b):
    ab = metrics._lcs_len(tuple(a), tuple(b))
    assert ab == metrics._lcs_len(tuple(b), tuple(a))
    assert 0 <= ab <= min(len(a), len(b))
    assert ab == oracles.lcs_by_enumeration(a, b)


def test_metric_names_tuple():
    assert METRIC_NAMES == (
        "exact_match",
        "bleu",
        "gleu",
        "rouge1",
        "rouge2",
        "rougeL",
        "meteor",
    )
