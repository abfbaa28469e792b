import math
import random

import pytest

from lexchoice.cooc import (
    PairStats,
    SignificanceThresholds,
    UndefinedStatisticError,
    WindowConfig,
    count_pairs,
    is_significant,
    merge_pair_counts,
    mutual_information,
    pair_key,
    read_pair_counts,
    t_score,
    write_pair_counts,
)
from lexchoice.corpus import CorpusConfig, build_vocabulary, ingest

from oracles import forward_pair_counts, quadratic_pair_counts, random_stream


def stream(text, threshold=100):
    cfg = CorpusConfig(stop_threshold=threshold)
    ts = ingest(text, cfg)
    vocab = build_vocabulary(ts, cfg)
    return ts, vocab


def test_count_pairs_k1():
    ts, vocab = stream("x/NN y/NN z/NN")
    counts = count_pairs(ts, vocab, WindowConfig(1))
    assert counts.pairs == {("x", "y"): 1, ("y", "z"): 1}
    assert counts.get("x", "z") == 0


def test_count_pairs_k2_reaches_further():
    ts, vocab = stream("x/NN y/NN z/NN")
    counts = count_pairs(ts, vocab, WindowConfig(2))
    assert counts.pairs == {("x", "y"): 1, ("y", "z"): 1, ("x", "z"): 1}


def test_stop_token_occupies_position_without_pairing():
    ts, vocab = stream("x/NN 1989/CD y/NN")
    counts = count_pairs(ts, vocab, WindowConfig(1))
    assert counts.pairs == {}
    counts2 = count_pairs(ts, vocab, WindowConfig(2))
    assert counts2.pairs == {("x", "y"): 1}


def test_self_pairs_not_counted():
    ts, vocab = stream("x/NN x/NN y/NN")
    counts = count_pairs(ts, vocab, WindowConfig(2))
    assert counts.pairs == {("x", "y"): 2}


def test_window_does_not_cross_sentences_by_default():
    ts, vocab = stream("x/NN\ny/NN")
    assert count_pairs(ts, vocab, WindowConfig(5)).pairs == {}
    crossed = count_pairs(ts, vocab, WindowConfig(5, cross_sentences=True))
    assert crossed.pairs == {("x", "y"): 1}


def test_counts_symmetric_by_construction():
    ts, vocab = stream("a/NN b/NN a/NN b/NN")
    counts = count_pairs(ts, vocab, WindowConfig(3))
    assert counts.get("a", "b") == counts.get("b", "a") == 4


def test_t_score_worked_value():
    p = PairStats(f_xy=16, f_x=100, f_y=200, total_tokens=100_000, half_width=4)
    assert p.expected == pytest.approx(1.6, abs=1e-12)
    assert t_score(p) == pytest.approx(3.6, abs=1e-12)


def test_t_score_zero_when_observed_equals_expected():
    # E = 10*100*2*5/1000 = 10 = f_xy
    p = PairStats(f_xy=10, f_x=10, f_y=100, total_tokens=1000, half_width=5)
    assert p.expected == pytest.approx(10.0)
    assert t_score(p) == pytest.approx(0.0, abs=1e-12)


def test_t_score_rare_pair_limit():
    p = PairStats(f_xy=1, f_x=1, f_y=1, total_tokens=10**9, half_width=4)
    assert t_score(p) == pytest.approx(1.0, abs=1e-6)


def test_mutual_information_worked_value():
    p = PairStats(f_xy=16, f_x=100, f_y=200, total_tokens=100_000, half_width=4)
    assert mutual_information(p) == pytest.approx(math.log2(10), abs=1e-12)


def test_mutual_information_zero_and_negative():
    p0 = PairStats(f_xy=10, f_x=10, f_y=100, total_tokens=1000, half_width=5)
    assert mutual_information(p0) == pytest.approx(0.0, abs=1e-12)
    p_neg = PairStats(f_xy=4, f_x=10, f_y=100, total_tokens=1000, half_width=5)
    assert mutual_information(p_neg) < 0


def test_statistics_undefined_for_unseen_pair():
    p = PairStats(f_xy=0, f_x=5, f_y=5, total_tokens=1000, half_width=4)
    with pytest.raises(UndefinedStatisticError):
        t_score(p)
    with pytest.raises(UndefinedStatisticError):
        mutual_information(p)
    assert not is_significant(p)


def test_is_significant_requires_both_measures():
    good = PairStats(f_xy=16, f_x=100, f_y=200, total_tokens=100_000, half_width=4)
    assert is_significant(good)  # t=3.6, MI=3.32 against 2.0/2.0 defaults
    # t = 50 but MI = 1 bit: high-volume pair only twice as frequent as chance
    lopsided = PairStats(f_xy=10_000, f_x=1_000, f_y=5_000, total_tokens=8_000, half_width=4)
    assert t_score(lopsided) > 2.0
    assert mutual_information(lopsided) == pytest.approx(1.0)
    assert not is_significant(lopsided)


def test_sign_agreement_of_t_and_mi():
    rng = random.Random(11)
    for _ in range(200):
        p = PairStats(
            f_xy=rng.randint(1, 50),
            f_x=rng.randint(1, 500),
            f_y=rng.randint(1, 500),
            total_tokens=rng.randint(1_000, 100_000),
            half_width=rng.choice([1, 4, 10, 50]),
        )
        t = t_score(p)
        mi = mutual_information(p)
        assert (t > 0) == (mi > 0) or p.f_xy == pytest.approx(p.expected)


def test_joint_count_bounded_by_marginals():
    rng = random.Random(31)
    for _ in range(5):
        ts, cfg = random_stream(rng, 600)
        vocab = build_vocabulary(ts, cfg)
        for k in (2, 6):
            counts = count_pairs(ts, vocab, WindowConfig(k))
            for (w1, w2), f_xy in counts.pairs.items():
                assert f_xy <= min(vocab.freq[w1], vocab.freq[w2]) * 2 * k


def test_window_monotonicity():
    rng = random.Random(3)
    ts, cfg = random_stream(rng, 500)
    vocab = build_vocabulary(ts, cfg)
    previous = None
    for k in (1, 2, 4, 8, 16):
        counts = count_pairs(ts, vocab, WindowConfig(k))
        if previous is not None:
            for key, value in previous.pairs.items():
                assert counts.get(*key) >= value
        previous = counts


@pytest.mark.parametrize("seed", range(6))
def test_quadratic_oracle_small_streams(seed):
    rng = random.Random(seed)
    ts, cfg = random_stream(rng, rng.randint(0, 300))
    vocab = build_vocabulary(ts, cfg)
    for k in (1, 3, 7):
        counts = count_pairs(ts, vocab, WindowConfig(k))
        assert counts.pairs == quadratic_pair_counts(ts, k)


def test_forward_oracle_with_cross_sentences():
    rng = random.Random(99)
    ts, cfg = random_stream(rng, 400)
    vocab = build_vocabulary(ts, cfg)
    counts = count_pairs(ts, vocab, WindowConfig(5, cross_sentences=True))
    assert counts.pairs == forward_pair_counts(ts, 5, cross_sentences=True)


def test_pair_counts_file_roundtrip(tmp_path, tiny_stream, tiny_vocab):
    counts = count_pairs(tiny_stream, tiny_vocab, WindowConfig(4))
    path = tmp_path / "pairs.tsv"
    write_pair_counts(counts, path)
    again = read_pair_counts(path, tiny_vocab)
    assert again == counts
    header = path.read_text().splitlines()[:2]
    assert header == [f"N={tiny_vocab.total_tokens}", "K=4"]


def test_pair_counts_file_deterministic(tmp_path, tiny_stream, tiny_vocab):
    counts = count_pairs(tiny_stream, tiny_vocab, WindowConfig(4))
    write_pair_counts(counts, tmp_path / "p1.tsv")
    write_pair_counts(counts, tmp_path / "p2.tsv")
    assert (tmp_path / "p1.tsv").read_bytes() == (tmp_path / "p2.tsv").read_bytes()


def test_read_pair_counts_rejects_mismatched_vocab(tmp_path, tiny_stream, tiny_vocab):
    counts = count_pairs(tiny_stream, tiny_vocab, WindowConfig(4))
    path = tmp_path / "pairs.tsv"
    write_pair_counts(counts, path)
    other_cfg = CorpusConfig(stop_threshold=100)
    other = build_vocabulary(ingest("one/NN two/NN", other_cfg), other_cfg)
    with pytest.raises(ValueError):
        read_pair_counts(path, other)


def test_merge_pair_counts_shards_equal_whole():
    text = "a/NN b/NN c/NN d/NN\nb/NN c/NN a/NN\nc/NN d/NN a/NN b/NN"
    ts, vocab = stream(text)
    whole = count_pairs(ts, vocab, WindowConfig(3))
    shards = []
    for sid in (0, 1, 2):
        shard = [t for t in ts if t.sentence_id == sid]
        shards.append(count_pairs(shard, vocab, WindowConfig(3)))
    merged = merge_pair_counts(shards)
    assert merged.pairs == whole.pairs
    reversed_merge = merge_pair_counts(list(reversed(shards)))
    assert reversed_merge.pairs == whole.pairs


def test_window_config_validation():
    with pytest.raises(ValueError):
        WindowConfig(0)


def test_thresholds_require_positive_t():
    with pytest.raises(ValueError):
        SignificanceThresholds(t_min=0.0)


def test_pair_key_orders():
    assert pair_key("b", "a") == ("a", "b")
    assert pair_key("a", "b") == ("a", "b")
