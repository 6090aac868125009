"""
Tests for copy-noise injection and held-out splits
"""

import math
from collections import Counter

import pytest

from noise import COPY_INJECTED, DEFAULT_NOISE_GRID, ParallelCorpus, inject_copy_noise, split_holdout


def make_corpus(n: int) -> ParallelCorpus:
    return ParallelCorpus(pairs=tuple((f"source {i}", f"target {i}") for i in range(n)))


def test_parallel_corpus_validation():
    with pytest.raises(ValueError):
        ParallelCorpus(pairs=(("", "t"),))
    with pytest.raises(ValueError):
        ParallelCorpus(pairs=(("s", "t"),), provenance=(0, 1))
    corpus = make_corpus(3)
    assert len(corpus) == 3
    assert corpus.tags() == (0, 0, 0)


def test_zero_probability_is_identity():
    corpus = make_corpus(100)
    noised = inject_copy_noise(corpus, 0.0, seed=1)
    assert noised.pairs == corpus.pairs
    assert noised.num_injected() == 0


def test_full_probability_copies_everything():
    noised = inject_copy_noise(make_corpus(50), 1.0, seed=1)
    assert all(source == target for source, target in noised.pairs)
    assert noised.num_injected() == 50


def test_probability_out_of_range():
    for p in (-0.1, 1.5):
        with pytest.raises(ValueError):
            inject_copy_noise(make_corpus(5), p, seed=0)
    with pytest.raises(ValueError):
        inject_copy_noise(make_corpus(5), 0.5, seed=0, mode="poisson")


def test_binomial_calibration():
    n, p = 10000, 0.1
    corpus = make_corpus(n)
    noised = inject_copy_noise(corpus, p, seed=2024)
    sigma = math.sqrt(n * p * (1 - p))
    assert abs(noised.num_injected() - n * p) <= 3 * sigma

    for original, pair, tag in zip(corpus.pairs, noised.pairs, noised.tags()):
        if tag == COPY_INJECTED:
            assert pair == (original[0], original[0])
        else:
            assert pair == original


def test_noise_is_deterministic_and_chunk_consistent():
    corpus = make_corpus(2500)
    first = inject_copy_noise(corpus, 0.3, seed=5)
    assert first == inject_copy_noise(corpus, 0.3, seed=5)
    assert first != inject_copy_noise(corpus, 0.3, seed=6)
    # chunk boundaries only affect which generator draws a pair
    small_chunks = inject_copy_noise(corpus, 0.3, seed=5, chunk_size=1000)
    assert len(small_chunks) == len(corpus)


def test_tag_counts_follow_binomial_over_seeds():
    """Chi-square goodness of fit of per-seed counts against Binomial(20, 0.25), binned"""
    n, p, runs = 20, 0.25, 400
    counts = Counter(inject_copy_noise(make_corpus(n), p, seed=seed).num_injected() for seed in range(runs))
    bins = [(0, 2), (3, 3), (4, 4), (5, 5), (6, 6), (7, 8), (9, n)]
    statistic = 0.0
    for low, high in bins:
        probability = sum(math.comb(n, k) * p ** k * (1 - p) ** (n - k) for k in range(low, high + 1))
        observed = sum(counts[k] for k in range(low, high + 1))
        expected = runs * probability
        statistic += (observed - expected) ** 2 / expected
    # 6 degrees of freedom, 99.9th percentile
    assert statistic < 22.46


def test_exact_mode():
    noised = inject_copy_noise(make_corpus(1000), 0.1, seed=3, mode="exact")
    assert noised.num_injected() == 100


def test_existing_tags_kept_for_untouched_pairs():
    corpus = ParallelCorpus(pairs=(("a", "x"), ("b", "b")), provenance=(0, 1))
    assert inject_copy_noise(corpus, 0.0, seed=0).tags() == (0, 1)


def test_default_grid():
    assert DEFAULT_NOISE_GRID == (0.001, 0.005, 0.01, 0.05, 0.1, 0.25, 0.5)


def test_split_holdout_partition():
    corpus = make_corpus(1000)
    train, heldout = split_holdout(corpus, 100, seed=7)
    assert len(train) == 900 and len(heldout) == 100
    assert Counter(train.pairs) + Counter(heldout.pairs) == Counter(corpus.pairs)
    assert not Counter(heldout.pairs) - Counter(corpus.pairs)


def test_split_holdout_deterministic():
    corpus = make_corpus(50)
    assert split_holdout(corpus, 10, seed=1) == split_holdout(corpus, 10, seed=1)


def test_split_holdout_sizes():
    corpus = make_corpus(10)
    train, _ = split_holdout(corpus, 9, seed=0)
    assert len(train) == 1
    for size in (0, 10, 11):
        with pytest.raises(ValueError):
            split_holdout(corpus, size, seed=0)
