"""
Tests for length, token-frequency and pathology diagnostics
"""

from collections import Counter

import pytest
from hypothesis import given, strategies as st

from analysis import (
    PathologyReport, build_frequency_table, bucket_curve, copy_overlap, is_copy, is_hallucination,
    length_stats, pathology_report, token_probability_by_bucket
)
from analysis.frequency import OOV_BUCKET, training_distribution
from analysis.pathology import PathologyDetector
from mbr import SamplePool, decode, expected_utilities, utility_matrix
from metrics import UndefinedMetricError, resolve_utility, sentence_chrf

CHRF1 = resolve_utility("chrf-1")


# length statistics

def test_length_stats_means():
    table = length_stats({"toy": [["a", "b"], ["a", "b", "c", "d"]], "empty": [""]})
    assert table.rows == {"toy": 3.0, "empty": 0.0}
    assert table.counts == {"toy": 2, "empty": 1}


def test_length_stats_tokenizes_raw_text_and_ratios():
    table = length_stats({"reference": ["Hello, world!"], "system": ["Hello"]})
    assert table.rows["reference"] == 4.0
    assert table.ratio_to_reference()["system"] == pytest.approx(0.25)
    assert [row["system"] for row in table.to_rows()] == ["reference", "system"]


def test_length_stats_rejects_empty_corpus():
    with pytest.raises(ValueError):
        length_stats({"nothing": []})


# token frequency

def test_frequency_table_counts_and_buckets():
    table = build_frequency_table(["a a a b"])
    assert table.token_counts == Counter({"a": 3, "b": 1})
    assert table.bucket_of("a") == table.bucket_of("b") == 0
    assert table.label_of(0) == "[1,10)"
    assert table.bucket_of("never-seen") == OOV_BUCKET


def test_frequency_bucket_boundary_is_left_closed():
    table = build_frequency_table(["x " * 10 + "y"])
    assert table.token_counts["x"] == 10
    assert table.label_of(table.bucket_of("x")) == "[10,100)"
    assert table.label_of(table.bucket_of("y")) == "[1,10)"


def test_frequency_log2_scheme():
    table = build_frequency_table(["a a a b"], bucket_scheme="log2")
    assert table.labels() == ["[1,2)", "[2,4)", "[4,inf)", OOV_BUCKET]
    assert table.bucket_of("a") == 1


def test_frequency_buckets_cover_every_count():
    table = build_frequency_table(["w " * 250 + "v " * 12 + "u"])
    assert table.buckets[0][0] == 1 and table.buckets[-1][1] is None
    for (_, high), (low, _) in zip(table.buckets, table.buckets[1:]):
        assert high == low
    for count in (1, 9, 10, 99, 100, 250, 10 ** 6):
        table.bucket_index(count)


def test_frequency_errors():
    with pytest.raises(ValueError):
        build_frequency_table([])
    with pytest.raises(ValueError):
        build_frequency_table(["a"], bucket_scheme="linear")
    with pytest.raises(ValueError):
        token_probability_by_bucket(build_frequency_table(["a"]), [""])


def test_token_probability_self_consistency():
    training = ["the cat sat on the mat", "the dog sat", "a rare word appears once"] * 4
    table = build_frequency_table(training)
    assert token_probability_by_bucket(table, training) == training_distribution(table)


def test_token_probability_most_frequent_token_only():
    table = build_frequency_table(["the " * 12 + "cat dog"])
    probabilities = token_probability_by_bucket(table, ["the the the"])
    assert probabilities[table.label_of(table.bucket_of("the"))] == 1.0
    assert sum(probabilities.values()) == pytest.approx(1.0)


def test_token_probability_counting_oracle():
    table = build_frequency_table(["x " * 15 + "y y z"])
    corpus = ["x y q", "x x z q"]
    # x: [10,100); y, z: [1,10); q: oov
    probabilities = token_probability_by_bucket(table, corpus)
    assert probabilities == {"[1,10)": 2 / 7, "[10,100)": 3 / 7, "[100,inf)": 0.0, OOV_BUCKET: 2 / 7}


def test_bucket_curve_mean_and_std():
    table = build_frequency_table(["x " * 15 + "y"])
    curve = bucket_curve(table, [["x x"], ["y y"]])
    assert curve["[10,100)"] == {"mean": 0.5, "std": 0.5}
    assert curve["[1,10)"] == {"mean": 0.5, "std": 0.5}


# hallucinations and copies

def test_is_hallucination_basic():
    assert not is_hallucination("the cat", "the cat")
    assert is_hallucination("xyz", "abc")
    with pytest.raises(UndefinedMetricError):
        is_hallucination("abc", "")


def test_is_hallucination_near_threshold():
    """A single shared character against a reference of L distinct characters scores 5 / (6 (4L + 1))"""
    reference_20 = "abcdefghijklmnopqrst"
    reference_21 = reference_20 + "u"
    assert sentence_chrf("a", reference_20) == pytest.approx(5 / 486, abs=1e-12)
    assert not is_hallucination("a", reference_20)
    assert sentence_chrf("a", reference_21) == pytest.approx(5 / 510, abs=1e-12)
    assert is_hallucination("a", reference_21)


def test_is_copy_basic():
    assert is_copy("the cat sat", "the cat sat")
    assert not is_copy("a b", "c d")
    nine = " ".join(f"t{i}" for i in range(9))
    ten = nine + " t9"
    assert copy_overlap(nine, ten) == pytest.approx(0.9)
    assert not is_copy(nine, ten)
    with pytest.raises(UndefinedMetricError):
        is_copy("a", "")


def test_copy_overlap_anchor_mode():
    assert copy_overlap("a b", "a b c d", mode="anchor") == 0.5
    assert copy_overlap("a b", "a b c d", mode="jaccard") == 0.5
    assert copy_overlap("a b x y z", "a b", mode="anchor") == 1.0
    with pytest.raises(ValueError):
        copy_overlap("a", "a", mode="dice")


words = st.lists(st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=6).map(" ".join)


@given(words, words, st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1))
def test_is_copy_symmetric_and_monotone(hyp, anchor, low, high):
    assert is_copy(hyp, anchor) == is_copy(anchor, hyp)
    low, high = min(low, high), max(low, high)
    if is_copy(hyp, anchor, threshold=high):
        assert is_copy(hyp, anchor, threshold=low)


# pathology reports

def _decoded(pools):
    results = [decode(pool, CHRF1) for pool in pools]
    matrices = [utility_matrix(pool, CHRF1) for pool in pools]
    return results, matrices


def test_hallucination_has_minimal_utility_and_is_not_selected():
    pool = SamplePool(id="p1", source="src", reference="the cat sat",
                      samples=("the cat sat", "the cat sat down", "a cat sat", "xyz qqq"))
    results, matrices = _decoded([pool])
    utilities = expected_utilities(matrices[0])
    assert utilities.argmin() == 3 and sorted(utilities)[0] < sorted(utilities)[1]

    report = pathology_report([pool], results, matrices, "hallucination")
    assert isinstance(report, PathologyReport)
    assert report.flagged_rate_in_pools == 0.25
    assert report.flagged_rate_in_selections == 0.0
    assert report.mean_utility_flagged == pytest.approx(utilities[3])
    assert report.num_samples == 4 and report.num_pools == 1


def test_report_with_nothing_flagged():
    pool = SamplePool(id="p", source="src", reference="one two three", samples=("four five", "six seven"))
    results, matrices = _decoded([pool])
    report = pathology_report([pool], results, matrices, "copy")
    assert report.flagged_rate_in_pools == 0.0
    assert report.flagged_rate_in_selections == 0.0
    assert report.mean_utility_flagged is None
    assert report.to_dict()["mean_utility_flagged"] is None


def test_report_with_everything_flagged():
    pools = [SamplePool(id=f"p{i}", source="s", reference="a b c", samples=("a b c", "c b a", "a  b c"),
                        beam=("a b c",)) for i in range(3)]
    results, matrices = _decoded(pools)
    report = pathology_report(pools, results, matrices, "copy")
    assert report.flagged_rate_in_pools == 1.0
    assert report.flagged_rate_in_selections == 1.0
    assert report.flagged_rate_in_beam == 1.0
    assert report.mean_utility_flagged == report.mean_utility_all


def test_copy_report_against_source_anchor():
    pool = SamplePool(id="p", source="das ist gut", reference="that is good",
                      samples=("das ist gut", "that is good", "this is good"))
    results, matrices = _decoded([pool])
    by_reference = pathology_report([pool], results, matrices, "copy")
    by_source = pathology_report([pool], results, matrices, "copy",
                                 detector=PathologyDetector("copy", copy_anchor="source"))
    assert by_reference.num_flagged_samples == 1
    assert by_source.num_flagged_samples == 1
    assert by_source.flagged_rate_in_pools == pytest.approx(1 / 3)


def test_report_uses_subsampled_matrices():
    pool = SamplePool(id="p", source="s", reference="a b", samples=tuple(f"a b {i}" for i in range(10)))
    result = decode(pool, CHRF1, subsample=4, seed=3)
    matrix = utility_matrix(pool.subpool(result.sample_indices), CHRF1)
    report = pathology_report([pool], [result], [matrix], "hallucination")
    assert report.num_samples == 4


def test_report_rejects_misaligned_inputs():
    pools = [SamplePool(id="a", source="s", reference="x", samples=("x",)),
             SamplePool(id="b", source="s", reference="y", samples=("y",))]
    results, matrices = _decoded(pools)
    with pytest.raises(ValueError):
        pathology_report(pools, results[:1], matrices, "copy")
    with pytest.raises(ValueError):
        pathology_report(pools, list(reversed(results)), matrices, "copy")
    with pytest.raises(ValueError):
        pathology_report(pools, results, matrices, "noise")


def test_hallucination_report_needs_references():
    pool = SamplePool(id="p", source="s", samples=("x",))
    results, matrices = _decoded([pool])
    with pytest.raises(ValueError, match="reference"):
        pathology_report([pool], results, matrices, "hallucination")
