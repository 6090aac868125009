"""
Sentence-level chrF (character n-gram F-score)

Whitespace is removed and character orders 1..6 are averaged. Orders where
neither side has n-grams are skipped; orders where only one side is empty
count with zero precision and recall. The reference scorer's CHRF instead
averages only over orders present on both sides, which scores 'cat'
against 'cats' at chrF2 = 115/167 where this rule gives 345/668, so the
sentence-level statistics are kept here and corpus chrF (metrics.corpus)
is left to the scorer.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from metrics.errors import UndefinedMetricError
from text.ngrams import CHAR_ORDER, NGramProfile, char_ngrams

DEFAULT_BETA = 2.0


@dataclass(frozen=True)
class PreparedChrf:
    profile: NGramProfile

    @property
    def is_empty(self) -> bool:
        return self.profile.is_empty()


def prepare_chrf(text: str, order: int = CHAR_ORDER, include_space: bool = False) -> PreparedChrf:
    return PreparedChrf(profile=char_ngrams(text, order, include_space))


def chrf_statistics(hyp: PreparedChrf, ref: PreparedChrf) -> List[Tuple[int, int, int]]:
    """(hypothesis n-grams, reference n-grams, common n-grams) per order"""
    statistics = []
    for order in range(1, hyp.profile.max_n + 1):
        hyp_counts = hyp.profile.counts(order)
        ref_counts = ref.profile.counts(order)
        if len(hyp_counts) > len(ref_counts):
            small, large = ref_counts, hyp_counts
        else:
            small, large = hyp_counts, ref_counts
        common = sum(min(count, large.get(gram, 0)) for gram, count in small.items())
        statistics.append((hyp.profile.total(order), ref.profile.total(order), common))
    return statistics


def average_precision_recall(statistics: Sequence[Tuple[int, int, int]]) -> Tuple[float, float]:
    precision = 0.0
    recall = 0.0
    effective_order = 0
    for hyp_total, ref_total, common in statistics:
        if hyp_total == 0 and ref_total == 0:
            continue
        effective_order += 1
        if hyp_total > 0:
            precision += common / hyp_total
        if ref_total > 0:
            recall += common / ref_total

    if effective_order == 0:
        return 0.0, 0.0
    return precision / effective_order, recall / effective_order


def f_beta(precision: float, recall: float, beta: float) -> float:
    beta_sq = beta ** 2
    denominator = beta_sq * precision + recall
    if denominator == 0:
        return 0.0
    return min(1.0, (1 + beta_sq) * (precision * recall) / denominator)


def score_prepared_chrf(hyp: PreparedChrf, ref: PreparedChrf, beta: float = DEFAULT_BETA) -> float:
    if beta <= 0:
        raise ValueError(f"chrF beta must be positive, got {beta}")
    if ref.is_empty:
        raise UndefinedMetricError("chrF is undefined for an empty reference")
    if hyp.is_empty:
        return 0.0
    precision, recall = average_precision_recall(chrf_statistics(hyp, ref))
    return f_beta(precision, recall, beta)


def sentence_chrf(hyp: str, ref: str, beta: float = DEFAULT_BETA,
                  order: int = CHAR_ORDER, include_space: bool = False) -> float:
    """
    chrF of one hypothesis against one reference

    Args:
        hyp: hypothesis text
        ref: reference text (must be nonempty after whitespace removal)
        beta: recall weight; beta > 1 favours recall, beta < 1 precision

    Returns:
        Score in [0, 1]
    """
    return score_prepared_chrf(prepare_chrf(hyp, order, include_space),
                               prepare_chrf(ref, order, include_space), beta)
