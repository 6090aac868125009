"""
Sentence-level BLEU with the Chen & Cherry (2014) smoothing methods

Scores are on the [0, 1] scale. Smoothing names follow the reference scorer:
    none  - no smoothing, any order with zero matches gives 0
    floor - zero-match precisions replaced by floor / total (method 1)
    add-k - k added to matches and totals for orders > 1 (method 2)
    exp   - successive halving for zero-match orders (method 3, NIST)

Clipped matches come from prepared n-gram profiles, so every sentence is
counted once per pool; the score itself is the reference scorer's
BLEU.compute_bleu with effective order.
"""

from dataclasses import dataclass
from typing import List, Sequence, Union

from sacrebleu.metrics import BLEU

from metrics.errors import UndefinedMetricError
from text.ngrams import WORD_ORDER, NGramProfile, word_ngrams
from text.tokenizer import TokenSeq, tokenize_13a

SMOOTHING_METHODS = ('none', 'floor', 'add-k', 'exp')
DEFAULT_FLOOR = 0.1
DEFAULT_ADD_K = 1.0


def check_smoothing(smoothing: str, floor: float, add_k: float):
    if smoothing not in SMOOTHING_METHODS:
        raise ValueError(f"Unknown BLEU smoothing '{smoothing}', expected one of {SMOOTHING_METHODS}")
    if floor <= 0:
        raise ValueError(f"BLEU floor must be positive, got {floor}")
    if add_k < 0:
        raise ValueError(f"BLEU add-k must be non-negative, got {add_k}")


@dataclass(frozen=True)
class PreparedBleu:
    """Per-sentence BLEU statistics reused across pairwise comparisons"""

    length: int
    profile: NGramProfile


def prepare_bleu(text: Union[str, TokenSeq], max_n: int = WORD_ORDER) -> PreparedBleu:
    seq = text if isinstance(text, TokenSeq) else tokenize_13a(text)
    return PreparedBleu(length=len(seq), profile=word_ngrams(seq, max_n))


def match_counts(hyp: PreparedBleu, ref: PreparedBleu) -> List[int]:
    """Clipped n-gram matches per order"""
    matches = []
    for order in range(1, hyp.profile.max_n + 1):
        hyp_counts = hyp.profile.counts(order)
        ref_counts = ref.profile.counts(order)
        matches.append(sum(min(count, ref_counts.get(gram, 0)) for gram, count in hyp_counts.items()))
    return matches


def compute_bleu(matches: Sequence[float],
                 totals: Sequence[float],
                 hyp_len: int,
                 ref_len: int,
                 smoothing: str = 'none',
                 floor: float = DEFAULT_FLOOR,
                 add_k: float = DEFAULT_ADD_K) -> float:
    """
    BLEU from sufficient statistics

    Orders with no hypothesis n-grams are dropped from the geometric mean
    (effective order), so identical short segments still score 1.
    """
    check_smoothing(smoothing, floor, add_k)
    if hyp_len == 0:
        return 0.0
    # all precisions 1 and no brevity penalty
    if hyp_len >= ref_len and all(m == t for m, t in zip(matches, totals)):
        return 1.0

    smooth_value = {'floor': floor, 'add-k': add_k}.get(smoothing)
    score = BLEU.compute_bleu(list(matches), list(totals), hyp_len, ref_len,
                              smooth_method=smoothing, smooth_value=smooth_value,
                              effective_order=True, max_ngram_order=len(matches))
    return min(1.0, score.score / 100)


def score_prepared_bleu(hyp: PreparedBleu, ref: PreparedBleu, smoothing: str = 'none',
                        floor: float = DEFAULT_FLOOR, add_k: float = DEFAULT_ADD_K) -> float:
    if ref.length == 0:
        raise UndefinedMetricError("BLEU is undefined for an empty reference")
    if hyp.length == 0:
        return 0.0
    totals = [hyp.profile.total(order) for order in range(1, hyp.profile.max_n + 1)]
    return compute_bleu(match_counts(hyp, ref), totals, hyp.length, ref.length,
                        smoothing=smoothing, floor=floor, add_k=add_k)


def sentence_bleu(hyp: Union[str, TokenSeq],
                  ref: Union[str, TokenSeq],
                  smoothing: str = 'none',
                  floor: float = DEFAULT_FLOOR,
                  add_k: float = DEFAULT_ADD_K) -> float:
    """
    Sentence-level BLEU (up to 4-grams) of one hypothesis against one reference

    Args:
        hyp: hypothesis, raw text or TokenSeq (raw text is 13a-tokenized)
        ref: reference, raw text or TokenSeq
        smoothing: one of none, floor, add-k, exp

    Returns:
        Score in [0, 1]

    Raises:
        UndefinedMetricError: empty reference
    """
    return score_prepared_bleu(prepare_bleu(hyp), prepare_bleu(ref), smoothing, floor, add_k)
