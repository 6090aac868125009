"""
Unigram F1 over 13a tokens (clipped token overlap)
"""

from collections import Counter
from dataclasses import dataclass
from typing import Union

from metrics.errors import UndefinedMetricError
from text.tokenizer import TokenSeq, tokenize_13a


@dataclass(frozen=True)
class PreparedUnigram:
    length: int
    counts: Counter


def prepare_unigram(text: Union[str, TokenSeq]) -> PreparedUnigram:
    seq = text if isinstance(text, TokenSeq) else tokenize_13a(text)
    return PreparedUnigram(length=len(seq), counts=Counter(seq.tokens))


def score_prepared_unigram(hyp: PreparedUnigram, ref: PreparedUnigram) -> float:
    if ref.length == 0:
        raise UndefinedMetricError("Unigram F1 is undefined for an empty reference")
    if hyp.length == 0:
        return 0.0
    overlap = sum((hyp.counts & ref.counts).values())
    if overlap == 0:
        return 0.0
    precision = overlap / hyp.length
    recall = overlap / ref.length
    return 2 * (precision * recall) / (precision + recall)


def sentence_unigram_f1(hyp: Union[str, TokenSeq], ref: Union[str, TokenSeq]) -> float:
    return score_prepared_unigram(prepare_unigram(hyp), prepare_unigram(ref))
