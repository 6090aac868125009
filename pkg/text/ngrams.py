"""
N-gram profiles over word tokens and characters
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Union

from sacrebleu.metrics.helpers import extract_all_char_ngrams, extract_all_word_ngrams

from text.tokenizer import TokenSeq

WORD_ORDER = 4
CHAR_ORDER = 6


@dataclass(frozen=True)
class NGramProfile:
    """Multiset of n-grams keyed by order (read-only once built)"""

    max_n: int
    order_counts: Mapping[int, Counter] = field(repr=False)
    total_per_order: Mapping[int, int] = field(default_factory=dict)

    def counts(self, order: int) -> Counter:
        return self.order_counts.get(order, Counter())

    def total(self, order: int) -> int:
        return self.total_per_order.get(order, 0)

    def is_empty(self) -> bool:
        return self.total(1) == 0


def _check_order(max_n: int):
    if max_n < 1:
        raise ValueError(f"max_n must be at least 1, got {max_n}")


def _profile(per_order: List[Counter], length: int, max_n: int) -> NGramProfile:
    order_counts: Dict[int, Counter] = {order: per_order[order - 1] for order in range(1, max_n + 1)}
    totals = {order: max(0, length - order + 1) for order in range(1, max_n + 1)}
    return NGramProfile(max_n=max_n, order_counts=order_counts, total_per_order=totals)


def word_ngrams(seq: Union[TokenSeq, Iterable[str]], max_n: int = WORD_ORDER) -> NGramProfile:
    """Count word n-grams of orders 1..max_n; keys are token tuples"""
    _check_order(max_n)
    tokens = seq.tokens if isinstance(seq, TokenSeq) else tuple(seq)
    grams, length = extract_all_word_ngrams(' '.join(tokens), 1, max_n)
    per_order = [Counter() for _ in range(max_n)]
    for gram, count in grams.items():
        per_order[len(gram) - 1][gram] = count
    return _profile(per_order, length, max_n)


def remove_whitespace(text: str) -> str:
    return ''.join(text.split())


def char_ngrams(text: str, max_n: int = CHAR_ORDER, include_space: bool = False) -> NGramProfile:
    """Count character n-grams of orders 1..max_n; whitespace dropped unless include_space"""
    _check_order(max_n)
    length = len(text) if include_space else len(remove_whitespace(text))
    return _profile(extract_all_char_ngrams(text, max_n, include_space), length, max_n)
