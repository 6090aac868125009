"""
Token-frequency bias: probability mass of translation tokens per
training-frequency bucket
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from text.tokenizer import tokenize_13a
from utils.helpers import mean_and_std

BUCKET_SCHEMES = {'decade': 10, 'log2': 2}
OOV_BUCKET = 'oov'


def _tokens(corpus: Iterable[Union[str, Sequence[str]]]) -> Iterable[str]:
    """Flatten a corpus given as raw sentences, token lists, or one token stream"""
    for item in corpus:
        if isinstance(item, str):
            yield from tokenize_13a(item).tokens
        else:
            yield from item


@dataclass
class FrequencyTable:
    """
    Training token counts with left-closed logarithmic buckets

    buckets[k] = (low, high) covers counts in [low, high); the last bucket is
    open-ended (high is None). Tokens never seen in training fall into the
    OOV bucket.
    """

    token_counts: Counter
    scheme: str
    buckets: List[Tuple[int, Optional[int]]] = field(default_factory=list)

    def bucket_index(self, count: int) -> int:
        for index, (low, high) in enumerate(self.buckets):
            if count >= low and (high is None or count < high):
                return index
        raise ValueError(f"Count {count} is outside every bucket")

    def bucket_of(self, token: str) -> Union[int, str]:
        count = self.token_counts.get(token, 0)
        if count == 0:
            return OOV_BUCKET
        return self.bucket_index(count)

    def labels(self) -> List[str]:
        labels = [f"[{low},{high})" if high is not None else f"[{low},inf)" for low, high in self.buckets]
        return labels + [OOV_BUCKET]

    def label_of(self, bucket: Union[int, str]) -> str:
        return OOV_BUCKET if bucket == OOV_BUCKET else self.labels()[bucket]


def _log_buckets(base: int, max_count: int) -> List[Tuple[int, Optional[int]]]:
    buckets = []
    low = 1
    while low <= max_count:
        buckets.append((low, low * base))
        low *= base
    buckets.append((low, None))
    return buckets


def build_frequency_table(training_target_corpus: Iterable[Union[str, Sequence[str]]],
                          bucket_scheme: str = 'decade') -> FrequencyTable:
    """
    Count training tokens and bucket them logarithmically

    Args:
        training_target_corpus: target-side sentences (raw or tokenized)
        bucket_scheme: 'decade' ([1,10), [10,100), ...) or 'log2'
    """
    if bucket_scheme not in BUCKET_SCHEMES:
        raise ValueError(f"Unknown bucket scheme '{bucket_scheme}', expected one of {sorted(BUCKET_SCHEMES)}")
    counts = Counter(_tokens(training_target_corpus))
    if not counts:
        raise ValueError("Training corpus is empty")
    buckets = _log_buckets(BUCKET_SCHEMES[bucket_scheme], max(counts.values()))
    return FrequencyTable(token_counts=counts, scheme=bucket_scheme, buckets=buckets)


def token_probability_by_bucket(table: FrequencyTable,
                                corpus: Iterable[Union[str, Sequence[str]]]) -> Dict[str, float]:
    """
    Share of corpus tokens falling into each training-frequency bucket

    Probabilities are normalized over all corpus tokens (OOV included), so
    they sum to 1.
    """
    bucket_hits = Counter()
    total = 0
    for token in _tokens(corpus):
        bucket_hits[table.bucket_of(token)] += 1
        total += 1
    if total == 0:
        raise ValueError("Corpus is empty")

    probabilities = {}
    for index, label in enumerate(table.labels()):
        bucket = OOV_BUCKET if label == OOV_BUCKET else index
        probabilities[label] = bucket_hits[bucket] / total
    return probabilities


def bucket_curve(table: FrequencyTable,
                 corpora: Sequence[Iterable[Union[str, Sequence[str]]]]) -> Dict[str, Dict[str, float]]:
    """Per-bucket mean and standard deviation over repeated corpora (e.g. sampling runs)"""
    runs = [token_probability_by_bucket(table, corpus) for corpus in corpora]
    if not runs:
        raise ValueError("No corpora given")
    curve = {}
    for label in table.labels():
        mean, std = mean_and_std([run[label] for run in runs])
        curve[label] = {'mean': mean, 'std': std}
    return curve


def training_distribution(table: FrequencyTable) -> Dict[str, float]:
    """Bucket distribution of the training corpus itself, from the stored counts"""
    total = sum(table.token_counts.values())
    hits = Counter()
    for count in table.token_counts.values():
        hits[table.bucket_index(count)] += count
    distribution = {label: 0.0 for label in table.labels()}
    for index, label in enumerate(table.labels()[:-1]):
        distribution[label] = hits[index] / total
    return distribution
