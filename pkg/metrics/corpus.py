"""
Corpus-level evaluation metrics, scored and signed by the reference scorer
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from sacrebleu.metrics import BLEU, CHRF

from metrics.errors import UndefinedMetricError
from text.ngrams import CHAR_ORDER, remove_whitespace
from text.tokenizer import tokenize_13a

CORPUS_METRICS = ('bleu', 'chrf1', 'chrf2', 'chrf3')


@dataclass(frozen=True)
class CorpusScore:
    metric: str
    signature: str
    score: float

    def format(self, width: int = 4) -> str:
        return f"{self.metric} = {self.score:.{width}f} ({self.signature})"

    def __str__(self):
        return self.format()


def normalize_metric_name(metric: str) -> str:
    key = metric.lower().replace('-', '').replace('_', '')
    if key == 'chrf':
        key = 'chrf2'
    if key not in CORPUS_METRICS:
        raise ValueError(f"Unknown evaluation metric '{metric}', expected one of {CORPUS_METRICS}")
    return key


@lru_cache(maxsize=None)
def scorer(key: str) -> Union[BLEU, CHRF]:
    """The reference scorer object behind one corpus metric"""
    if key == 'bleu':
        return BLEU(tokenize='13a', smooth_method='exp', effective_order=True)
    return CHRF(char_order=CHAR_ORDER, word_order=0, beta=int(key[-1]), whitespace=False)


def corpus_scores(hyps: Sequence[str], refs: Sequence[str], metric: str = 'chrf2') -> CorpusScore:
    """
    Corpus-level BLEU (exp smoothing, 13a, one reference) or chrF1/2/3

    BLEU input goes through tokenize_13a first; the scorer's own 13a pass
    then leaves it unchanged, so corpus and sentence BLEU see the same tokens.
    Scores are rescaled from the scorer's 0-100 to [0, 1].

    Raises:
        ValueError: empty or misaligned corpora, unknown metric
        UndefinedMetricError: reference side has no tokens (BLEU) or characters (chrF)
    """
    if len(hyps) != len(refs):
        raise ValueError(f"Hypotheses and references differ in length: {len(hyps)} vs {len(refs)}")
    if not hyps:
        raise ValueError("Cannot score an empty corpus")

    key = normalize_metric_name(metric)
    metric_scorer = scorer(key)
    if key == 'bleu':
        hyps = [tokenize_13a(h).joined() for h in hyps]
        refs = [tokenize_13a(r).joined() for r in refs]
        if not any(refs):
            raise UndefinedMetricError("BLEU is undefined for an empty reference corpus")
    elif not any(remove_whitespace(r) for r in refs):
        raise UndefinedMetricError("chrF is undefined for an empty reference corpus")

    result = metric_scorer.corpus_score(list(hyps), [list(refs)])
    return CorpusScore(metric=key, signature=str(metric_scorer.get_signature()),
                       score=min(1.0, result.score / 100))
