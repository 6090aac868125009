"""Sentence- and corpus-level similarity metrics used as MBR utilities and for evaluation"""

from metrics.errors import UndefinedMetricError
from metrics.bleu import sentence_bleu, SMOOTHING_METHODS
from metrics.chrf import sentence_chrf
from metrics.meteor import sentence_meteor, load_function_words
from metrics.unigram import sentence_unigram_f1
from metrics.utility import (
    UtilityConfig, PreparedUtility, PRESETS, resolve_utility, symmetrize, harmonic_mean
)
from metrics.corpus import CorpusScore, corpus_scores, CORPUS_METRICS

__all__ = [
    'UndefinedMetricError', 'sentence_bleu', 'SMOOTHING_METHODS', 'sentence_chrf',
    'sentence_meteor', 'load_function_words', 'sentence_unigram_f1',
    'UtilityConfig', 'PreparedUtility', 'PRESETS', 'resolve_utility', 'symmetrize',
    'harmonic_mean', 'CorpusScore', 'corpus_scores', 'CORPUS_METRICS',
]
