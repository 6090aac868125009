"""Tokenization and n-gram extraction shared by the metrics and analyses."""

from text.tokenizer import TokenSeq, tokenize_13a
from text.ngrams import NGramProfile, word_ngrams, char_ngrams

__all__ = ['TokenSeq', 'tokenize_13a', 'NGramProfile', 'word_ngrams', 'char_ngrams']
