"""
Length statistics: mean number of 13a tokens per system
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Union

from text.tokenizer import tokenize_13a

REFERENCE_ROW = 'reference'


@dataclass
class LengthTable:
    """Mean token count per system (reference, sample, beam, utility presets...)"""

    rows: Dict[str, float] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)

    def ratio_to_reference(self) -> Dict[str, float]:
        reference = self.rows.get(REFERENCE_ROW)
        if not reference:
            return {}
        return {name: mean / reference for name, mean in self.rows.items()}

    def to_rows(self) -> List[Dict[str, object]]:
        ratios = self.ratio_to_reference()
        return [{'system': name, 'mean_tokens': mean, 'sentences': self.counts.get(name, 0),
                 'ratio_to_reference': ratios.get(name, '')}
                for name, mean in self.rows.items()]


def _token_count(sentence: Union[str, Sequence[str]]) -> int:
    if isinstance(sentence, str):
        return len(tokenize_13a(sentence))
    return len(sentence)


def length_stats(corpora: Mapping[str, Iterable[Union[str, Sequence[str]]]]) -> LengthTable:
    """
    Mean token count per named corpus

    Sentences may be raw strings (13a-tokenized here) or token lists.
    """
    table = LengthTable()
    for name, sentences in corpora.items():
        lengths = [_token_count(sentence) for sentence in sentences]
        if not lengths:
            raise ValueError(f"Corpus '{name}' is empty")
        table.rows[name] = math.fsum(lengths) / len(lengths)
        table.counts[name] = len(lengths)
    return table
