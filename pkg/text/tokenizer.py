"""
13a tokenization (the language-agnostic mteval-v13a rules)
Used for BLEU, METEOR, length statistics and copy detection

The raw 13a rules are not idempotent: '..1' tokenizes to '. .1', which
tokenizes again to '. . 1'. tokenize_13a applies the reference scorer's
Tokenizer13a until the output stops changing, so re-tokenizing the joined
tokens always returns the same tokens.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Tuple

from sacrebleu.tokenizers.tokenizer_13a import Tokenizer13a

_TOKENIZER = Tokenizer13a()


@dataclass(frozen=True)
class TokenSeq:
    """Tokenized form of a sentence, keeping the raw text it came from"""

    tokens: Tuple[str, ...]
    source_text: str = ''

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]

    def joined(self) -> str:
        """Tokens joined with single spaces"""
        return ' '.join(self.tokens)

    @classmethod
    def from_tokens(cls, tokens) -> 'TokenSeq':
        """Wrap an already tokenized sequence"""
        tokens = tuple(tokens)
        return cls(tokens=tokens, source_text=' '.join(tokens))


@lru_cache(maxsize=65536)
def _tokenize_13a_string(text: str) -> str:
    norm = _TOKENIZER(text)
    while True:
        again = _TOKENIZER(norm)
        if again == norm:
            return norm
        norm = again


def tokenize_13a(text: str) -> TokenSeq:
    """
    Tokenize a segment with the 13a rules

    Whitespace is normalized, period and comma are split off unless they
    sit between digits, a dash is split off after a digit, and ASCII
    symbols are always split. No case folding, no language-specific rules.

    Args:
        text: raw segment

    Returns:
        TokenSeq with the token list and the original text
    """
    if not text:
        return TokenSeq(tokens=(), source_text=text or '')

    normalized = _tokenize_13a_string(text)
    tokens = tuple(normalized.split(' ')) if normalized else ()
    return TokenSeq(tokens=tokens, source_text=text)
