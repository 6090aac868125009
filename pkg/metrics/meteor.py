"""
METEOR with exact matching only

The alignment maximizes the number of matched words and, among maximal
alignments, minimizes the number of chunks (runs of matches contiguous in
both hypothesis and reference). Content and function words are weighted
by delta; without a lexicon every word is a content word.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from metrics.errors import UndefinedMetricError
from text.tokenizer import TokenSeq, tokenize_13a

logger = logging.getLogger(__name__)

DEFAULT_ALPHA = 0.85
DEFAULT_BETA = 0.2
DEFAULT_GAMMA = 0.6
DEFAULT_DELTA = 0.75

# node budget for the exhaustive chunk search; the greedy alignment is kept past it
SEARCH_BUDGET = 20000


@lru_cache(maxsize=8)
def load_function_words(path: Optional[str]) -> FrozenSet[str]:
    """Load a function-word lexicon (UTF-8, one token per line)"""
    if not path:
        return frozenset()
    lexicon_path = Path(path)
    if not lexicon_path.exists():
        logger.warning("Function-word lexicon %s not found, weighting all words as content", path)
        return frozenset()
    with open(lexicon_path, encoding='utf-8') as f:
        words = frozenset(line.strip() for line in f if line.strip())
    logger.debug("Loaded %d function words from %s", len(words), path)
    return words


@dataclass(frozen=True)
class PreparedMeteor:
    tokens: Tuple[str, ...]
    positions: Dict[str, Tuple[int, ...]]


def prepare_meteor(text: Union[str, TokenSeq]) -> PreparedMeteor:
    seq = text if isinstance(text, TokenSeq) else tokenize_13a(text)
    positions = defaultdict(list)
    for index, token in enumerate(seq.tokens):
        positions[token].append(index)
    return PreparedMeteor(tokens=seq.tokens,
                          positions={word: tuple(pos) for word, pos in positions.items()})


def count_chunks(alignment: List[Tuple[int, int]]) -> int:
    """Chunks in an alignment given as (hyp_index, ref_index) pairs in hypothesis order"""
    if not alignment:
        return 0
    chunks = 1
    for (prev_h, prev_r), (h, r) in zip(alignment, alignment[1:]):
        if h != prev_h + 1 or r != prev_r + 1:
            chunks += 1
    return chunks


def _greedy_alignment(hyp: PreparedMeteor, ref: PreparedMeteor, needed: Counter) -> List[Tuple[int, int]]:
    remaining = Counter(needed)
    used = set()
    alignment = []
    for h, word in enumerate(hyp.tokens):
        if remaining[word] == 0:
            continue
        candidates = [r for r in ref.positions.get(word, ()) if r not in used]
        choice = candidates[0]
        if alignment and alignment[-1][0] == h - 1 and alignment[-1][1] + 1 in candidates:
            choice = alignment[-1][1] + 1
        used.add(choice)
        remaining[word] -= 1
        alignment.append((h, choice))
    return alignment


def align_exact(hyp: PreparedMeteor, ref: PreparedMeteor) -> List[Tuple[int, int]]:
    """
    Exact-match alignment with maximal matches and minimal chunks

    Returns:
        (hyp_index, ref_index) pairs sorted by hypothesis index
    """
    hyp_counts = Counter(hyp.tokens)
    needed = Counter({word: min(count, len(ref.positions.get(word, ())))
                      for word, count in hyp_counts.items()})
    needed = +needed
    if not needed:
        return []

    best = _greedy_alignment(hyp, ref, needed)
    best_chunks = count_chunks(best)
    if best_chunks == 1:
        return best

    # occurrences of each word still ahead of position h (inclusive)
    ahead = []
    running = Counter()
    for word in reversed(hyp.tokens):
        running[word] += 1
        ahead.append(Counter(running))
    ahead.reverse()

    remaining = Counter(needed)
    used = set()
    path: List[Tuple[int, int]] = []
    nodes = 0

    def chunks_after(h: int, r: int, chunks: int) -> int:
        if path and path[-1][0] == h - 1 and path[-1][1] == r - 1:
            return chunks
        return chunks + 1

    def search(h: int, chunks: int):
        nonlocal best, best_chunks, nodes
        nodes += 1
        if nodes > SEARCH_BUDGET or chunks >= best_chunks:
            return
        if h == len(hyp.tokens):
            best, best_chunks = list(path), chunks
            return

        word = hyp.tokens[h]
        if remaining[word] > 0:
            candidates = [r for r in ref.positions.get(word, ()) if r not in used]
            if path and path[-1][0] == h - 1 and path[-1][1] + 1 in candidates:
                candidates.remove(path[-1][1] + 1)
                candidates.insert(0, path[-1][1] + 1)
            for r in candidates:
                new_chunks = chunks_after(h, r, chunks)
                used.add(r)
                remaining[word] -= 1
                path.append((h, r))
                search(h + 1, new_chunks)
                path.pop()
                remaining[word] += 1
                used.discard(r)
        # skipping is allowed only while enough later occurrences remain
        if ahead[h][word] - 1 >= remaining[word]:
            search(h + 1, chunks)

    search(0, 0)
    if nodes > SEARCH_BUDGET:
        logger.debug("Chunk search budget exhausted for %d/%d tokens", len(hyp.tokens), len(ref.tokens))
    return best


def _weighted_length(tokens, function_words: FrozenSet[str], delta: float) -> float:
    function_count = sum(1 for token in tokens if token in function_words)
    return delta * (len(tokens) - function_count) + (1 - delta) * function_count


def score_prepared_meteor(hyp: PreparedMeteor, ref: PreparedMeteor,
                          alpha: float = DEFAULT_ALPHA, beta: float = DEFAULT_BETA,
                          gamma: float = DEFAULT_GAMMA, delta: float = DEFAULT_DELTA,
                          function_words: FrozenSet[str] = frozenset()) -> float:
    if not ref.tokens:
        raise UndefinedMetricError("METEOR is undefined for an empty reference")
    if not hyp.tokens:
        return 0.0

    alignment = align_exact(hyp, ref)
    matches = len(alignment)
    if matches == 0:
        return 0.0

    matched_tokens = [hyp.tokens[h] for h, _ in alignment]
    matched_weight = _weighted_length(matched_tokens, function_words, delta)
    hyp_weight = _weighted_length(hyp.tokens, function_words, delta)
    ref_weight = _weighted_length(ref.tokens, function_words, delta)
    precision = matched_weight / hyp_weight if hyp_weight > 0 else 0.0
    recall = matched_weight / ref_weight if ref_weight > 0 else 0.0
    if precision == 0 or recall == 0:
        return 0.0

    f_mean = (precision * recall) / (alpha * precision + (1 - alpha) * recall)
    penalty = gamma * (count_chunks(alignment) / matches) ** beta
    return max(0.0, min(1.0, f_mean * (1 - penalty)))


def sentence_meteor(hyp: Union[str, TokenSeq], ref: Union[str, TokenSeq],
                    alpha: float = DEFAULT_ALPHA, beta: float = DEFAULT_BETA,
                    gamma: float = DEFAULT_GAMMA, delta: float = DEFAULT_DELTA,
                    function_words: FrozenSet[str] = frozenset()) -> float:
    """
    Exact-match METEOR of one hypothesis against one reference

    score = F_mean * (1 - gamma * (chunks / matches) ** beta), with
    F_mean = P * R / (alpha * P + (1 - alpha) * R)
    """
    return score_prepared_meteor(prepare_meteor(hyp), prepare_meteor(ref),
                                 alpha, beta, gamma, delta, function_words)
