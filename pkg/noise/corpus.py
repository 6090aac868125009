"""
Parallel corpora and controlled copy-noise perturbation

A copy-noised pair has its target replaced by its own source. Noise is
drawn per chunk of pairs from generators seeded with
derive_seed(seed, 'copy-noise', chunk), so output is identical whether
chunks are processed in sequence or in parallel.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from utils.helpers import derive_seed, make_rng

logger = logging.getLogger(__name__)

CLEAN = 0
COPY_INJECTED = 1
NOISE_MODES = ('bernoulli', 'exact')
DEFAULT_NOISE_GRID = (0.001, 0.005, 0.01, 0.05, 0.1, 0.25, 0.5)
DEFAULT_CHUNK_SIZE = 10000


@dataclass(frozen=True)
class ParallelCorpus:
    """Ordered (source, target) pairs with optional per-pair provenance tags"""

    pairs: Tuple[Tuple[str, str], ...]
    provenance: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'pairs', tuple((str(s), str(t)) for s, t in self.pairs))
        if self.provenance is not None:
            object.__setattr__(self, 'provenance', tuple(int(tag) for tag in self.provenance))
            if len(self.provenance) != len(self.pairs):
                raise ValueError(f"{len(self.provenance)} provenance tags for {len(self.pairs)} pairs")
        for line, (source, _) in enumerate(self.pairs, start=1):
            if not source.strip():
                raise ValueError(f"Pair {line} has an empty source")

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def sources(self) -> List[str]:
        return [source for source, _ in self.pairs]

    @property
    def targets(self) -> List[str]:
        return [target for _, target in self.pairs]

    def tags(self) -> Tuple[int, ...]:
        return self.provenance if self.provenance is not None else (CLEAN,) * len(self.pairs)

    def num_injected(self) -> int:
        return sum(1 for tag in self.tags() if tag == COPY_INJECTED)

    def select(self, indices: Sequence[int]) -> 'ParallelCorpus':
        tags = self.provenance
        return ParallelCorpus(pairs=tuple(self.pairs[i] for i in indices),
                              provenance=tuple(tags[i] for i in indices) if tags is not None else None)


def _chunk_mask(size: int, p: float, rng: np.random.Generator) -> np.ndarray:
    return rng.random(size) < p


def inject_copy_noise(corpus: ParallelCorpus,
                      p: float,
                      seed: int,
                      mode: str = 'bernoulli',
                      chunk_size: int = DEFAULT_CHUNK_SIZE) -> ParallelCorpus:
    """
    Replace targets by their sources with probability p

    Args:
        corpus: input corpus (existing tags are kept for untouched pairs)
        p: noise probability in [0, 1]
        seed: master seed
        mode: 'bernoulli' draws every pair independently; 'exact' copies
              exactly round(p * n) pairs chosen uniformly without replacement
        chunk_size: pairs per independently seeded draw (bernoulli mode)

    Returns:
        New corpus, same length and order, with provenance tags
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Noise probability must be in [0, 1], got {p}")
    if mode not in NOISE_MODES:
        raise ValueError(f"Unknown noise mode '{mode}', expected one of {NOISE_MODES}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive, got {chunk_size}")

    n = len(corpus)
    if mode == 'exact':
        count = int(round(p * n))
        rng = make_rng(derive_seed(seed, 'copy-noise-exact'))
        mask = np.zeros(n, dtype=bool)
        if count:
            mask[rng.choice(n, size=count, replace=False)] = True
    else:
        chunks = [_chunk_mask(min(chunk_size, n - start), p,
                              make_rng(derive_seed(seed, 'copy-noise', start // chunk_size)))
                  for start in range(0, n, chunk_size)]
        mask = np.concatenate(chunks) if chunks else np.zeros(0, dtype=bool)

    old_tags = corpus.tags()
    pairs = []
    tags = []
    for index, (source, target) in enumerate(corpus.pairs):
        if mask[index]:
            pairs.append((source, source))
            tags.append(COPY_INJECTED)
        else:
            pairs.append((source, target))
            tags.append(old_tags[index])

    logger.info("Copy noise p=%s (%s): %d of %d pairs injected", p, mode, int(mask.sum()), n)
    return ParallelCorpus(pairs=tuple(pairs), provenance=tuple(tags))


def split_holdout(corpus: ParallelCorpus, size: int, seed: int) -> Tuple[ParallelCorpus, ParallelCorpus]:
    """
    Uniform random held-out split without replacement

    Both parts keep the input order of their pairs.

    Returns:
        (train, heldout)
    """
    n = len(corpus)
    if not 0 < size < n:
        raise ValueError(f"Held-out size must satisfy 0 < size < {n}, got {size}")
    rng = make_rng(derive_seed(seed, 'holdout'))
    chosen = np.zeros(n, dtype=bool)
    chosen[rng.choice(n, size=size, replace=False)] = True
    heldout = [i for i in range(n) if chosen[i]]
    train = [i for i in range(n) if not chosen[i]]
    return corpus.select(train), corpus.select(heldout)
