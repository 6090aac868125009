"""Copy-noise injection and held-out splits for parallel corpora"""

from noise.corpus import (
    ParallelCorpus, inject_copy_noise, split_holdout, DEFAULT_NOISE_GRID, NOISE_MODES, CLEAN, COPY_INJECTED
)

__all__ = [
    'ParallelCorpus', 'inject_copy_noise', 'split_holdout', 'DEFAULT_NOISE_GRID',
    'NOISE_MODES', 'CLEAN', 'COPY_INJECTED',
]
