"""
Runs MBR decoding over every pool of a file, optionally across a process pool

Results come back in input order whatever the worker count.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple

from mbr.decoder import decode, decode_curve, utility_matrix, validate_grid
from mbr.pool import CurveReport, DecodeResult, SamplePool, UtilityMatrix
from metrics.utility import UtilityConfig
from utils.helpers import derive_seed

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 100


def _decode_task(args: Tuple[SamplePool, UtilityConfig, Optional[int], int, bool]) -> DecodeResult:
    pool, config, subsample, seed, include_self = args
    return decode(pool, config, subsample=subsample, seed=seed, include_self=include_self)


def _curve_task(args: Tuple[SamplePool, UtilityConfig, Sequence[int], int, int, Optional[str], bool]) -> CurveReport:
    pool, config, grid, repetitions, seed, metric, include_self = args
    return decode_curve(pool, config, grid, repetitions, seed, metric=metric, include_self=include_self)


def _matrix_task(args: Tuple[SamplePool, UtilityConfig]) -> UtilityMatrix:
    pool, config = args
    return utility_matrix(pool, config)


class PoolRunner:
    """Per-record decoding, curve sweeps and matrix computation over a list of pools"""

    def __init__(self, config: UtilityConfig, seed: int, workers: int = 1,
                 include_self: bool = True, progress: Optional[Callable[[str], None]] = None):
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.config = config
        self.seed = seed
        self.workers = workers
        self.include_self = include_self
        self.progress = progress

    def _map(self, task, items: List) -> List:
        if self.workers == 1 or len(items) < 2:
            results = []
            for done, item in enumerate(items, start=1):
                results.append(task(item))
                self._report(done, len(items))
            return results
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            results = []
            for done, result in enumerate(executor.map(task, items, chunksize=8), start=1):
                results.append(result)
                self._report(done, len(items))
            return results

    def _report(self, done: int, total: int):
        if self.progress and (done % PROGRESS_EVERY == 0 or done == total):
            self.progress(f"📊 Processed {done}/{total} pools")

    def record_seed(self, index: int) -> int:
        return derive_seed(self.seed, 'subsample', index)

    def decode_all(self, pools: Sequence[SamplePool], num_samples: Optional[int] = None) -> List[DecodeResult]:
        """
        Decode each pool from `num_samples` of its samples

        Pools with fewer samples are decoded from all of them (logged).
        Record k decodes with derive_seed(seed, 'subsample', k).
        """
        tasks = []
        for index, pool in enumerate(pools):
            subsample = None
            if num_samples is not None and num_samples < len(pool):
                subsample = num_samples
            elif num_samples is not None and num_samples > len(pool):
                logger.warning("Pool %s has %d samples, fewer than the requested %d; using all",
                               pool.id, len(pool), num_samples)
            tasks.append((pool, self.config, subsample, self.record_seed(index), self.include_self))
        return self._map(_decode_task, tasks)

    def curves(self, pools: Sequence[SamplePool], grid: Sequence[int], repetitions: int,
               metric: Optional[str] = 'chrf1') -> List[CurveReport]:
        for pool in pools:
            validate_grid(grid, pool)
        tasks = [(pool, self.config, list(grid), repetitions, derive_seed(self.seed, 'pool', index),
                  metric, self.include_self)
                 for index, pool in enumerate(pools)]
        return self._map(_curve_task, tasks)

    def matrices_for(self, pools: Sequence[SamplePool], results: Sequence[DecodeResult]) -> List[UtilityMatrix]:
        """Utility matrices over the samples each result was decoded from"""
        tasks = []
        for pool, result in zip(pools, results):
            indices = list(result.sample_indices)
            subpool = pool if not indices or len(indices) == len(pool) else pool.subpool(indices)
            tasks.append((subpool, self.config))
        return self._map(_matrix_task, tasks)
