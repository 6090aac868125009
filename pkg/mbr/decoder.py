"""
Sample-based MBR decoding

    y* = argmax_{s_i in S} 1/n * sum_j u(s_i, s_j)

The pairwise matrix is computed once per unique ordered pair of distinct
strings and expanded to the pool; duplicates share rows and columns.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from mbr.pool import CurvePoint, CurveReport, DecodeResult, SamplePool, UtilityMatrix
from metrics.corpus import corpus_scores, normalize_metric_name
from metrics.utility import PreparedUtility, UtilityConfig, harmonic_mean, is_degenerate
from utils.helpers import derive_seed, make_rng

logger = logging.getLogger(__name__)


class GridError(ValueError):
    """A requested sample count exceeds the pool size"""


def _utility_row(utility: PreparedUtility, prepared: list, degenerate: List[bool], a: int) -> List[float]:
    if degenerate[a]:
        return [0.0] * len(prepared)
    return [0.0 if degenerate[b] else utility.score(prepared[a], prepared[b])
            for b in range(len(prepared))]


def utility_matrix(pool: SamplePool, config: UtilityConfig, workers: int = 1) -> UtilityMatrix:
    """
    Pairwise utilities u(s_i, s_j) for every ordered pair in the pool

    Empty candidates get utility 0 in both directions and are counted in
    `degenerate_cells`. The assembled matrix does not depend on `workers`.
    """
    utility = PreparedUtility(config)
    unique_texts = list(dict.fromkeys(pool.samples))
    position = {text: k for k, text in enumerate(unique_texts)}
    degenerate = [is_degenerate(text) for text in unique_texts]
    prepared = [None if degenerate[k] else utility.prepare(text) for k, text in enumerate(unique_texts)]

    size = len(unique_texts)
    if workers > 1 and size > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(lambda a: _utility_row(utility, prepared, degenerate, a), range(size)))
    else:
        rows = [_utility_row(utility, prepared, degenerate, a) for a in range(size)]
    unique_values = np.array(rows, dtype=np.float64).reshape(size, size)

    if config.symmetric:
        symmetric_values = np.empty_like(unique_values)
        for a in range(size):
            for b in range(size):
                symmetric_values[a, b] = harmonic_mean(unique_values[a, b], unique_values[b, a])
        unique_values = symmetric_values

    index = np.array([position[text] for text in pool.samples], dtype=np.intp)
    values = unique_values[np.ix_(index, index)]

    empty_samples = sum(1 for text in pool.samples if is_degenerate(text))
    degenerate_cells = 0
    if empty_samples:
        n = len(pool.samples)
        degenerate_cells = n * n - (n - empty_samples) ** 2
        logger.warning("Pool %s: %d empty sample(s), %d matrix cells set to 0",
                       pool.id, empty_samples, degenerate_cells)

    return UtilityMatrix(values=values, utility_name=config.name, degenerate_cells=degenerate_cells)


def expected_utilities(matrix: UtilityMatrix, include_self: bool = True) -> np.ndarray:
    """
    Row means of the utility matrix

    Sums are exactly rounded (math.fsum), so the result does not depend on
    the order cells were computed in. With include_self=False the diagonal
    is left out of each mean (a single-sample pool keeps its self term).
    """
    n = matrix.n
    values = matrix.values
    if include_self or n == 1:
        return np.array([math.fsum(values[i]) / n for i in range(n)], dtype=np.float64)
    return np.array([math.fsum(values[i, j] for j in range(n) if j != i) / (n - 1) for i in range(n)],
                    dtype=np.float64)


def draw_subsample(n: int, subsample: Optional[int], seed: int) -> List[int]:
    """Pool positions to decode from, in pool order (without replacement)"""
    if subsample is None or subsample == n:
        return list(range(n))
    if not 1 <= subsample <= n:
        raise GridError(f"Subsample size {subsample} outside [1, {n}]")
    rng = make_rng(derive_seed(seed, 'subsample'))
    return sorted(int(i) for i in rng.choice(n, size=subsample, replace=False))


def decode(pool: SamplePool,
           config: UtilityConfig,
           subsample: Optional[int] = None,
           seed: int = 0,
           matrix: Optional[UtilityMatrix] = None,
           include_self: bool = True,
           workers: int = 1) -> DecodeResult:
    """
    Select the sample with the highest expected utility

    Args:
        pool: sample pool
        config: utility function
        subsample: decode from this many samples drawn without replacement
        seed: seed for the subsample draw
        matrix: precomputed full-pool matrix to reuse (must match the pool)
        include_self: keep the j = i term in the expected utility

    Returns:
        DecodeResult; ties go to the lowest pool position

    Raises:
        GridError: subsample outside [1, n]
    """
    n = len(pool)
    if subsample is not None and not 1 <= subsample <= n:
        raise GridError(f"Pool '{pool.id}': subsample size {subsample} outside [1, {n}]")
    indices = draw_subsample(n, subsample, seed)

    if matrix is not None:
        if matrix.n != n:
            raise ValueError(f"Pool '{pool.id}': matrix is {matrix.n}x{matrix.n} for {n} samples")
        sub_matrix = matrix if len(indices) == n else matrix.submatrix(indices)
    else:
        sub_matrix = utility_matrix(pool.subpool(indices) if len(indices) < n else pool, config, workers)

    utilities = expected_utilities(sub_matrix, include_self=include_self)
    best = int(np.argmax(utilities))
    selected = indices[best]
    return DecodeResult(pool_id=pool.id,
                        selected_index=selected,
                        selected_text=pool.samples[selected],
                        expected_utilities=tuple(float(v) for v in utilities),
                        num_samples_used=len(indices),
                        utility_name=config.name,
                        seed=seed,
                        sample_indices=tuple(indices))


def validate_grid(grid: Sequence[int], pool: SamplePool):
    for size in grid:
        if not 1 <= size <= len(pool):
            raise GridError(f"Grid size {size} exceeds pool '{pool.id}' with {len(pool)} samples")


def decode_curve(pool: SamplePool,
                 config: UtilityConfig,
                 grid: Sequence[int],
                 repetitions: int,
                 seed: int,
                 metric: Optional[str] = 'chrf1',
                 matrix: Optional[UtilityMatrix] = None,
                 include_self: bool = True) -> CurveReport:
    """
    Sample-count sweep: `repetitions` subsampled decodes per grid size

    Each (size, rep) uses the seed derive_seed(seed, 'curve', size, rep).
    The full-pool matrix is computed once and sliced for every subsample.
    A single-sample baseline (one uniform draw from the same subsample) is
    recorded alongside each selection. When the pool has a reference and a
    metric is given, every point carries its evaluation score.
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be at least 1, got {repetitions}")
    validate_grid(grid, pool)

    if matrix is None:
        matrix = utility_matrix(pool, config)
    metric_key = normalize_metric_name(metric) if metric else None
    evaluate = metric_key is not None and pool.reference is not None

    report = CurveReport(pool_id=pool.id, utility_name=config.name, metric=metric_key if evaluate else None)
    for size in grid:
        for rep in range(repetitions):
            point_seed = derive_seed(seed, 'curve', size, rep)
            result = decode(pool, config, subsample=size, seed=point_seed,
                            matrix=matrix, include_self=include_self)
            baseline_rng = make_rng(derive_seed(seed, 'sample-baseline', size, rep))
            baseline_index = result.sample_indices[int(baseline_rng.integers(len(result.sample_indices)))]

            score = baseline_score = None
            if evaluate:
                score = corpus_scores([result.selected_text], [pool.reference], metric_key).score
                baseline_score = corpus_scores([pool.samples[baseline_index]], [pool.reference], metric_key).score

            report.points.append(CurvePoint(size=size, rep=rep, seed=point_seed,
                                            selected_index=result.selected_index,
                                            selected_text=result.selected_text,
                                            sample_baseline_index=baseline_index,
                                            score=score, sample_baseline_score=baseline_score))
    return report
