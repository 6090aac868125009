"""
Hallucination and copy detection, and per-pool pathology utility reports

A hallucination is a translation with chrF2 below 0.01 against the
reference. A copy is a translation whose 13a token-set overlap with an
anchor sentence (reference by default, or the source) exceeds 0.9.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence

from mbr.decoder import expected_utilities
from mbr.pool import DecodeResult, SamplePool, UtilityMatrix
from metrics.chrf import sentence_chrf
from metrics.errors import UndefinedMetricError
from text.tokenizer import tokenize_13a

logger = logging.getLogger(__name__)

HALLUCINATION_THRESHOLD = 0.01
COPY_THRESHOLD = 0.9
COPY_ANCHORS = ('reference', 'source')
OVERLAP_MODES = ('jaccard', 'anchor')
KINDS = ('copy', 'hallucination')


def is_hallucination(hyp: str, ref: str, threshold: float = HALLUCINATION_THRESHOLD) -> bool:
    """chrF2(hyp, ref) < threshold"""
    return sentence_chrf(hyp, ref, beta=2.0) < threshold


def copy_overlap(hyp: str, anchor: str, mode: str = 'jaccard') -> float:
    """
    Token-set overlap between a hypothesis and an anchor sentence

    jaccard: |H & A| / |H | A|
    anchor:  |H & A| / |A|
    """
    if mode not in OVERLAP_MODES:
        raise ValueError(f"Unknown overlap mode '{mode}', expected one of {OVERLAP_MODES}")
    anchor_tokens = set(tokenize_13a(anchor).tokens)
    if not anchor_tokens:
        raise UndefinedMetricError("Copy overlap is undefined for an empty anchor")
    hyp_tokens = set(tokenize_13a(hyp).tokens)
    shared = len(hyp_tokens & anchor_tokens)
    if mode == 'anchor':
        return shared / len(anchor_tokens)
    return shared / len(hyp_tokens | anchor_tokens)


def is_copy(hyp: str, anchor: str, threshold: float = COPY_THRESHOLD, mode: str = 'jaccard') -> bool:
    """Overlap strictly greater than threshold"""
    return copy_overlap(hyp, anchor, mode) > threshold


@dataclass
class PathologyReport:
    kind: str
    mean_utility_flagged: Optional[float]
    mean_utility_all: float
    flagged_rate_in_pools: float
    flagged_rate_in_selections: float
    flagged_rate_in_beam: Optional[float] = None
    num_pools: int = 0
    num_samples: int = 0
    num_flagged_samples: int = 0
    num_flagged_selections: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class PathologyDetector:
    """Applies the configured copy or hallucination test to one pool"""

    def __init__(self, kind: str, halluc_threshold: float = HALLUCINATION_THRESHOLD,
                 copy_threshold: float = COPY_THRESHOLD, copy_anchor: str = 'reference',
                 overlap_mode: str = 'jaccard'):
        if kind not in KINDS:
            raise ValueError(f"Unknown pathology kind '{kind}', expected one of {KINDS}")
        if copy_anchor not in COPY_ANCHORS:
            raise ValueError(f"Unknown copy anchor '{copy_anchor}', expected one of {COPY_ANCHORS}")
        self.kind = kind
        self.halluc_threshold = halluc_threshold
        self.copy_threshold = copy_threshold
        self.copy_anchor = copy_anchor
        self.overlap_mode = overlap_mode

    def anchor_for(self, pool: SamplePool) -> str:
        anchor = pool.reference
        if self.kind == 'copy' and self.copy_anchor == 'source':
            anchor = pool.source
        if not anchor:
            side = 'source' if self.kind == 'copy' and self.copy_anchor == 'source' else 'reference'
            raise ValueError(f"Pool '{pool.id}' has no {side}, required for {self.kind} detection")
        return anchor

    def flag(self, text: str, anchor: str) -> bool:
        if self.kind == 'hallucination':
            return is_hallucination(text, anchor, self.halluc_threshold)
        return is_copy(text, anchor, self.copy_threshold, self.overlap_mode)

    def settings(self) -> Dict[str, Any]:
        if self.kind == 'hallucination':
            return {'kind': self.kind, 'halluc_threshold': self.halluc_threshold, 'metric': 'chrF2'}
        return {'kind': self.kind, 'copy_threshold': self.copy_threshold,
                'copy_anchor': self.copy_anchor, 'overlap': self.overlap_mode}


def pathology_report(pools: Sequence[SamplePool],
                     results: Sequence[DecodeResult],
                     matrices: Sequence[UtilityMatrix],
                     kind: str,
                     detector: Optional[PathologyDetector] = None,
                     include_self: bool = True) -> PathologyReport:
    """
    Flag every pool sample and compare utilities of flagged vs all samples

    matrices[k] covers the samples results[k] decoded from (its
    sample_indices, or the whole pool when those are empty).

    Returns:
        PathologyReport; mean_utility_flagged is None when nothing is flagged
    """
    if not (len(pools) == len(results) == len(matrices)):
        raise ValueError(f"Misaligned inputs: {len(pools)} pools, {len(results)} results, "
                         f"{len(matrices)} matrices")
    if not pools:
        raise ValueError("No pools to analyze")
    detector = detector or PathologyDetector(kind)
    if detector.kind != kind:
        raise ValueError(f"Detector is configured for {detector.kind}, not {kind}")

    flagged_utilities: List[float] = []
    all_utilities: List[float] = []
    flagged_selections = 0
    beam_flags: List[bool] = []

    for pool, result, matrix in zip(pools, results, matrices):
        if result.pool_id != pool.id:
            raise ValueError(f"Misaligned inputs: result for '{result.pool_id}' paired with pool '{pool.id}'")
        indices = list(result.sample_indices) or list(range(len(pool)))
        if matrix.n != len(indices):
            raise ValueError(f"Pool '{pool.id}': matrix is {matrix.n}x{matrix.n} for {len(indices)} samples")

        anchor = detector.anchor_for(pool)
        utilities = expected_utilities(matrix, include_self=include_self)
        for position, index in enumerate(indices):
            value = float(utilities[position])
            all_utilities.append(value)
            if detector.flag(pool.samples[index], anchor):
                flagged_utilities.append(value)

        if detector.flag(result.selected_text, anchor):
            flagged_selections += 1
        if pool.beam:
            beam_flags.append(detector.flag(pool.beam[0], anchor))

    report = PathologyReport(
        kind=kind,
        mean_utility_flagged=math.fsum(flagged_utilities) / len(flagged_utilities) if flagged_utilities else None,
        mean_utility_all=math.fsum(all_utilities) / len(all_utilities),
        flagged_rate_in_pools=len(flagged_utilities) / len(all_utilities),
        flagged_rate_in_selections=flagged_selections / len(pools),
        flagged_rate_in_beam=sum(beam_flags) / len(beam_flags) if beam_flags else None,
        num_pools=len(pools),
        num_samples=len(all_utilities),
        num_flagged_samples=len(flagged_utilities),
        num_flagged_selections=flagged_selections,
    )
    logger.debug("Pathology report (%s): %s", kind, report)
    return report
