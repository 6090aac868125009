"""
Data records for MBR decoding: sample pools, utility matrices, decode results
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from utils.helpers import mean_and_std, safe_get


@dataclass(frozen=True)
class SamplePool:
    """One source sentence with its n candidate samples (repeats allowed)"""

    id: str
    source: str
    samples: Tuple[str, ...]
    reference: Optional[str] = None
    beam: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'samples', tuple(self.samples))
        if self.beam is not None:
            object.__setattr__(self, 'beam', tuple(self.beam))
        if not self.samples:
            raise ValueError(f"Pool '{self.id}' has no samples")

    def __len__(self) -> int:
        return len(self.samples)

    def subpool(self, indices: Sequence[int]) -> 'SamplePool':
        return SamplePool(id=self.id, source=self.source,
                          samples=tuple(self.samples[i] for i in indices),
                          reference=self.reference, beam=self.beam)

    def to_dict(self) -> Dict[str, Any]:
        record = {'id': self.id, 'source': self.source}
        if self.reference is not None:
            record['reference'] = self.reference
        record['samples'] = list(self.samples)
        if self.beam is not None:
            record['beam'] = list(self.beam)
        return record

    @classmethod
    def from_dict(cls, record: Dict[str, Any]) -> 'SamplePool':
        beam = record.get('beam')
        return cls(id=str(record['id']),
                   source=str(safe_get(record, 'source', '')),
                   samples=tuple(str(s) for s in record['samples']),
                   reference=record.get('reference'),
                   beam=tuple(str(b) for b in beam) if beam is not None else None)


@dataclass(frozen=True)
class UtilityMatrix:
    """n x n pairwise utilities, entry (i, j) = u(s_i, s_j)"""

    values: np.ndarray
    utility_name: str
    degenerate_cells: int = 0

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def submatrix(self, indices: Sequence[int]) -> 'UtilityMatrix':
        index = np.asarray(indices, dtype=np.intp)
        return UtilityMatrix(values=self.values[np.ix_(index, index)],
                             utility_name=self.utility_name)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.values, self.values.T))


@dataclass(frozen=True)
class DecodeResult:
    """
    Outcome of one MBR decision

    selected_index and sample_indices refer to positions in the full pool;
    expected_utilities is aligned with sample_indices.
    """

    pool_id: str
    selected_index: int
    selected_text: str
    expected_utilities: Tuple[float, ...]
    num_samples_used: int
    utility_name: str
    seed: int
    sample_indices: Tuple[int, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.pool_id,
            'selected_index': self.selected_index,
            'selected_text': self.selected_text,
            'expected_utilities': list(self.expected_utilities),
            'num_samples_used': self.num_samples_used,
            'utility': self.utility_name,
            'seed': self.seed,
            'sample_indices': list(self.sample_indices),
        }

    @classmethod
    def from_dict(cls, record: Dict[str, Any]) -> 'DecodeResult':
        return cls(pool_id=str(record['id']),
                   selected_index=int(record['selected_index']),
                   selected_text=str(record['selected_text']),
                   expected_utilities=tuple(float(v) for v in record['expected_utilities']),
                   num_samples_used=int(record['num_samples_used']),
                   utility_name=str(record['utility']),
                   seed=int(record['seed']),
                   sample_indices=tuple(int(i) for i in safe_get(record, 'sample_indices', [])))


@dataclass(frozen=True)
class CurvePoint:
    size: int
    rep: int
    seed: int
    selected_index: int
    selected_text: str
    sample_baseline_index: int
    score: Optional[float] = None
    sample_baseline_score: Optional[float] = None


@dataclass
class CurveReport:
    """Per-size selections of a sample-count sweep for one pool"""

    pool_id: str
    utility_name: str
    metric: Optional[str]
    points: List[CurvePoint] = field(default_factory=list)

    def sizes(self) -> List[int]:
        return sorted({point.size for point in self.points})

    def summary(self) -> Dict[int, Dict[str, float]]:
        """Mean and standard deviation of the evaluation score per size"""
        summary = {}
        for size in self.sizes():
            scores = [p.score for p in self.points if p.size == size and p.score is not None]
            if not scores:
                continue
            mean, std = mean_and_std(scores)
            summary[size] = {'mean': mean, 'std': std, 'reps': len(scores)}
        return summary
