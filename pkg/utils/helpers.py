"""
Utility functions shared by the decoder, analyses and command line
"""

import hashlib
import math
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

RNG_ALGORITHM = 'numpy.PCG64'


def format_score(value: float, width: int = 4) -> str:
    """Format a [0, 1] score for status lines"""
    if isinstance(value, (int, float)):
        return f"{value:.{width}f}"
    return str(value)


def safe_get(dictionary: Dict[str, Any], key: str, default: Any = None) -> Any:
    """Get a value from a record, treating explicit nulls as missing"""
    value = dictionary.get(key, default)
    return default if value is None else value


def derive_seed(seed: int, label: str, *indices: int) -> int:
    """
    Derive a 64-bit seed from (seed, purpose label, indices)

    The derivation is SHA-256 over the tuple, so it is identical across
    platforms and Python versions.
    """
    key = ':'.join([str(int(seed)), label] + [str(int(i)) for i in indices])
    return int.from_bytes(hashlib.sha256(key.encode('utf-8')).digest()[:8], 'big')


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def parse_grid(spec: str) -> List[int]:
    """
    Parse a sample-count grid

    Accepts `start:stop:step` (inclusive stop) or a comma list `5,10,20`.
    """
    spec = str(spec).strip()
    if not spec:
        raise ValueError("Empty grid")
    if ':' in spec:
        parts = spec.split(':')
        if len(parts) != 3:
            raise ValueError(f"Grid '{spec}' must look like start:stop:step")
        start, stop, step = (int(p) for p in parts)
        if step <= 0 or start <= 0 or stop < start:
            raise ValueError(f"Grid '{spec}' must satisfy 0 < start <= stop and step > 0")
        return list(range(start, stop + 1, step))

    grid = [int(p) for p in spec.split(',') if p.strip()]
    if any(size <= 0 for size in grid):
        raise ValueError(f"Grid sizes must be positive: {spec}")
    return grid


def parse_float_list(spec: str) -> List[float]:
    return [float(p) for p in str(spec).split(',') if p.strip()]


def mean_and_std(values: Sequence[float]) -> Tuple[float, float]:
    """Mean and population standard deviation (0 for a single value)"""
    if not values:
        return 0.0, 0.0
    mean = math.fsum(values) / len(values)
    variance = math.fsum((v - mean) ** 2 for v in values) / len(values)
    return mean, math.sqrt(variance)
