"""
Settings for the MBR toolkit

Values come from MBR_* environment variables (a .env file in the working
directory is loaded first). Command-line flags override them.
"""

import os
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Optional, Tuple

from dotenv import load_dotenv

from analysis.frequency import BUCKET_SCHEMES
from analysis.pathology import COPY_ANCHORS, OVERLAP_MODES
from metrics.utility import resolve_utility
from utils.helpers import parse_grid


class ConfigError(ValueError):
    """An environment variable holds an invalid value"""


# name -> (description, default)
ENV_VARS: Dict[str, Tuple[str, Optional[str]]] = {
    'MBR_UTILITY': ('Utility preset for MBR decoding', 'chrf-1'),
    'MBR_NUM_SAMPLES': ('Samples used per pool', '100'),
    'MBR_SEED': ('Master seed for every stochastic step', '1234'),
    'MBR_WORKERS': ('Parallel workers for decoding', '1'),
    'MBR_BLEU_FLOOR': ('Floor smoothing constant', '0.1'),
    'MBR_BLEU_ADD_K': ('Add-k smoothing constant', '1.0'),
    'MBR_FUNCTION_WORDS': ('METEOR function-word list (one per line)', None),
    'MBR_HALLUC_THRESHOLD': ('chrF2 below which a translation is a hallucination', '0.01'),
    'MBR_COPY_THRESHOLD': ('Token overlap above which a translation is a copy', '0.9'),
    'MBR_COPY_ANCHOR': ('Copy overlap anchor (reference|source)', 'reference'),
    'MBR_COPY_OVERLAP': ('Copy overlap formula (jaccard|anchor)', 'jaccard'),
    'MBR_BUCKETS': ('Frequency bucket scheme (decade|log2)', 'decade'),
    'MBR_REPORT_DIR': ('Directory for analysis reports', 'reports'),
    'MBR_CURVE_GRID': ('Sample-count grid for curves', '5:100:5'),
    'MBR_CURVE_REPS': ('Repetitions per grid size', '2'),
}


@dataclass(frozen=True)
class Settings:
    utility: str = 'chrf-1'
    num_samples: int = 100
    seed: int = 1234
    workers: int = 1
    bleu_floor: float = 0.1
    bleu_add_k: float = 1.0
    function_words: Optional[str] = None
    halluc_threshold: float = 0.01
    copy_threshold: float = 0.9
    copy_anchor: str = 'reference'
    copy_overlap: str = 'jaccard'
    buckets: str = 'decade'
    report_dir: str = 'reports'
    curve_grid: str = '5:100:5'
    curve_reps: int = 2

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _read(name: str, convert: Callable[[str], Any]) -> Any:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        raw = ENV_VARS[name][1]
    if raw is None:
        return None
    try:
        return convert(raw.strip())
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{name}={raw!r} is invalid: {e}") from e


def _choice(options) -> Callable[[str], str]:
    def convert(value: str) -> str:
        if value not in options:
            raise ValueError(f"expected one of {tuple(options)}")
        return value
    return convert


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise ValueError("must be a positive integer")
    return number


def _unit_float(value: str) -> float:
    number = float(value)
    if not 0.0 <= number <= 1.0:
        raise ValueError("must be in [0, 1]")
    return number


def _nonnegative_float(value: str) -> float:
    number = float(value)
    if number < 0:
        raise ValueError("must be nonnegative")
    return number


def _positive_float(value: str) -> float:
    number = float(value)
    if number <= 0:
        raise ValueError("must be positive")
    return number


def _preset(value: str) -> str:
    resolve_utility(value)
    return value


def _grid(value: str) -> str:
    parse_grid(value)
    return value


def load_settings(load_env_file: bool = True) -> Settings:
    """
    Resolve settings from the environment

    Raises:
        ConfigError: a variable is set to an invalid value (the message names it)
    """
    if load_env_file:
        load_dotenv()

    return Settings(
        utility=_read('MBR_UTILITY', _preset),
        num_samples=_read('MBR_NUM_SAMPLES', _positive_int),
        seed=_read('MBR_SEED', int),
        workers=_read('MBR_WORKERS', _positive_int),
        bleu_floor=_read('MBR_BLEU_FLOOR', _positive_float),
        bleu_add_k=_read('MBR_BLEU_ADD_K', _nonnegative_float),
        function_words=_read('MBR_FUNCTION_WORDS', str),
        halluc_threshold=_read('MBR_HALLUC_THRESHOLD', _unit_float),
        copy_threshold=_read('MBR_COPY_THRESHOLD', _unit_float),
        copy_anchor=_read('MBR_COPY_ANCHOR', _choice(COPY_ANCHORS)),
        copy_overlap=_read('MBR_COPY_OVERLAP', _choice(OVERLAP_MODES)),
        buckets=_read('MBR_BUCKETS', _choice(BUCKET_SCHEMES)),
        report_dir=_read('MBR_REPORT_DIR', str),
        curve_grid=_read('MBR_CURVE_GRID', _grid),
        curve_reps=_read('MBR_CURVE_REPS', _positive_int),
    )
