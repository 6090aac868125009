"""
Utility functions for MBR decoding

Presets cover BLEU smoothing variants, chrF betas and METEOR
parameterizations, plus the unigram-F1 utility used for small worked
examples. Any preset takes a `-symmetric` suffix, which replaces
u(a, b) with the harmonic mean of u(a, b) and u(b, a).
"""

from dataclasses import asdict, dataclass, replace
from typing import Any, Callable, Dict, Optional

from metrics.bleu import DEFAULT_ADD_K, DEFAULT_FLOOR, check_smoothing, prepare_bleu, score_prepared_bleu
from metrics.chrf import prepare_chrf, score_prepared_chrf
from metrics.meteor import load_function_words, prepare_meteor, score_prepared_meteor
from metrics.unigram import prepare_unigram, score_prepared_unigram

FAMILIES = ('bleu', 'chrf', 'meteor', 'unigram')
SYMMETRIC_SUFFIX = '-symmetric'


@dataclass(frozen=True)
class UtilityConfig:
    """One utility function: metric family plus its parameters"""

    name: str
    family: str
    smoothing: Optional[str] = None
    floor: Optional[float] = None
    add_k: Optional[float] = None
    beta: Optional[float] = None
    alpha: Optional[float] = None
    beta_m: Optional[float] = None
    gamma: Optional[float] = None
    delta: Optional[float] = None
    function_words_path: Optional[str] = None
    symmetric: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"Unknown utility family '{self.family}'")

        bleu_set = (self.smoothing, self.floor, self.add_k)
        chrf_set = (self.beta,)
        meteor_set = (self.alpha, self.beta_m, self.gamma, self.delta)
        populated = {
            'bleu': all(v is not None for v in bleu_set),
            'chrf': all(v is not None for v in chrf_set),
            'meteor': all(v is not None for v in meteor_set),
        }
        foreign = {
            'bleu': chrf_set + meteor_set,
            'chrf': bleu_set + meteor_set,
            'meteor': bleu_set + chrf_set,
            'unigram': bleu_set + chrf_set + meteor_set,
        }[self.family]
        if any(v is not None for v in foreign):
            raise ValueError(f"Utility '{self.name}' sets parameters outside the {self.family} family")
        if self.family != 'unigram' and not populated[self.family]:
            raise ValueError(f"Utility '{self.name}' is missing {self.family} parameters")

        if self.family == 'bleu':
            check_smoothing(self.smoothing, self.floor, self.add_k)
        if self.family == 'chrf' and self.beta <= 0:
            raise ValueError(f"chrF beta must be positive, got {self.beta}")
        if self.family == 'meteor':
            for label, value in (('alpha', self.alpha), ('beta', self.beta_m),
                                 ('gamma', self.gamma), ('delta', self.delta)):
                if not 0 <= value <= 1:
                    raise ValueError(f"METEOR {label} must lie in [0, 1], got {value}")

    @property
    def base_name(self) -> str:
        return self.name[:-len(SYMMETRIC_SUFFIX)] if self.name.endswith(SYMMETRIC_SUFFIX) else self.name

    def as_symmetric(self) -> 'UtilityConfig':
        if self.symmetric:
            return self
        return replace(self, name=self.name + SYMMETRIC_SUFFIX, symmetric=True)

    def describe(self) -> Dict[str, Any]:
        """Populated fields only, for report headers"""
        return {key: value for key, value in asdict(self).items() if value is not None}


def _bleu(name: str, smoothing: str) -> UtilityConfig:
    return UtilityConfig(name=name, family='bleu', smoothing=smoothing,
                         floor=DEFAULT_FLOOR, add_k=DEFAULT_ADD_K)


def _chrf(name: str, beta: float) -> UtilityConfig:
    return UtilityConfig(name=name, family='chrf', beta=beta)


def _meteor(name: str, alpha: float) -> UtilityConfig:
    return UtilityConfig(name=name, family='meteor', alpha=alpha, beta_m=0.2, gamma=0.6, delta=0.75)


PRESETS: Dict[str, UtilityConfig] = {
    config.name: config for config in (
        _bleu('bleu', 'none'),
        _bleu('bleu-floor', 'floor'),
        _bleu('bleu-add-k', 'add-k'),
        _bleu('bleu-exp', 'exp'),
        _chrf('chrf-0.5', 0.5),
        _chrf('chrf-1', 1.0),
        _chrf('chrf-2', 2.0),
        _chrf('chrf-3', 3.0),
        _meteor('meteor', 0.85),
        _meteor('meteor-0.5', 0.50),
        UtilityConfig(name='unigram-f1', family='unigram'),
    )
}


def resolve_utility(name: str,
                    symmetric: bool = False,
                    floor: Optional[float] = None,
                    add_k: Optional[float] = None,
                    function_words_path: Optional[str] = None) -> UtilityConfig:
    """
    Resolve a preset name (optionally suffixed with -symmetric) to a UtilityConfig

    Args:
        name: preset name, e.g. chrf-1 or bleu-floor-symmetric
        symmetric: force the symmetrized variant
        floor, add_k: BLEU smoothing constants overriding the defaults
        function_words_path: METEOR function-word lexicon

    Raises:
        ValueError: unknown preset, or a BLEU floor that is not positive
    """
    base = name
    if name.endswith(SYMMETRIC_SUFFIX):
        base = name[:-len(SYMMETRIC_SUFFIX)]
        symmetric = True
    if base not in PRESETS:
        known = ', '.join(sorted(PRESETS))
        raise ValueError(f"Unknown utility '{name}'. Known presets: {known} (each with optional {SYMMETRIC_SUFFIX})")

    config = PRESETS[base]
    if config.family == 'bleu':
        config = replace(config,
                         floor=config.floor if floor is None else floor,
                         add_k=config.add_k if add_k is None else add_k)
    if config.family == 'meteor' and function_words_path:
        config = replace(config, function_words_path=function_words_path)
    return config.as_symmetric() if symmetric else config


def harmonic_mean(x: float, y: float) -> float:
    if x == 0 or y == 0:
        return 0.0
    return 2 * (x * y) / (x + y)


def symmetrize(u: Callable[[str, str], float], a: str, b: str) -> float:
    """Harmonic mean of u(a, b) and u(b, a)"""
    return harmonic_mean(u(a, b), u(b, a))


def is_degenerate(text: str) -> bool:
    """Empty or whitespace-only candidates get utility 0 in both directions"""
    return not text or not text.strip()


class PreparedUtility:
    """
    Evaluates a UtilityConfig over raw strings

    `prepare` computes the per-sentence statistics once; `score` compares
    two prepared sentences in the asymmetric direction u(hyp, ref).
    """

    def __init__(self, config: UtilityConfig):
        self.config = config
        self.function_words = load_function_words(config.function_words_path)

    def prepare(self, text: str):
        family = self.config.family
        if family == 'bleu':
            return prepare_bleu(text)
        if family == 'chrf':
            return prepare_chrf(text)
        if family == 'meteor':
            return prepare_meteor(text)
        return prepare_unigram(text)

    def score(self, hyp, ref) -> float:
        config = self.config
        if config.family == 'bleu':
            return score_prepared_bleu(hyp, ref, config.smoothing, config.floor, config.add_k)
        if config.family == 'chrf':
            return score_prepared_chrf(hyp, ref, config.beta)
        if config.family == 'meteor':
            return score_prepared_meteor(hyp, ref, config.alpha, config.beta_m, config.gamma,
                                         config.delta, self.function_words)
        return score_prepared_unigram(hyp, ref)

    def directional(self, hyp: str, ref: str) -> float:
        """u(hyp, ref) on raw strings, 0 for degenerate candidates"""
        if is_degenerate(hyp) or is_degenerate(ref):
            return 0.0
        return self.score(self.prepare(hyp), self.prepare(ref))

    def __call__(self, hyp: str, ref: str) -> float:
        if self.config.symmetric:
            return symmetrize(self.directional, hyp, ref)
        return self.directional(hyp, ref)
