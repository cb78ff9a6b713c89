"""
Named simulation scenarios, all with N = 100 replicates of size n = 500 and
c = 4. `bias-*` compare the root estimator with its bias-corrected version,
`compare-*` and `rate-*` set the corrected estimator against Pickands, moment
and generalized Zipf.
"""

from typing import Dict, Optional

from distributions.models import Burr, Frechet, ReversedBurr, StandardNormal, Weibull, WeibullM
from estimators.models import EstimatorKind
from montecarlo.engine import default_k_grid
from montecarlo.models import ExperimentConfig
from tailindex.exceptions import ConfigError

DEFAULT_SEED = 1234567
PRESET_N = 500
PRESET_REPLICATES = 100
PRESET_C = 4.0

BIAS_ESTIMATORS = (EstimatorKind.GG, EstimatorKind.GG_STAR)
COMPARE_ESTIMATORS = (EstimatorKind.GG_STAR, EstimatorKind.PICKANDS, EstimatorKind.MOMENT, EstimatorKind.ZIPF)

PRESETS: Dict[str, tuple] = {
    'bias-frechet': (Frechet(xi=3), BIAS_ESTIMATORS),
    'bias-weibull-fast': (Weibull(lam=1, tau=0.5), BIAS_ESTIMATORS),
    'bias-weibull-unit': (Weibull(lam=1, tau=1), BIAS_ESTIMATORS),
    'bias-weibull-slow': (Weibull(lam=1, tau=1.5), BIAS_ESTIMATORS),
    'bias-weibullm-moderate': (WeibullM(xi=-1 / 3), BIAS_ESTIMATORS),
    'bias-weibullm-strong': (WeibullM(xi=-1), BIAS_ESTIMATORS),
    'compare-burr': (Burr(w=1, tau=1, lam=1), COMPARE_ESTIMATORS),
    'compare-normal': (StandardNormal(), COMPARE_ESTIMATORS),
    'compare-weibullm-moderate': (WeibullM(xi=-0.25), COMPARE_ESTIMATORS),
    'compare-weibullm-strong': (WeibullM(xi=-2), COMPARE_ESTIMATORS),
    'rate-reversed-burr-1': (ReversedBurr(w=1, tau=1, lam=1, x_f=10), COMPARE_ESTIMATORS),
    'rate-reversed-burr-2': (ReversedBurr(w=1, tau=0.5, lam=2, x_f=10), COMPARE_ESTIMATORS),
    'rate-reversed-burr-3': (ReversedBurr(w=1, tau=1 / 3, lam=3, x_f=10), COMPARE_ESTIMATORS),
}


def preset_names():
    return list(PRESETS)


def preset_config(name: str, seed: Optional[int] = None, **overrides) -> ExperimentConfig:
    """
    Build the ExperimentConfig of a named scenario. `overrides` replace any
    field; the k-grid is recomputed unless given explicitly.
    """
    try:
        distribution, estimators = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None

    fields = {
        'distribution': distribution,
        'n': PRESET_N,
        'N': PRESET_REPLICATES,
        'c': PRESET_C,
        'estimators': list(estimators),
        'master_seed': DEFAULT_SEED if seed is None else seed,
    }
    fields.update(overrides)
    if 'k_grid' not in fields:
        fields['k_grid'] = default_k_grid(fields['n'], fields['c'], fields['estimators'])
    return ExperimentConfig(**fields)


def describe(name: str) -> str:
    distribution, estimators = PRESETS[name]
    return f"{name}: {distribution.label()} [{', '.join(e.value for e in estimators)}]"
