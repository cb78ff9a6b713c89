from typing import Callable, Dict

from estimators.classical import hill, moment, pickands, zipf
from estimators.models import EstimateResult, EstimatorKind, GGConfig
from estimators.root import gg_bias_corrected, gg_estimate
from samples.models import OrderedSample

DEFAULT_C = 4.0

_BY_K: Dict[EstimatorKind, Callable[[OrderedSample, int], EstimateResult]] = {
    EstimatorKind.HILL: hill,
    EstimatorKind.PICKANDS: pickands,
    EstimatorKind.MOMENT: moment,
    EstimatorKind.ZIPF: zipf,
}

_BY_RATIO: Dict[EstimatorKind, Callable[[OrderedSample, GGConfig], EstimateResult]] = {
    EstimatorKind.GG: gg_estimate,
    EstimatorKind.GG_STAR: gg_bias_corrected,
}


def estimate(sample: OrderedSample, kind, k: int, c: float = DEFAULT_C) -> EstimateResult:
    """
    Run one estimator at `k`. The gg family derives k' = floor(k / c); `c` is
    ignored by the others.
    """
    kind = EstimatorKind(kind)
    if kind.uses_ratio:
        return _BY_RATIO[kind](sample, GGConfig.from_ratio(k, c))
    return _BY_K[kind](sample, k)
