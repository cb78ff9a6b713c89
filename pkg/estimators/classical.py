"""
Baseline estimators of the extreme value index: Hill, Pickands, moment and
generalized Zipf. All of them read the top of the sample through
`OrderedSample.upper_tail` / `upper_order_stat`.
"""

import math

import numpy as np

from estimators.models import EstimateResult, EstimatorKind
from samples.models import OrderedSample
from tailindex.exceptions import DegenerateMomentError, DomainError, TieError

# Relative tolerance for S_{k,n} == (Hill)^2 in the moment estimator
MOMENT_DEGENERACY_RTOL = 1e-12


def _check_k(k: int, low: int, high: int, name: str) -> None:
    if not low <= k <= high:
        raise DomainError(f"{name} needs {low} <= k <= {high}, got k={k}")


def _log_excesses(sample: OrderedSample, k: int) -> np.ndarray:
    """ln X_{n-i+1,n} - ln X_{n-k,n} for i = 1..k."""
    threshold = sample.upper_order_stat(k + 1)
    if threshold <= 0:
        raise DomainError(f"X_(n-k,n) = {threshold:g} must be positive for k={k}")
    return np.log(sample.upper_tail(k)) - math.log(threshold)


def _hill_value(sample: OrderedSample, k: int) -> float:
    return float(np.mean(_log_excesses(sample, k)))


def hill(sample: OrderedSample, k: int) -> EstimateResult:
    _check_k(k, 1, sample.n - 1, 'hill')
    return EstimateResult(xi_hat=_hill_value(sample, k), estimator=EstimatorKind.HILL, k=k)


def pickands(sample: OrderedSample, k: int) -> EstimateResult:
    _check_k(k, 1, sample.n // 4, 'pickands')
    top = sample.upper_order_stat(k)
    middle = sample.upper_order_stat(2 * k)
    bottom = sample.upper_order_stat(4 * k)

    upper_gap, lower_gap = top - middle, middle - bottom
    if upper_gap <= 0 or lower_gap <= 0:
        raise TieError(f"tied order statistics in Pickands spacings for k={k}")

    xi_hat = math.log(upper_gap / lower_gap) / math.log(2)
    return EstimateResult(xi_hat=xi_hat, estimator=EstimatorKind.PICKANDS, k=k)


def moment(sample: OrderedSample, k: int) -> EstimateResult:
    _check_k(k, 1, sample.n - 1, 'moment')
    excesses = _log_excesses(sample, k)
    first = float(np.mean(excesses))
    second = float(np.mean(excesses ** 2))

    if second <= 0 or math.isclose(second, first ** 2, rel_tol=MOMENT_DEGENERACY_RTOL):
        raise DegenerateMomentError(
            f"second log-moment {second:g} equals squared Hill estimate {first ** 2:g} for k={k}"
        )

    xi_hat = first + 1.0 - 0.5 / (1.0 - first ** 2 / second)
    return EstimateResult(xi_hat=xi_hat, estimator=EstimatorKind.MOMENT, k=k)


def zipf(sample: OrderedSample, k: int) -> EstimateResult:
    """
    Generalized Zipf estimator: the weighted least-squares slope of ln UH_{j,n}
    against ln((k+1)/j), j = 1..k, where

        UH_{j,n} = X_{n-j,n} * Hill(j).
    """
    _check_k(k, 2, sample.n - 1, 'zipf')

    threshold = sample.upper_order_stat(k + 1)
    if threshold <= 0:
        raise DomainError(f"X_(n-k,n) = {threshold:g} must be positive for k={k}")

    # (X_{n,n}, ..., X_{n-k,n}); entry j is X_{n-j,n}
    tail = sample.upper_tail(k + 1)
    logs = np.log(tail)
    j = np.arange(1, k + 1)
    hills = np.cumsum(logs[:k]) / j - logs[1:]
    uh = tail[1:] * hills
    if np.any(uh <= 0):
        bad = int(j[uh <= 0][0])
        raise DomainError(f"UH_(j,n) is not positive for j={bad} (tied upper order statistics)")

    x = np.log((k + 1) / j)
    y = np.log(uh)
    numerator = np.sum(x * y) - np.sum(x) * np.sum(y) / k
    denominator = np.sum(x ** 2) - np.sum(x) ** 2 / k

    return EstimateResult(xi_hat=float(numerator / denominator), estimator=EstimatorKind.ZIPF, k=k)
