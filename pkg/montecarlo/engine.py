"""
Monte Carlo engine: replicate r = 1..N draws `sample(distribution, n,
SeededStream(seed, r))` and evaluates every selected estimator on it.

Replicates may run on a thread pool; results are gathered by replicate index,
so any number of workers gives the same bits as a sequential run.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence

import numpy as np
from scipy import stats

from asymptotics.laws import limit_cdf, limit_law, v_k
from asymptotics.models import LimitLaw
from distributions.models import BaseFamily, SeededStream
from distributions.sampling import sample
from estimators.classical import hill, moment, pickands, zipf
from estimators.models import EstimatorKind, GGConfig
from estimators.root import correct_bias, gg_estimate
from montecarlo.models import (
    AsymptoticCheckResult,
    CellSummary,
    ExperimentConfig,
    ExperimentResult,
    max_valid_k,
    min_valid_k,
)
from tailindex.exceptions import ConfigError, DomainError, TailIndexError

log = logging.getLogger(__name__)

DEFAULT_K_START = 8

_CLASSICAL = {
    EstimatorKind.HILL: hill,
    EstimatorKind.PICKANDS: pickands,
    EstimatorKind.MOMENT: moment,
    EstimatorKind.ZIPF: zipf,
}


def default_k_grid(n: int, c: float, estimators: Sequence[EstimatorKind]) -> List[int]:
    """k from 8 to the largest k valid for every estimator, step max(1, n // 100)."""
    kinds = [EstimatorKind(e) for e in estimators]
    start = max([DEFAULT_K_START] + [min_valid_k(kind, c) for kind in kinds])
    stop = min(max_valid_k(kind, n) for kind in kinds)
    if start > stop:
        raise ConfigError(f"no valid k for n={n}, c={c:g} and estimators {[k.value for k in kinds]}")
    return list(range(start, stop + 1, max(1, n // 100)))


def _run_replicates(fn: Callable[[int], object], N: int, workers: int) -> list:
    replicates = range(1, N + 1)
    if workers <= 1:
        return [fn(r) for r in replicates]
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix='replicate') as executor:
        return list(executor.map(fn, replicates))


def _evaluate_replicate(cfg: ExperimentConfig, r: int) -> np.ndarray:
    """Estimates of one replicate, shape (estimators, k_grid); NaN where an estimator failed."""
    s = sample(cfg.distribution, cfg.n, SeededStream(master_seed=cfg.master_seed, stream_index=r))
    out = np.full((len(cfg.estimators), len(cfg.k_grid)), np.nan)
    rows = {kind: i for i, kind in enumerate(cfg.estimators)}
    wants_root = EstimatorKind.GG in rows or EstimatorKind.GG_STAR in rows

    for j, k in enumerate(cfg.k_grid):
        if wants_root:
            # one root serves both gg and gg_star
            try:
                root = gg_estimate(s, GGConfig.from_ratio(k, cfg.c))
                if EstimatorKind.GG in rows:
                    out[rows[EstimatorKind.GG], j] = root.xi_hat
                if EstimatorKind.GG_STAR in rows:
                    out[rows[EstimatorKind.GG_STAR], j] = correct_bias(root).xi_hat
            except TailIndexError as e:
                log.debug(f"Replicate {r}, k={k}: root estimator failed: {e}")

        for kind, estimator in _CLASSICAL.items():
            if kind not in rows:
                continue
            try:
                out[rows[kind], j] = estimator(s, k).xi_hat
            except TailIndexError as e:
                log.debug(f"Replicate {r}, k={k}: {kind.value} failed: {e}")
    return out


def _summarize(kind: EstimatorKind, k: int, estimates: np.ndarray, true_xi: float) -> CellSummary:
    ok = estimates[np.isfinite(estimates)]
    errors = int(estimates.size - ok.size)
    if ok.size == 0:
        log.warning(f"All {estimates.size} replicates failed for {kind.value} at k={k}")
        return CellSummary(
            estimator=kind, k=k, mean=np.nan, mse=np.nan, bias=np.nan, variance=np.nan,
            median_abs_error=np.nan, errors=errors, successes=0,
        )

    deviations = ok - true_xi
    mean = float(np.mean(ok))
    return CellSummary(
        estimator=kind,
        k=k,
        mean=mean,
        mse=float(np.mean(deviations ** 2)),
        bias=mean - true_xi,
        variance=float(np.var(ok)),
        median_abs_error=float(np.median(np.abs(deviations))),
        errors=errors,
        successes=int(ok.size),
    )


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> ExperimentResult:
    cfg.validate_grid()
    true_xi = cfg.distribution.true_xi
    log.info(f"Starting experiment: {cfg.echo()} workers={workers}")

    estimates = np.stack(_run_replicates(lambda r: _evaluate_replicate(cfg, r), cfg.N, workers))

    cells = [
        _summarize(kind, k, estimates[:, i, j], true_xi)
        for i, kind in enumerate(cfg.estimators)
        for j, k in enumerate(cfg.k_grid)
    ]
    failed = sum(cell.errors for cell in cells)
    log.info(f"Experiment finished: {len(cells)} cells, {failed} failed estimates")
    return ExperimentResult(config=cfg, cells=cells)


def _ks_test(values: Sequence[float], law: LimitLaw):
    if len(values) == 0:
        raise DomainError("KS distance needs at least one value")
    return stats.kstest(np.asarray(values, dtype=float), lambda t: limit_cdf(law, t), method='asymp')


def ks_distance(values: Sequence[float], law: LimitLaw) -> float:
    """sup_i max(|i/m - F(x_(i))|, |(i-1)/m - F(x_(i))|) over the sorted values."""
    return float(_ks_test(values, law).statistic)


def run_asymptotic_check(
    distribution: BaseFamily,
    n: int,
    N: int,
    k: int,
    c: float,
    seed: int,
    workers: int = 1,
) -> AsymptoticCheckResult:
    """
    Standardized errors V_k(xi) (xi_hat - xi) of the root estimator over N
    replicates, with the true xi in both the rate and the centering, compared
    with the limit law at the realised ratio k / floor(k / c).
    """
    if N < 1:
        raise ConfigError(f"N must be at least 1, got {N}")
    cfg = GGConfig.from_ratio(k, c)
    cfg.check_sample_size(n)
    xi = distribution.true_xi
    law = limit_law(xi, cfg.c)
    rate = v_k(xi, k)
    log.info(
        f"Starting asymptotic check: {distribution.label()} n={n} N={N} k={k} k'={cfg.k_prime} "
        f"seed={seed} regime={law.regime.value}"
    )

    def standardized(r: int) -> float:
        s = sample(distribution, n, SeededStream(master_seed=seed, stream_index=r))
        try:
            return rate * (gg_estimate(s, cfg).xi_hat - xi)
        except TailIndexError as e:
            log.debug(f"Replicate {r}: root estimator failed: {e}")
            return np.nan

    raw = np.asarray(_run_replicates(standardized, N, workers), dtype=float)
    values = np.sort(raw[np.isfinite(raw)])
    error_count = int(raw.size - values.size)
    if values.size == 0:
        raise DomainError(f"all {N} replicates failed; no standardized values to compare")

    test = _ks_test(values, law)
    log.info(f"Asymptotic check finished: ks_distance={test.statistic:.4f} errors={error_count}")
    return AsymptoticCheckResult(
        law=law,
        k=k,
        k_prime=cfg.k_prime,
        values=values.tolist(),
        ks_distance=float(test.statistic),
        p_value=float(test.pvalue),
        error_count=error_count,
    )
