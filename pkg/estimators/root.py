"""
The Pickands-type root estimator and its bias-corrected variant.

With Z_n = (X_{n-k+1,n} - X_{n-k'+1,n}) / (X_{n-k'+1,n} - X_{n,n}) the estimate
is the unique root theta of

    H_n(theta) = [phi_theta(1/k') / phi_theta(1/k)] * (1 + Z_n) = 1.

H_n is non-decreasing, tends to 0 as theta -> -inf and to 1 + Z_n as
theta -> +inf, so a symmetric bracket [-2^m, 2^m] is widened until H_n - 1
changes sign and the root is then bisected.
"""

import logging

from scipy import optimize

from asymptotics.laws import mu, v_k
from estimators.models import EstimateResult, EstimatorKind, GGConfig, RootDiagnostics, SpacingStatistics
from samples.models import OrderedSample
from tailindex.exceptions import BracketCapError, RootAtInfinityError, TieError
from tailindex.special import phi_ratio

log = logging.getLogger(__name__)

THETA_CAP = 64.0
ROOT_XTOL = 1e-10
MAX_BISECTIONS = 200


def spacing_statistics(sample: OrderedSample, cfg: GGConfig) -> SpacingStatistics:
    cfg.check_sample_size(sample.n)
    top = sample.upper_order_stat(1)
    kth = sample.upper_order_stat(cfg.k)
    kth_prime = sample.upper_order_stat(cfg.k_prime)

    num = kth - kth_prime
    den = kth_prime - top
    return SpacingStatistics(num=num, den=den, z=num / den if den != 0 else None)


def _h_value(cfg: GGConfig, one_plus_z: float, theta: float) -> float:
    return phi_ratio(theta, 1.0 / cfg.k_prime, 1.0 / cfg.k) * one_plus_z


def h_function(sample: OrderedSample, cfg: GGConfig, theta: float) -> float:
    spacings = spacing_statistics(sample, cfg)
    if spacings.z is None:
        raise TieError(f"X_(n-k'+1,n) equals the maximum for k'={cfg.k_prime}")
    return _h_value(cfg, 1.0 + spacings.z, theta)


def _find_bracket(f) -> tuple:
    half_width = 1.0
    while True:
        low, high = -half_width, half_width
        f_low, f_high = f(low), f(high)
        if f_low <= 0 <= f_high:
            return low, high, f_low, f_high
        if half_width >= THETA_CAP:
            raise BracketCapError(
                f"no sign change of H_n - 1 within |theta| <= {THETA_CAP:g} "
                f"(H_n - 1 = {f_low:.3g} at {low:g}, {f_high:.3g} at {high:g})"
            )
        half_width *= 2


def gg_estimate(sample: OrderedSample, cfg: GGConfig) -> EstimateResult:
    spacings = spacing_statistics(sample, cfg)
    if spacings.z is None:
        raise TieError(f"X_(n-k'+1,n) equals the maximum for k'={cfg.k_prime}")
    if spacings.num == 0:
        raise RootAtInfinityError(
            f"X_(n-k+1,n) equals X_(n-k'+1,n) for k={cfg.k}, k'={cfg.k_prime}: Z_n = 0"
        )

    one_plus_z = 1.0 + spacings.z

    def excess(theta: float) -> float:
        return _h_value(cfg, one_plus_z, theta) - 1.0

    low, high, f_low, f_high = _find_bracket(excess)
    if f_low == 0:
        root, iterations = low, 0
    elif f_high == 0:
        root, iterations = high, 0
    else:
        root, info = optimize.bisect(
            excess, low, high, xtol=ROOT_XTOL, maxiter=MAX_BISECTIONS, full_output=True
        )
        iterations = info.iterations

    diagnostics = RootDiagnostics(
        iterations=iterations,
        bracket_low=low,
        bracket_high=high,
        minimal_k_prime=cfg.k_prime == 2,
    )
    if diagnostics.minimal_k_prime:
        log.debug(f"Root for k={cfg.k} uses the minimal k'=2; bracket [{low:g}, {high:g}]")

    return EstimateResult(
        xi_hat=root,
        estimator=EstimatorKind.GG,
        k=cfg.k,
        k_prime=cfg.k_prime,
        diagnostics=diagnostics,
    )


def correct_bias(result: EstimateResult) -> EstimateResult:
    """xi* = xi - mu(xi) / V_k(xi), with c the realised ratio k / k'."""
    if result.estimator is not EstimatorKind.GG:
        raise ValueError(f"bias correction applies to gg estimates, got {result.estimator.value}")

    xi = result.xi_hat
    c = result.k / result.k_prime
    corrected = xi - mu(xi, c) / v_k(xi, result.k)

    return result.model_copy(update={'xi_hat': corrected, 'estimator': EstimatorKind.GG_STAR})


def gg_bias_corrected(sample: OrderedSample, cfg: GGConfig) -> EstimateResult:
    return correct_bias(gg_estimate(sample, cfg))
