"""
Closed-form asymptotics of the root estimator.

For k' = k / c the normalized error V_k(xi) (xi_hat - xi) converges to

    xi > 0          exp(-e^{-t})
    xi = 0          exp(-e^{-t/2})
    -1/2 < xi < 0   exp(-[1 + t ln(c) / phi_xi(1/c)]^{-1/xi})
    xi < -1/2       Phi(-t c^{-xi} ln(c) / (2 xi sigma))

with sigma = c^{-xi} sqrt(c - 1). The law at xi = -1/2 exists but has no
explicit form, so it is rejected here.
"""

import math

import numpy as np
from scipy import special

from asymptotics.models import LimitLaw, Regime
from distributions.models import BaseFamily
from tailindex.exceptions import DomainError, UnsupportedLawError
from tailindex.special import euler_gamma, gamma_function, phi


def delta(xi: float) -> float:
    return min(-xi, 0.5)


def sigma(xi: float, c: float) -> float:
    return c ** -xi * math.sqrt(c - 1)


def v_k(xi: float, k: int) -> float:
    """V_k(xi) = phi_delta(k) * (ln k if xi >= 0 else 1)."""
    if k < 2:
        raise DomainError(f"v_k requires k >= 2, got {k}")
    rate = phi(delta(xi), k)
    return rate * math.log(k) if xi >= 0 else rate


def mu(xi: float, c: float) -> float:
    """
    Mean of the limit law: the Euler constant for xi > 0,
    -[1 - Gamma(1 - xi)] phi_xi(1/c) / ln(c) for -1/2 < xi < 0, and 0 otherwise.
    """
    if not c > 1:
        raise DomainError(f"mu requires c > 1, got {c}")
    if xi > 0:
        return euler_gamma()
    if -0.5 < xi < 0:
        return -(1.0 - gamma_function(1.0 - xi)) * phi(xi, 1.0 / c) / math.log(c)
    return 0.0


def limit_law(xi: float, c: float) -> LimitLaw:
    law = LimitLaw(xi=xi, c=c)
    if not law.regime.explicit:
        raise UnsupportedLawError(
            "the limit law at xi = -1/2 is non-degenerate but has no explicit distribution function"
        )
    return law


def _check_explicit(law: LimitLaw) -> None:
    if not law.regime.explicit:
        raise UnsupportedLawError(f"no explicit limit law in regime {law.regime.value}")


def _moderate_slope(law: LimitLaw) -> float:
    # ln(c) / phi_xi(1/c), negative for -1/2 < xi < 0
    return math.log(law.c) / phi(law.xi, 1.0 / law.c)


def _strong_slope(law: LimitLaw) -> float:
    # positive for xi < -1/2
    return -law.c ** -law.xi * math.log(law.c) / (2.0 * law.xi * law.sigma)


def limit_cdf(law: LimitLaw, t):
    _check_explicit(law)
    t = np.asarray(t, dtype=float)

    if law.regime is Regime.POSITIVE_XI:
        with np.errstate(over='ignore'):
            out = np.exp(-np.exp(-t))
    elif law.regime is Regime.ZERO_XI:
        with np.errstate(over='ignore'):
            out = np.exp(-np.exp(-t / 2.0))
    elif law.regime is Regime.MODERATE_NEGATIVE:
        bracket = 1.0 + t * _moderate_slope(law)
        # The bracket hits 0 at the upper end of the support; clamp to 1 beyond it
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            inside = np.exp(-np.power(np.where(bracket > 0, bracket, 1.0), -1.0 / law.xi))
        out = np.where(bracket > 0, inside, 1.0)
    else:
        out = special.ndtr(t * _strong_slope(law))

    return float(out) if np.ndim(out) == 0 else out


def limit_quantile(law: LimitLaw, p):
    _check_explicit(law)
    p = np.asarray(p, dtype=float)
    if np.any(~((p > 0) & (p < 1))):
        raise DomainError("limit_quantile requires 0 < p < 1")

    if law.regime is Regime.POSITIVE_XI:
        out = -np.log(-np.log(p))
    elif law.regime is Regime.ZERO_XI:
        out = -2.0 * np.log(-np.log(p))
    elif law.regime is Regime.MODERATE_NEGATIVE:
        out = np.expm1(-law.xi * np.log(-np.log(p))) / _moderate_slope(law)
    else:
        out = special.ndtri(p) / _strong_slope(law)

    return float(out) if np.ndim(out) == 0 else out


def tail_spacing_ratio(spec: BaseFamily, t: float, x: float, y: float) -> float:
    """
    [phi_xi(y) / phi_xi(x)] * (U(tx) - U(t)) / (U(ty) - U(t)) with U the tail
    quantile function of `spec` and xi its true index. Tends to 1 as t grows
    with x, y -> 0, ty -> inf and x / y fixed.
    """
    if not t > 1:
        raise DomainError(f"tail_spacing_ratio requires t > 1, got {t}")
    if not (x > 0 and y > 0) or x == 1 or y == 1:
        raise DomainError(f"tail_spacing_ratio requires positive x, y different from 1, got x={x}, y={y}")
    if not (t * x > 1 and t * y > 1):
        raise DomainError(f"tail_spacing_ratio requires tx > 1 and ty > 1, got tx={t * x:g}, ty={t * y:g}")

    xi = spec.true_xi
    base = spec.tail_quantile(t)
    return (phi(xi, y) / phi(xi, x)) * (spec.tail_quantile(t * x) - base) / (spec.tail_quantile(t * y) - base)
