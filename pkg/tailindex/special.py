"""
Scalar special functions behind every estimator and limit law.

    phi(t, x)       = integral_1^x u^(t-1) du = (x^t - 1) / t, ln(x) at t = 0
    phi_star(t, x)  = 1 + t x, exp(x) at t = 0

phi is evaluated as expm1(t ln x) / t so that it stays accurate while the root
solver sweeps t through 0. Both accept a scalar t and a scalar or array x.
"""

import math

import numpy as np
from scipy import special

from tailindex.exceptions import DomainError

# Below this |t| phi switches to its t = 0 limit, ln(x)
PHI_ZERO_THRESHOLD = 1e-12

# Largest argument with a finite double-precision gamma value
GAMMA_MAX_ARGUMENT = 171.6


def _as_output(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


def phi(t: float, x):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError(f"phi requires x > 0, got {x.min() if x.ndim else float(x)}")

    log_x = np.log(x)
    if abs(t) < PHI_ZERO_THRESHOLD:
        return _as_output(log_x)
    return _as_output(np.expm1(t * log_x) / t)


def phi_star(t: float, x):
    x = np.asarray(x, dtype=float)
    if t == 0:
        return _as_output(np.exp(x))
    return _as_output(1.0 + t * x)


def phi_ratio(t: float, x: float, y: float) -> float:
    """
    phi(t, x) / phi(t, y) for positive x, y != 1 on the same side of 1.

    Computed without forming x^t or y^t, which overflow for large |t|.
    """
    log_x, log_y = math.log(x), math.log(y)
    if abs(t) < PHI_ZERO_THRESHOLD:
        return log_x / log_y

    u, v = t * log_x, t * log_y
    if u > 0 and v > 0:
        return math.exp(u - v) * math.expm1(-u) / math.expm1(-v)
    return math.expm1(u) / math.expm1(v)


def gamma_function(x: float) -> float:
    if not (0 < x <= GAMMA_MAX_ARGUMENT):
        raise DomainError(f"gamma_function is supported on (0, {GAMMA_MAX_ARGUMENT}], got {x}")
    return float(special.gamma(x))


def euler_gamma() -> float:
    return float(np.euler_gamma)
