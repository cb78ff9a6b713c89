import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from tailindex.exceptions import ConfigError


class EstimatorKind(str, Enum):
    GG = 'gg'
    GG_STAR = 'gg_star'
    HILL = 'hill'
    PICKANDS = 'pickands'
    MOMENT = 'moment'
    ZIPF = 'zipf'

    @property
    def uses_ratio(self) -> bool:
        return self in (EstimatorKind.GG, EstimatorKind.GG_STAR)


class GGConfig(BaseModel):
    """The pair (k, k') of the root estimator, 1 < k' < k."""

    model_config = ConfigDict(frozen=True)

    k: int
    k_prime: int

    @model_validator(mode='after')
    def _ordered(self):
        if not 1 < self.k_prime < self.k:
            raise ValueError(f"need 1 < k' < k, got k={self.k}, k'={self.k_prime}")
        return self

    @classmethod
    def from_ratio(cls, k: int, c: float) -> "GGConfig":
        """k' = floor(k / c); the realised ratio k / k' is what `c` reports."""
        if not c > 1:
            raise ConfigError(f"ratio c must exceed 1, got {c}")
        k_prime = math.floor(k / c)
        if k_prime < 2:
            raise ConfigError(f"k={k} with c={c} gives k'={k_prime} < 2")
        return cls(k=k, k_prime=k_prime)

    @property
    def c(self) -> float:
        return self.k / self.k_prime

    def check_sample_size(self, n: int) -> None:
        if self.k >= n:
            raise ConfigError(f"k={self.k} must be smaller than the sample size {n}")


class SpacingStatistics(BaseModel):
    """
    num = X_{n-k+1,n} - X_{n-k'+1,n}, den = X_{n-k'+1,n} - X_{n,n}, z = num / den.

    Both spacings are <= 0; z is None when den = 0.
    """

    model_config = ConfigDict(frozen=True)

    num: float = Field(le=0)
    den: float = Field(le=0)
    z: Optional[float] = Field(default=None, ge=0)


class RootDiagnostics(BaseModel):
    iterations: int
    bracket_low: float
    bracket_high: float
    minimal_k_prime: bool = False

    @property
    def bracket_width(self) -> float:
        return self.bracket_high - self.bracket_low


class EstimateResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    xi_hat: float
    estimator: EstimatorKind
    k: int
    k_prime: Optional[int] = None
    diagnostics: Optional[RootDiagnostics] = None

    @field_validator('xi_hat')
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"estimate is not finite: {value}")
        return value
