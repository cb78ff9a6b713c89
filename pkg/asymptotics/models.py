import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, computed_field


class Regime(str, Enum):
    POSITIVE_XI = 'PositiveXi'
    ZERO_XI = 'ZeroXi'
    MODERATE_NEGATIVE = 'ModerateNegative'
    HALF_NEGATIVE = 'HalfNegative'
    STRONG_NEGATIVE = 'StrongNegative'

    @classmethod
    def for_xi(cls, xi: float) -> "Regime":
        if xi > 0:
            return cls.POSITIVE_XI
        if xi == 0:
            return cls.ZERO_XI
        if xi > -0.5:
            return cls.MODERATE_NEGATIVE
        if xi == -0.5:
            return cls.HALF_NEGATIVE
        return cls.STRONG_NEGATIVE

    @property
    def explicit(self) -> bool:
        return self is not Regime.HALF_NEGATIVE


class LimitLaw(BaseModel):
    """
    Limit distribution of V_k(xi) (xi_hat - xi) for the root estimator with
    ratio c = k / k'. Regime, sigma and delta follow from (xi, c).
    """

    model_config = ConfigDict(frozen=True)

    xi: float = Field(allow_inf_nan=False)
    c: float = Field(gt=1, allow_inf_nan=False)

    @computed_field
    @property
    def regime(self) -> Regime:
        return Regime.for_xi(self.xi)

    @computed_field
    @property
    def sigma(self) -> float:
        return self.c ** -self.xi * math.sqrt(self.c - 1)

    @computed_field
    @property
    def delta(self) -> float:
        return min(-self.xi, 0.5)
