"""
The distribution zoo used to generate Monte Carlo data.

Every family implements its CDF and its quantile function in closed form. The
quantile is written in terms of (ln p, ln(1 - p)) so that both tails keep full
precision: `quantile` feeds it ln p and log1p(-p), `tail_quantile` feeds it
log1p(-1/v) and ln(1/v).
"""

from typing import Annotated, ClassVar, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat
from scipy import special

from tailindex.exceptions import DomainError
from tailindex.special import phi


class BaseFamily(BaseModel):
    model_config = ConfigDict(frozen=True, validate_by_name=True, validate_by_alias=True, extra='forbid')

    display_name: ClassVar[str]
    xi_formula: ClassVar[str]
    tail_model: ClassVar[str]
    beta_formula: ClassVar[str]

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = self._cdf(x)
        return float(out) if np.ndim(out) == 0 else out

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any(~((p > 0) & (p < 1))):
            raise DomainError("quantile requires 0 < p < 1")
        out = self._quantile(np.log(p), np.log1p(-p))
        return float(out) if np.ndim(out) == 0 else out

    def tail_quantile(self, v):
        """U(v) = F^{-1}(1 - 1/v), the quantile exceeded with probability 1/v."""
        v = np.asarray(v, dtype=float)
        if np.any(~(v > 1)):
            raise DomainError("tail_quantile requires v > 1")
        out = self._quantile(np.log1p(-1.0 / v), -np.log(v))
        return float(out) if np.ndim(out) == 0 else out

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _quantile(self, log_p: np.ndarray, log_q: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def true_xi(self) -> float:
        raise NotImplementedError

    @property
    def beta(self) -> float:
        raise NotImplementedError

    def label(self) -> str:
        params = ', '.join(
            f"{field.alias or name}={getattr(self, name):g}"
            for name, field in type(self).model_fields.items()
            if name != 'family'
        )
        return f"{self.family}({params})"


class WeibullM(BaseFamily):
    """Max-stable law exp[-(1 + xi x)^(-1/xi)], Gumbel exp(-e^-x) at xi = 0."""

    display_name: ClassVar[str] = 'WeibullM'
    xi_formula: ClassVar[str] = 'ξ (any real)'
    tail_model: ClassVar[str] = 'A'
    beta_formula: ClassVar[str] = '1'

    family: Literal['weibullm'] = 'weibullm'
    xi: float

    def _cdf(self, x):
        if self.xi == 0:
            return np.exp(-np.exp(-x))
        with np.errstate(divide='ignore', invalid='ignore'):
            inner = 1.0 + self.xi * x
            value = np.exp(-np.exp(-np.log1p(self.xi * x) / self.xi))
        # Below the lower endpoint (xi > 0) or above the upper one (xi < 0)
        outside = 0.0 if self.xi > 0 else 1.0
        return np.where(inner > 0, value, outside)

    def _quantile(self, log_p, log_q):
        return -phi(-self.xi, -log_p)

    @property
    def true_xi(self):
        return self.xi

    @property
    def beta(self):
        return 1.0


class Burr(BaseFamily):
    """1 - [w / (w + x^tau)]^lambda on x > 0."""

    display_name: ClassVar[str] = 'Burr'
    xi_formula: ClassVar[str] = 'ξ=1/(λτ)'
    tail_model: ClassVar[str] = 'A'
    beta_formula: ClassVar[str] = '1/λ'

    family: Literal['burr'] = 'burr'
    w: PositiveFloat
    tau: PositiveFloat
    lam: PositiveFloat = Field(alias='lambda')

    def _cdf(self, x):
        positive = np.where(x > 0, x, 0.0)
        value = -np.expm1(-self.lam * np.log1p(positive ** self.tau / self.w))
        return np.where(x > 0, value, 0.0)

    def _quantile(self, log_p, log_q):
        return (self.w * np.expm1(-log_q / self.lam)) ** (1.0 / self.tau)

    @property
    def true_xi(self):
        return 1.0 / (self.lam * self.tau)

    @property
    def beta(self):
        return 1.0 / self.lam


class Frechet(BaseFamily):
    """exp(-x^(-1/xi)) on x > 0."""

    display_name: ClassVar[str] = 'Frechet'
    xi_formula: ClassVar[str] = 'ξ (> 0)'
    tail_model: ClassVar[str] = 'A'
    beta_formula: ClassVar[str] = '1'

    family: Literal['frechet'] = 'frechet'
    xi: PositiveFloat

    def _cdf(self, x):
        positive = np.where(x > 0, x, 1.0)
        return np.where(x > 0, np.exp(-positive ** (-1.0 / self.xi)), 0.0)

    def _quantile(self, log_p, log_q):
        return (-log_p) ** (-self.xi)

    @property
    def true_xi(self):
        return self.xi

    @property
    def beta(self):
        return 1.0


class Weibull(BaseFamily):
    """1 - exp(-lambda x^tau) on x > 0."""

    display_name: ClassVar[str] = 'Weibull'
    xi_formula: ClassVar[str] = 'ξ=0'
    tail_model: ClassVar[str] = 'B'
    beta_formula: ClassVar[str] = '1-1/τ'

    family: Literal['weibull'] = 'weibull'
    lam: PositiveFloat = Field(alias='lambda')
    tau: PositiveFloat

    def _cdf(self, x):
        positive = np.where(x > 0, x, 0.0)
        return np.where(x > 0, -np.expm1(-self.lam * positive ** self.tau), 0.0)

    def _quantile(self, log_p, log_q):
        return (-log_q / self.lam) ** (1.0 / self.tau)

    @property
    def true_xi(self):
        return 0.0

    @property
    def beta(self):
        return 1.0 - 1.0 / self.tau


class StandardNormal(BaseFamily):
    display_name: ClassVar[str] = 'Normal'
    xi_formula: ClassVar[str] = 'ξ=0'
    tail_model: ClassVar[str] = 'B'
    beta_formula: ClassVar[str] = '1/2'

    family: Literal['standardnormal'] = 'standardnormal'

    def _cdf(self, x):
        return special.ndtr(x)

    def _quantile(self, log_p, log_q):
        # Invert whichever tail probability is smaller
        lower = log_p < np.log(0.5)
        return np.where(lower, special.ndtri(np.exp(log_p)), -special.ndtri(np.exp(log_q)))

    @property
    def true_xi(self):
        return 0.0

    @property
    def beta(self):
        return 0.5


class ReversedBurr(BaseFamily):
    """1 - [w / (w + (x_F - x)^(-tau))]^lambda on x < x_F."""

    display_name: ClassVar[str] = 'ReversedBurr'
    xi_formula: ClassVar[str] = 'ξ=-1/(λτ)'
    tail_model: ClassVar[str] = 'A'
    beta_formula: ClassVar[str] = '1/λ'

    family: Literal['reversedburr'] = 'reversedburr'
    w: PositiveFloat
    tau: PositiveFloat
    lam: PositiveFloat = Field(alias='lambda')
    x_f: float

    def _cdf(self, x):
        below = x < self.x_f
        gap = np.where(below, self.x_f - x, 1.0)
        value = -np.expm1(-self.lam * np.log1p(gap ** (-self.tau) / self.w))
        return np.where(below, value, 1.0)

    def _quantile(self, log_p, log_q):
        y = self.w * np.expm1(-log_q / self.lam)
        return self.x_f - y ** (-1.0 / self.tau)

    @property
    def true_xi(self):
        return -1.0 / (self.lam * self.tau)

    @property
    def beta(self):
        return 1.0 / self.lam


DistributionSpec = Annotated[
    Union[WeibullM, Burr, Frechet, Weibull, StandardNormal, ReversedBurr],
    Field(discriminator='family'),
]

FAMILIES = {
    cls.model_fields['family'].default: cls
    for cls in (WeibullM, Burr, Frechet, Weibull, StandardNormal, ReversedBurr)
}


class SeededStream(BaseModel):
    """A reproducible stream of uniforms: one per (master_seed, stream_index)."""

    model_config = ConfigDict(frozen=True)

    master_seed: int = Field(ge=0, lt=2 ** 64)
    stream_index: int = Field(ge=0)

    def generator(self) -> np.random.Generator:
        seed_seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.Philox(seed_seq))

    def uniforms(self, size: int) -> np.ndarray:
        """Uniforms on the open interval (0, 1), built from 52-bit integers."""
        draws = self.generator().integers(0, 2 ** 52, size=size, dtype=np.int64)
        return (draws + 0.5) / 2.0 ** 52


def cdf(spec: BaseFamily, x):
    return spec.cdf(x)


def quantile(spec: BaseFamily, p):
    return spec.quantile(p)


def tail_quantile(spec: BaseFamily, v):
    return spec.tail_quantile(v)


def true_xi(spec: BaseFamily) -> float:
    return spec.true_xi


def model_class(spec: BaseFamily) -> str:
    """Second-order model (A or B) of the slowly varying part; documentation only."""
    return spec.tail_model


def beta(spec: BaseFamily) -> float:
    return spec.beta
