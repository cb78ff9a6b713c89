import math
from typing import List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from asymptotics.models import LimitLaw
from distributions.models import DistributionSpec
from estimators.models import EstimatorKind
from tailindex.exceptions import ConfigError

RESULT_COLUMNS = ['estimator', 'k', 'mean', 'mse', 'errors']


def max_valid_k(kind: EstimatorKind, n: int) -> int:
    if kind is EstimatorKind.PICKANDS:
        return n // 4
    return n - 1


def min_valid_k(kind: EstimatorKind, c: float) -> int:
    if kind.uses_ratio:
        # smallest k with floor(k / c) >= 2
        k = math.ceil(2 * c)
        return k if math.floor(k / c) >= 2 else k + 1
    if kind is EstimatorKind.ZIPF:
        return 2
    return 1


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    distribution: DistributionSpec
    n: int = Field(ge=4)
    N: int = Field(ge=1)
    c: float = Field(default=4.0, gt=1, allow_inf_nan=False)
    k_grid: List[int] = Field(min_length=1)
    estimators: List[EstimatorKind] = Field(min_length=1)
    master_seed: int = Field(ge=0, lt=2 ** 64)

    @field_validator('estimators')
    @classmethod
    def _distinct(cls, value):
        if len(set(value)) != len(value):
            raise ValueError("estimators must not repeat")
        return value

    def validate_grid(self) -> None:
        """Every k must satisfy the preconditions of every selected estimator."""
        for kind in self.estimators:
            low, high = min_valid_k(kind, self.c), max_valid_k(kind, self.n)
            bad = [k for k in self.k_grid if not low <= k <= high]
            if bad:
                raise ConfigError(
                    f"k={bad[0]} is outside the valid range {low}..{high} of {kind.value} "
                    f"(n={self.n}, c={self.c:g})"
                )

    def echo(self) -> str:
        return (
            f"distribution={self.distribution.label()} n={self.n} N={self.N} c={self.c:g} "
            f"seed={self.master_seed} estimators={','.join(e.value for e in self.estimators)} "
            f"k_grid={self.k_grid[0]}..{self.k_grid[-1]} ({len(self.k_grid)} values)"
        )


class CellSummary(BaseModel):
    """Aggregate of one (estimator, k) cell over the successful replicates."""

    model_config = ConfigDict(frozen=True)

    estimator: EstimatorKind
    k: int
    mean: float
    mse: float
    bias: float
    variance: float
    median_abs_error: float
    errors: int = Field(ge=0)
    successes: int = Field(ge=0)


class ExperimentResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    config: ExperimentConfig
    cells: List[CellSummary]

    def cell(self, estimator, k: int) -> CellSummary:
        estimator = EstimatorKind(estimator)
        for cell in self.cells:
            if cell.estimator is estimator and cell.k == k:
                return cell
        raise KeyError((estimator.value, k))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [[cell.estimator.value, cell.k, cell.mean, cell.mse, cell.errors] for cell in self.cells],
            columns=RESULT_COLUMNS,
        )

    def to_csv(self, path_or_buf=None) -> Optional[str]:
        return self.to_frame().to_csv(path_or_buf, index=False, lineterminator='\n')


class AsymptoticCheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    law: LimitLaw
    k: int
    k_prime: int
    values: List[float]
    ks_distance: float = Field(ge=0, le=1)
    p_value: float = Field(ge=0, le=1)
    error_count: int = Field(ge=0)

    def to_csv(self, path_or_buf=None) -> Optional[str]:
        """Sorted standardized values under a `value` header, then `ks_distance,<value>`."""
        body = pd.DataFrame({'value': self.values}).to_csv(index=False, lineterminator='\n')
        text = body + f"ks_distance,{self.ks_distance!r}\n"
        if path_or_buf is None:
            return text
        if hasattr(path_or_buf, 'write'):
            path_or_buf.write(text)
        else:
            with open(path_or_buf, 'w', newline='') as handle:
                handle.write(text)
        return None
