from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from tailindex.exceptions import OrderStatisticIndexError, SampleIngestionError


class OrderedSample(BaseModel):
    """
    An i.i.d. sample stored in ascending order, X_{1,n} <= ... <= X_{n,n}.

    Upper order statistics are addressed from the top: i = 1 is the maximum
    X_{n,n} and i = n the minimum X_{1,n}. Estimators go through
    `upper_order_stat` / `upper_tail` and never index `values` directly.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray

    @field_validator('values', mode='before')
    @classmethod
    def _ascending_read_only(cls, values):
        array = np.array(values, dtype=float)
        if array.ndim != 1 or array.size < 2:
            raise ValueError("an ordered sample needs a flat array of at least 2 values")
        if np.any(np.diff(array) < 0):
            raise ValueError("values must be in ascending order")
        array.flags.writeable = False
        return array

    @classmethod
    def from_raw(cls, data: Sequence[float]) -> "OrderedSample":
        array = np.asarray(data, dtype=float).ravel()

        bad = np.flatnonzero(~np.isfinite(array))
        if bad.size:
            raise SampleIngestionError(
                f"non-finite value {array[bad[0]]!r} at index {int(bad[0])}"
            )
        if array.size < 2:
            raise SampleIngestionError(f"need at least 2 finite values, got {array.size}")

        return cls(values=np.sort(array, kind='stable'))

    @property
    def n(self) -> int:
        return int(self.values.size)

    def upper_order_stat(self, i: int) -> float:
        """X_{n-i+1,n}, the i-th largest value."""
        if not 1 <= i <= self.n:
            raise OrderStatisticIndexError(f"order statistic index {i} outside 1..{self.n}")
        return float(self.values[self.n - i])

    def upper_tail(self, k: int) -> np.ndarray:
        """(X_{n,n}, X_{n-1,n}, ..., X_{n-k+1,n}), largest first."""
        if not 1 <= k <= self.n:
            raise OrderStatisticIndexError(f"tail length {k} outside 1..{self.n}")
        return self.values[self.n - k:][::-1]

    def affine(self, scale: float, shift: float = 0.0) -> "OrderedSample":
        """The sample scale * X + shift; scale must be positive to keep the order."""
        if scale <= 0:
            raise ValueError("scale must be positive")
        return OrderedSample(values=scale * self.values + shift)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrderedSample):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    __hash__ = None


def from_raw(data: Sequence[float]) -> OrderedSample:
    return OrderedSample.from_raw(data)


def upper_order_stat(sample: OrderedSample, i: int) -> float:
    return sample.upper_order_stat(i)
