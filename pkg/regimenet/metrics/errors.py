from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.stats import linregress

from ..shared.errors import DataError

Series = Union[np.ndarray, Sequence[float]]


class LengthMismatch(DataError):
    pass


class EmptyInput(DataError):
    pass


class ZeroActual(DataError):
    pass


@dataclass(frozen=True)
class FittedLine:
    slope: float
    intercept: float
    r: float


def _pair(actual: Series, predicted: Series) -> Tuple[np.ndarray, np.ndarray]:
    s = np.asarray(actual, dtype=np.float64).ravel()
    o = np.asarray(predicted, dtype=np.float64).ravel()
    if len(s) != len(o):
        raise LengthMismatch(f"{len(s)} actual vs {len(o)} predicted")
    if not len(s):
        raise EmptyInput("no observations")
    return s, o


def _nonzero(s: np.ndarray) -> None:
    if (s == 0).any():
        raise ZeroActual(f"{int((s == 0).sum())} actual values are 0")


def rmse(actual: Series, predicted: Series) -> float:
    s, o = _pair(actual, predicted)
    return float(np.sqrt(np.mean(np.square(s - o))))


def mae(actual: Series, predicted: Series) -> float:
    s, o = _pair(actual, predicted)
    return float(np.mean(np.abs(s - o)))


def mape(actual: Series, predicted: Series) -> float:
    """
    In percent
    """

    s, o = _pair(actual, predicted)
    _nonzero(s)
    return float(100 * np.mean(np.abs((s - o) / s)))


def hit_rate(actual: Series, predicted: Series, epsilon: float = 0.1) -> float:
    """
    Share of predictions within `epsilon` relative error of the actual value
    """

    if not epsilon > 0:
        raise DataError(f"epsilon must be > 0 :: {epsilon}")
    s, o = _pair(actual, predicted)
    _nonzero(s)
    return float(np.mean(np.abs(s - o) / np.abs(s) <= epsilon))


def fit_line(actual: Series, predicted: Series) -> FittedLine:
    """
    Least squares line of predicted on actual, with Pearson r
    """

    s, o = _pair(actual, predicted)
    if len(s) < 2 or np.ptp(s) == 0:
        return FittedLine(slope=0.0, intercept=float(np.mean(o)), r=0.0)
    fitted = linregress(s, o)
    r = 0.0 if np.ptp(o) == 0 else float(fitted.rvalue)
    return FittedLine(slope=float(fitted.slope), intercept=float(fitted.intercept), r=r)
