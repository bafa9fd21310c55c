from bisect import bisect_left
from math import floor, isclose
from typing import Tuple

from .types import (
    BadFractions,
    EmptyRegime,
    Fractions,
    FrameTooSmall,
    RegimeSpec,
    SplitFrame,
    TimeSeriesFrame,
)

MIN_ROWS = 10
_EPS = 1e-9


def slice_regime(frame: TimeSeriesFrame, regime: RegimeSpec) -> TimeSeriesFrame:
    lo = bisect_left(frame.dates, regime.start)
    hi = bisect_left(frame.dates, regime.end)
    if lo >= hi:
        raise EmptyRegime(f"{regime.name} :: [{regime.start}, {regime.end})")
    return frame.take(lo, hi)


def block_sizes(n: int, fractions: Fractions) -> Tuple[int, int, int]:
    """
    (train, validation, test), floor for train and test, remainder to validation
    """

    f_train, f_test, _ = fractions
    train, test = floor(f_train * n + _EPS), floor(f_test * n + _EPS)
    return train, n - train - test, test


def check_fractions(fractions: Fractions) -> None:
    if len(fractions) != 3 or any(not f > 0 for f in fractions):
        raise BadFractions(f"fractions must be 3 positive numbers :: {fractions}")
    if not isclose(sum(fractions), 1, rel_tol=0, abs_tol=1e-9):
        raise BadFractions(f"fractions must sum to 1 :: {fractions}")


def chronological_split(frame: TimeSeriesFrame, fractions: Fractions) -> SplitFrame:
    check_fractions(fractions)
    n = len(frame)
    if n < MIN_ROWS:
        raise FrameTooSmall(f"need >= {MIN_ROWS} rows to split, got {n}")

    train, validation, test = block_sizes(n, fractions=fractions)
    if not (train and validation and test):
        raise FrameTooSmall(f"empty block :: {(train, validation, test)} of {n}")

    return SplitFrame(
        train=frame.take(0, train),
        validation=frame.take(train, train + validation),
        test=frame.take(train + validation, n),
        fractions=fractions,
    )
