from warnings import warn

import numpy as np
from scipy.stats import kurtosis, skew

from ..shared.errors import DegenerateColumn
from .types import ColumnStats, DescriptiveStats, FrameTooSmall, TimeSeriesFrame


def _column(name: str, x: np.ndarray) -> ColumnStats:
    sd = float(np.std(x, ddof=1))
    degenerate = sd == 0 or np.ptp(x) == 0
    if degenerate:
        warn(DegenerateColumn(f"{name} :: zero variance, moments reported as 0"))
        skewness, kurt = 0.0, 0.0
    else:
        skewness = float(skew(x, bias=True))
        kurt = float(kurtosis(x, fisher=True, bias=True))

    return ColumnStats(
        name=name,
        n=len(x),
        mean=float(np.mean(x)),
        median=float(np.median(x)),
        sd=0.0 if degenerate else sd,
        skewness=skewness,
        kurtosis=kurt,
        degenerate=degenerate,
    )


def descriptive_stats(frame: TimeSeriesFrame) -> DescriptiveStats:
    if len(frame) < 2:
        raise FrameTooSmall(f"descriptive statistics need >= 2 rows, got {len(frame)}")
    return DescriptiveStats(
        columns=tuple(_column(name, frame.column(name)) for name in frame.names)
    )
