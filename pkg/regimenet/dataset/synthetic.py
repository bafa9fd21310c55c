from datetime import date, timedelta
from math import exp, sqrt
from typing import MutableMapping

import numpy as np
from numpy.random import Generator, default_rng
from scipy.optimize import brentq
from scipy.signal import lfilter
from scipy.stats import rankdata

from ..shared.errors import ConfigError
from .types import (
    Column,
    FrameTooSmall,
    SeriesSpec,
    SyntheticSpec,
    TimeSeriesFrame,
    require_roles,
)


class BadSeries(ConfigError):
    pass


def _lognormal_kurtosis(s2: float) -> float:
    return exp(4 * s2) + 2 * exp(3 * s2) + 3 * exp(2 * s2) - 6


def _innovations(rng: Generator, spec: SeriesSpec, n: int) -> np.ndarray:
    """
    Zero mean, unit variance draws with the requested excess kurtosis
    """

    k = spec.kurtosis
    if spec.lognormal:
        if not k > 0:
            raise BadSeries(f"{spec.name} :: log-normal needs kurtosis > 0")
        s2 = brentq(lambda s: _lognormal_kurtosis(s) - k, 1e-12, 10.0)
        x = rng.lognormal(mean=0.0, sigma=sqrt(s2), size=n)
        return (x - exp(s2 / 2)) / sqrt((exp(s2) - 1) * exp(s2))
    elif k == 0:
        return rng.standard_normal(size=n)
    elif k > 0:
        df = 4 + 6 / k
        return rng.standard_t(df, size=n) / sqrt(df / (df - 2))
    elif k > -2:
        a = (-6 / k - 3) / 2
        x = rng.beta(a, a, size=n)
        return (x - 0.5) * sqrt(4 * (2 * a + 1))
    else:
        raise BadSeries(f"{spec.name} :: excess kurtosis must exceed -2")


def _persist(z: np.ndarray, phi: float) -> np.ndarray:
    if not 0 <= phi < 1:
        raise BadSeries(f"persistence must lie in [0, 1) :: {phi}")
    elif phi == 0 or not len(z):
        return z
    else:
        c = sqrt(1 - phi**2)
        y, _ = lfilter([c], [1.0, -phi], z, zi=[(1 - c) * z[0]])
        return y


def _reorder(mixed: np.ndarray, draws: np.ndarray) -> np.ndarray:
    """
    `draws` rearranged to follow the ranks of `mixed`

    Keeps the dependence on the loaded columns, the marginal is that of `draws`
    """

    ranks = rankdata(mixed, method="ordinal").astype(np.intp) - 1
    return np.sort(draws)[ranks]


def generate_synthetic(spec: SyntheticSpec, n: int, seed: int) -> TimeSeriesFrame:
    if n < 2:
        raise FrameTooSmall(f"need n >= 2, got {n}")

    rng = default_rng(seed)
    standardized: MutableMapping[str, np.ndarray] = {}
    columns = []

    for series in spec.columns:
        if not series.sd >= 0:
            raise BadSeries(f"{series.name} :: negative sd")
        z = _persist(_innovations(rng, spec=series, n=n), phi=series.persistence)

        if series.loadings:
            for name in series.loadings:
                if name not in standardized:
                    raise BadSeries(f"{series.name} :: unknown loading {name}")
            mixed = sum(w * standardized[name] for name, w in series.loadings.items())
            norm = sqrt(sum(w**2 for w in series.loadings.values()) + series.noise**2)
            if norm:
                mixed = (mixed + series.noise * z) / norm
                z = _reorder(mixed, draws=_innovations(rng, spec=series, n=n))

        standardized[series.name] = z
        columns.append(series.mean + series.sd * z)

    values = np.column_stack(columns)
    for shock in spec.shocks:
        if not 0 <= shock.index < n:
            raise BadSeries(f"shock index {shock.index} outside [0, {n})")
        for idx, series in enumerate(spec.columns):
            if not shock.columns or series.name in shock.columns:
                values[shock.index :, idx] += shock.magnitude * series.mean

    start = date.fromisoformat(spec.start)
    frame = TimeSeriesFrame(
        columns=tuple(Column(name=s.name, role=s.role) for s in spec.columns),
        dates=tuple(start + timedelta(days=i) for i in range(n)),
        values=values,
    )
    require_roles(frame)
    return frame
