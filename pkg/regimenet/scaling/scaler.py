from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple
from warnings import warn

import numpy as np
from std2.pickle import DecodeError, new_decoder, new_encoder
from yaml import YAMLError, safe_dump, safe_load

from ..consts import SCALER_FORMAT, UTF8
from ..dataset.types import TimeSeriesFrame
from ..shared.errors import DataError, DegenerateColumn


class EmptyFrame(DataError):
    pass


class ColumnMismatch(DataError):
    pass


@dataclass(frozen=True)
class ColumnRange:
    name: str
    x_min: float
    x_max: float


@dataclass(frozen=True)
class MinMaxScaler:
    columns: Sequence[ColumnRange]

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(col.name for col in self.columns)

    @property
    def degenerate(self) -> Tuple[str, ...]:
        return tuple(col.name for col in self.columns if col.x_min == col.x_max)

    def _bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        lo = np.array([col.x_min for col in self.columns], dtype=np.float64)
        hi = np.array([col.x_max for col in self.columns], dtype=np.float64)
        return lo, hi


@dataclass(frozen=True)
class _Sidecar:
    format: str
    columns: Sequence[ColumnRange]


def fit(train: TimeSeriesFrame) -> MinMaxScaler:
    if not len(train):
        raise EmptyFrame("cannot fit a scaler on an empty frame")
    lo, hi = train.values.min(axis=0), train.values.max(axis=0)
    scaler = MinMaxScaler(
        columns=tuple(
            ColumnRange(name=name, x_min=float(l), x_max=float(h))
            for name, l, h in zip(train.names, lo, hi)
        )
    )
    for name in scaler.degenerate:
        warn(DegenerateColumn(f"{name} :: zero range, scaled to constant 0"))
    return scaler


def select(scaler: MinMaxScaler, names: Sequence[str]) -> MinMaxScaler:
    lookup = {col.name: col for col in scaler.columns}
    missing = [name for name in names if name not in lookup]
    if missing:
        raise ColumnMismatch(f"not fitted :: {', '.join(missing)}")
    return MinMaxScaler(columns=tuple(lookup[name] for name in names))


def _check(scaler: MinMaxScaler, frame: TimeSeriesFrame) -> None:
    if scaler.names != frame.names:
        raise ColumnMismatch(f"{frame.names} != fitted {scaler.names}")


def transform(scaler: MinMaxScaler, frame: TimeSeriesFrame) -> TimeSeriesFrame:
    """
    (x - x_min) / (x_max - x_min), not clamped outside the fitted range
    """

    _check(scaler, frame=frame)
    lo, hi = scaler._bounds()
    span = hi - lo
    flat = span == 0
    for name in scaler.degenerate:
        warn(DegenerateColumn(f"{name} :: zero range, scaled to constant 0"))
    scaled = (frame.values - lo) / np.where(flat, 1.0, span)
    scaled[:, flat] = 0.0
    return frame.with_values(scaled)


def inverse_transform(scaler: MinMaxScaler, frame: TimeSeriesFrame) -> TimeSeriesFrame:
    _check(scaler, frame=frame)
    lo, hi = scaler._bounds()
    x = frame.values
    # exact at both ends of the fitted range
    return frame.with_values((1.0 - x) * lo + x * hi)


def dump_scaler(scaler: MinMaxScaler, path: Path) -> None:
    sidecar = _Sidecar(format=SCALER_FORMAT, columns=scaler.columns)
    encoded = new_encoder(_Sidecar)(sidecar)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        safe_dump(encoded, sort_keys=False, allow_unicode=True), encoding=UTF8
    )


def load_scaler(path: Path) -> MinMaxScaler:
    try:
        sidecar: _Sidecar = new_decoder(_Sidecar)(
            safe_load(path.read_text(encoding=UTF8))
        )
    except FileNotFoundError:
        raise DataError(f"file not found :: {path}")
    except (YAMLError, DecodeError) as e:
        raise DataError(f"{path} :: {e}")
    if sidecar.format != SCALER_FORMAT:
        raise DataError(f"{path} :: unknown format {sidecar.format!r}")
    return MinMaxScaler(columns=tuple(sidecar.columns))
