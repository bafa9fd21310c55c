from dataclasses import dataclass, field
from datetime import date
from enum import Enum, auto
from itertools import chain
from typing import Any, Iterable, Iterator, Mapping, Sequence, Tuple

import numpy as np

from ..shared.errors import ConfigError, DataError


class MissingColumn(DataError):
    pass


class DuplicateColumn(DataError):
    pass


class NonMonotonicDates(DataError):
    pass


class NonFiniteValue(DataError):
    pass


class MalformedCsv(DataError):
    pass


class EmptyRegime(DataError):
    pass


class FrameTooSmall(DataError):
    pass


class BadFractions(ConfigError):
    pass


class BadRegime(ConfigError):
    pass


class Role(Enum):
    input = auto()
    target = auto()


class MissingPolicy(Enum):
    reject = auto()
    drop = auto()
    ffill = auto()


@dataclass(frozen=True)
class Column:
    name: str
    role: Role


@dataclass(frozen=True)
class ColumnDecl:
    name: str
    role: Role
    log: bool = False


@dataclass(frozen=True)
class Schema:
    columns: Sequence[ColumnDecl]
    missing: MissingPolicy = MissingPolicy.reject
    sort: bool = False


@dataclass(frozen=True)
class ObservationRow:
    date: date
    values: Tuple[float, ...]


@dataclass(frozen=True, eq=False)
class TimeSeriesFrame:
    """
    Rows are days, columns are named series

    `values` is a read-only `len(dates) x len(columns)` float64 matrix
    """

    columns: Tuple[Column, ...]
    dates: Tuple[date, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        names = tuple(col.name for col in self.columns)
        if len(set(names)) != len(names):
            raise DuplicateColumn(f"duplicate column names :: {names}")

        shape = len(self.dates), len(self.columns)
        values = np.array(self.values, dtype=np.float64, copy=True)
        if not values.size:
            values = values.reshape(shape)
        if values.shape != shape:
            raise DataError(f"values shape {values.shape} != {shape}")
        if not np.isfinite(values).all():
            raise NonFiniteValue("frame holds NaN or infinite cells")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "dates", tuple(self.dates))

        for lo, hi in zip(self.dates, self.dates[1:]):
            if not lo < hi:
                raise NonMonotonicDates(f"{lo} -> {hi}")

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, TimeSeriesFrame)
            and self.columns == other.columns
            and self.dates == other.dates
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None  # type: ignore

    def __len__(self) -> int:
        return len(self.dates)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(col.name for col in self.columns)

    @property
    def input_names(self) -> Tuple[str, ...]:
        return tuple(col.name for col in self.columns if col.role is Role.input)

    @property
    def target_names(self) -> Tuple[str, ...]:
        return tuple(col.name for col in self.columns if col.role is Role.target)

    @property
    def rows(self) -> Iterator[ObservationRow]:
        for day, row in zip(self.dates, self.values):
            yield ObservationRow(date=day, values=tuple(map(float, row)))

    def _index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise MissingColumn(name)

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self._index(name)]

    def matrix(self, names: Sequence[str]) -> np.ndarray:
        return self.values[:, [self._index(name) for name in names]]

    @property
    def inputs(self) -> np.ndarray:
        return self.matrix(self.input_names)

    @property
    def targets(self) -> np.ndarray:
        return self.matrix(self.target_names)

    def select(self, names: Sequence[str]) -> "TimeSeriesFrame":
        lookup = {col.name: col for col in self.columns}
        missing = [name for name in names if name not in lookup]
        if missing:
            raise MissingColumn(", ".join(missing))
        return TimeSeriesFrame(
            columns=tuple(lookup[name] for name in names),
            dates=self.dates,
            values=self.matrix(names),
        )

    def take(self, start: int, stop: int) -> "TimeSeriesFrame":
        return TimeSeriesFrame(
            columns=self.columns,
            dates=self.dates[start:stop],
            values=self.values[start:stop],
        )

    def with_values(self, values: np.ndarray) -> "TimeSeriesFrame":
        return TimeSeriesFrame(columns=self.columns, dates=self.dates, values=values)


def concat(frames: Iterable[TimeSeriesFrame]) -> TimeSeriesFrame:
    head, *tail = frames
    for frame in tail:
        if frame.columns != head.columns:
            raise MissingColumn(f"{frame.names} != {head.names}")
    everything = (head, *tail)
    return TimeSeriesFrame(
        columns=head.columns,
        dates=tuple(chain.from_iterable(f.dates for f in everything)),
        values=np.concatenate([f.values for f in everything], axis=0),
    )


def require_roles(frame: TimeSeriesFrame) -> None:
    if not frame.input_names:
        raise MissingColumn("no input column declared")
    if not frame.target_names:
        raise MissingColumn("no target column declared")


@dataclass(frozen=True)
class ColumnStats:
    name: str
    n: int
    mean: float
    median: float
    sd: float
    skewness: float
    kurtosis: float
    degenerate: bool


@dataclass(frozen=True)
class DescriptiveStats:
    columns: Tuple[ColumnStats, ...]

    def __getitem__(self, name: str) -> ColumnStats:
        for stats in self.columns:
            if stats.name == name:
                return stats
        else:
            raise KeyError(name)


@dataclass(frozen=True)
class RegimeSpec:
    """
    [start, end)
    """

    name: str
    start: date
    end: date

    def __post_init__(self) -> None:
        if not self.start < self.end:
            raise BadRegime(f"{self.name} :: {self.start} >= {self.end}")

    def overlaps(self, other: "RegimeSpec") -> bool:
        return self.start < other.end and other.start < self.end


def check_disjoint(regimes: Sequence[RegimeSpec]) -> None:
    names = [regime.name for regime in regimes]
    if len(set(names)) != len(names):
        raise BadRegime(f"duplicate regime names :: {names}")
    for i, lhs in enumerate(regimes):
        for rhs in regimes[i + 1 :]:
            if lhs.overlaps(rhs):
                raise BadRegime(f"{lhs.name} overlaps {rhs.name}")


Fractions = Tuple[float, float, float]


@dataclass(frozen=True)
class SplitFrame:
    """
    Chronological blocks, ordered train -> validation -> test

    `fractions` is (train, test, validation)
    """

    train: TimeSeriesFrame
    validation: TimeSeriesFrame
    test: TimeSeriesFrame
    fractions: Fractions

    def __post_init__(self) -> None:
        blocks = (self.train, self.validation, self.test)
        for block in blocks:
            if not len(block):
                raise FrameTooSmall("empty split block")
        for lhs, rhs in zip(blocks, blocks[1:]):
            if not lhs.dates[-1] < rhs.dates[0]:
                raise NonMonotonicDates(f"{lhs.dates[-1]} -> {rhs.dates[0]}")

    def select(self, names: Sequence[str]) -> "SplitFrame":
        return SplitFrame(
            train=self.train.select(names),
            validation=self.validation.select(names),
            test=self.test.select(names),
            fractions=self.fractions,
        )


@dataclass(frozen=True)
class Shock:
    """
    Adds `magnitude * mean` to every value from `index` on
    """

    index: int
    magnitude: float
    columns: Sequence[str] = ()


@dataclass(frozen=True)
class SeriesSpec:
    name: str
    role: Role
    mean: float
    sd: float
    kurtosis: float = 0.0
    lognormal: bool = False
    persistence: float = 0.0
    loadings: Mapping[str, float] = field(default_factory=dict)
    noise: float = 1.0


@dataclass(frozen=True)
class SyntheticSpec:
    start: str
    columns: Sequence[SeriesSpec]
    shocks: Sequence[Shock] = ()
