from datetime import date, timedelta
from pathlib import Path
from typing import Any, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from numpy.random import default_rng
from yaml import safe_dump

from ..regimenet.dataset.load import write_csv
from ..regimenet.dataset.synthetic import generate_synthetic
from ..regimenet.dataset.types import (
    Column,
    ColumnDecl,
    Role,
    Schema,
    SeriesSpec,
    Shock,
    SyntheticSpec,
    TimeSeriesFrame,
)

START = date(2020, 1, 1)

LINEAR_INPUTS = ("x1", "x2", "x3", "x4", "x5")
LINEAR_TARGET = "y"


def days(n: int, start: date = START) -> Tuple[date, ...]:
    return tuple(start + timedelta(days=i) for i in range(n))


def frame_of(
    columns: Sequence[Tuple[str, Role]], values: Any, start: date = START
) -> TimeSeriesFrame:
    values = np.asarray(values, dtype=np.float64)
    return TimeSeriesFrame(
        columns=tuple(Column(name=name, role=role) for name, role in columns),
        dates=days(len(values), start=start),
        values=values,
    )


def schema_of(frame: TimeSeriesFrame) -> Schema:
    return Schema(
        columns=tuple(ColumnDecl(name=col.name, role=col.role) for col in frame.columns)
    )


def linear_frame(n: int = 400, seed: int = 0) -> TimeSeriesFrame:
    """
    y = 0.5 x1 - 0.2 x2, no noise, x3 .. x5 irrelevant
    """

    rng = default_rng(seed)
    x1 = rng.uniform(100, 200, size=n)
    x2 = rng.uniform(0, 50, size=n)
    rest = rng.uniform(0, 1, size=(n, 3))
    y = 0.5 * x1 - 0.2 * x2
    values = np.column_stack((x1, x2, rest, y))
    columns = (
        *((name, Role.input) for name in LINEAR_INPUTS),
        (LINEAR_TARGET, Role.target),
    )
    return frame_of(columns, values=values)


def two_regime_spec(shock_at: int) -> SyntheticSpec:
    """
    Two inputs, two targets, one level shock
    """

    return SyntheticSpec(
        start=START.isoformat(),
        columns=(
            SeriesSpec(name="a", role=Role.input, mean=100.0, sd=10.0),
            SeriesSpec(name="b", role=Role.input, mean=50.0, sd=5.0, kurtosis=1.0),
            SeriesSpec(
                name="s",
                role=Role.target,
                mean=1000.0,
                sd=100.0,
                loadings={"a": 0.8, "b": 0.4},
                noise=0.1,
            ),
            SeriesSpec(
                name="t",
                role=Role.target,
                mean=500.0,
                sd=40.0,
                loadings={"a": -0.3, "b": 0.9},
                noise=0.1,
            ),
        ),
        shocks=(Shock(index=shock_at, magnitude=0.2),),
    )


def columns_yml(frame: TimeSeriesFrame) -> List[Mapping[str, str]]:
    return [{"name": col.name, "role": col.role.name} for col in frame.columns]


def write_config(
    path: Path,
    data: Path,
    frame: TimeSeriesFrame,
    out: Path,
    regimes: Sequence[Tuple[str, date, date]] = (),
    extra: Optional[Mapping[str, Any]] = None,
) -> Path:
    tree = {
        "data": {"path": str(data), "columns": columns_yml(frame)},
        "regimes": [
            {"name": name, "start": start.isoformat(), "end": end.isoformat()}
            for name, start, end in regimes
        ],
        "network": {"hidden": 6},
        "training": {"max_epochs": 200, "patience": 20},
        "output": str(out),
        **(extra or {}),
    }
    path.write_text(safe_dump(tree, sort_keys=False), encoding="UTF-8")
    return path


class ReadCounter(TimeSeriesFrame):
    """
    Records reads of the row data once armed
    """

    @classmethod
    def of(cls, frame: TimeSeriesFrame) -> "ReadCounter":
        counter = cls(columns=frame.columns, dates=frame.dates, values=frame.values)
        object.__setattr__(counter, "armed", False)
        object.__setattr__(counter, "reads", 0)
        return counter

    def arm(self) -> None:
        object.__setattr__(self, "armed", True)

    def __getattribute__(self, name: str) -> Any:
        if name == "values" and object.__getattribute__(self, "__dict__").get("armed"):
            reads = object.__getattribute__(self, "reads")
            object.__setattr__(self, "reads", reads + 1)
        return object.__getattribute__(self, name)


SHOCK_AT = 200
BEFORE = ("before", START, date(2020, 7, 19))
AFTER = ("after", date(2020, 7, 19), date(2021, 2, 4))


def write_synthetic(path: Path, n: int = 400, seed: int = 0) -> TimeSeriesFrame:
    """
    `two_regime_spec` rows to `path`, shocked at row min(200, n // 2)
    """

    spec = two_regime_spec(shock_at=min(SHOCK_AT, n // 2))
    frame = generate_synthetic(spec, n=n, seed=seed)
    write_csv(frame, path)
    return frame
