from math import nan
from pathlib import Path
from typing import Sequence

import numpy as np
from pandas import DataFrame, read_csv, to_datetime
from pandas.errors import EmptyDataError, ParserError

from ..consts import DATE_COLUMN, UTF8
from ..logging import log
from .types import (
    Column,
    MalformedCsv,
    MissingColumn,
    MissingPolicy,
    NonFiniteValue,
    NonMonotonicDates,
    Schema,
    TimeSeriesFrame,
    require_roles,
)


class MissingFile(MalformedCsv):
    pass


def _parse_float(cell: str) -> float:
    try:
        return float(cell)
    except ValueError:
        return nan


def _read(path: Path) -> DataFrame:
    try:
        return read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            encoding=UTF8,
            skipinitialspace=True,
        )
    except FileNotFoundError:
        raise MissingFile(f"file not found :: {path}")
    except (EmptyDataError, ParserError, UnicodeDecodeError) as e:
        raise MalformedCsv(f"{path} :: {e}")


def _describe(df: DataFrame, mask: np.ndarray, names: Sequence[str]) -> str:
    row, col = np.argwhere(mask)[0]
    return f"{names[col]} @ {df[DATE_COLUMN].iloc[row].date()}"


def load_csv(
    path: Path, schema: Schema, require_targets: bool = True
) -> TimeSeriesFrame:
    raw = _read(path)

    names = [decl.name for decl in schema.columns]
    for name in (DATE_COLUMN, *names):
        if name not in raw.columns:
            raise MissingColumn(f"{path} :: {name}")

    df = DataFrame({name: raw[name].map(_parse_float) for name in names})
    dates = to_datetime(raw[DATE_COLUMN], format="%Y-%m-%d", errors="coerce")
    if dates.isna().any():
        bad = raw[DATE_COLUMN][dates.isna()].iloc[0]
        raise MalformedCsv(f"{path} :: unparseable date {bad!r}")
    df.insert(0, DATE_COLUMN, dates)

    if df[DATE_COLUMN].duplicated().any():
        dup = df[DATE_COLUMN][df[DATE_COLUMN].duplicated()].iloc[0]
        raise NonMonotonicDates(f"{path} :: duplicate date {dup.date()}")
    if not df[DATE_COLUMN].is_monotonic_increasing:
        if schema.sort:
            df = df.sort_values(DATE_COLUMN, kind="stable")
        else:
            raise NonMonotonicDates(f"{path} :: dates not sorted")
    df = df.reset_index(drop=True)

    values = df[names].to_numpy(dtype=np.float64)
    missing = ~np.isfinite(values)
    if missing.any():
        if schema.missing is MissingPolicy.reject:
            raise NonFiniteValue(f"{path} :: {_describe(df, missing, names)}")
        elif schema.missing is MissingPolicy.drop:
            keep = ~missing.any(axis=1)
            log.warning("%s", f"{path} :: dropped {int((~keep).sum())} rows")
            df = df[keep].reset_index(drop=True)
        elif schema.missing is MissingPolicy.ffill:
            filled = df[names].mask(missing).ffill()
            df = df.assign(**{name: filled[name] for name in names})
            left = ~np.isfinite(df[names].to_numpy(dtype=np.float64))
            if left.any():
                raise NonFiniteValue(f"{path} :: {_describe(df, left, names)}")
            log.info("%s", f"{path} :: forward filled {int(missing.sum())} cells")
        else:
            assert False

    values = df[names].to_numpy(dtype=np.float64, copy=True)
    for idx, decl in enumerate(schema.columns):
        if decl.log:
            column = values[:, idx]
            if (column <= 0).any():
                raise NonFiniteValue(f"{path} :: log of non-positive {decl.name}")
            values[:, idx] = np.log(column)

    frame = TimeSeriesFrame(
        columns=tuple(
            Column(name=decl.name, role=decl.role) for decl in schema.columns
        ),
        dates=tuple(ts.date() for ts in df[DATE_COLUMN]),
        values=values,
    )
    if require_targets:
        require_roles(frame)
    return frame


def write_csv(frame: TimeSeriesFrame, path: Path) -> None:
    df = DataFrame(
        {
            DATE_COLUMN: [day.isoformat() for day in frame.dates],
            **{
                name: [repr(float(x)) for x in frame.column(name)]
                for name in frame.names
            },
        },
        columns=[DATE_COLUMN, *frame.names],
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, encoding=UTF8, lineterminator="\n")
