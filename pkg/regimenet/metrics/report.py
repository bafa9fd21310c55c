from dataclasses import dataclass
from datetime import date
from enum import Enum, auto
from math import isfinite
from pathlib import Path
from typing import Iterator, Mapping, MutableMapping, Optional, Sequence, Tuple

import numpy as np
from pandas import DataFrame, read_csv
from pandas.errors import EmptyDataError, ParserError

from ..consts import DATE_COLUMN, UTF8
from ..dataset.types import (
    Column,
    MalformedCsv,
    MissingColumn,
    Role,
    SplitFrame,
    TimeSeriesFrame,
)
from ..logging import log
from ..network.forward import forward_batch
from ..network.types import Model
from ..scaling.scaler import MinMaxScaler, inverse_transform, select, transform
from ..shared.table import table
from .errors import ZeroActual, hit_rate, mae, mape, rmse


class Units(Enum):
    scaled = auto()
    original = auto()


@dataclass(frozen=True)
class Scores:
    mae: float
    rmse: float
    mape: Optional[float]
    hit_rate: Optional[float]


@dataclass(frozen=True)
class Cell:
    regime: str
    target: str
    n: int
    scaled: Scores
    original: Scores

    def scores(self, units: Units) -> Scores:
        return self.scaled if units is Units.scaled else self.original


@dataclass(frozen=True)
class EvaluationReport:
    cells: Tuple[Cell, ...]

    @property
    def regimes(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(cell.regime for cell in self.cells))

    @property
    def targets(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(cell.target for cell in self.cells))

    def cell(self, regime: str, target: str) -> Cell:
        for cell in self.cells:
            if (cell.regime, cell.target) == (regime, target):
                return cell
        else:
            raise KeyError((regime, target))


@dataclass(frozen=True)
class PredictionSeries:
    """
    One target over a regime, original units
    """

    dates: Tuple[date, ...]
    blocks: Tuple[str, ...]
    actual: np.ndarray
    predicted: np.ndarray


def score(
    actual: np.ndarray, predicted: np.ndarray, epsilon: float, label: str
) -> Scores:
    try:
        pct = mape(actual, predicted)
        hits = hit_rate(actual, predicted, epsilon=epsilon)
    except ZeroActual as e:
        log.warning("%s", f"{label} :: {e}, mape and hit rate left out")
        pct, hits = None, None
    return Scores(
        mae=mae(actual, predicted),
        rmse=rmse(actual, predicted),
        mape=pct,
        hit_rate=hits,
    )


def _targets(models: Sequence[Model]) -> Tuple[str, ...]:
    targets = tuple(target for model in models for target in model.targets)
    if len(set(targets)) != len(targets):
        raise MissingColumn(f"several models predict the same column :: {targets}")
    return targets


def predict_scaled(
    models: Sequence[Model], scaler: MinMaxScaler, frame: TimeSeriesFrame
) -> np.ndarray:
    """
    Forward pass in scaled units, one column per target across `models`
    """

    _targets(models)
    outputs = []
    for model in models:
        inputs = frame.select(model.inputs)
        scaled = transform(select(scaler, model.inputs), inputs)
        outputs.append(forward_batch(model.network, scaled.values))
    if not outputs:
        return np.zeros((len(frame), 0))
    return np.concatenate(outputs, axis=1)


def _descale(
    models: Sequence[Model],
    scaler: MinMaxScaler,
    dates: Sequence[date],
    scaled: np.ndarray,
) -> TimeSeriesFrame:
    targets = _targets(models)
    frame = TimeSeriesFrame(
        columns=tuple(Column(name=name, role=Role.target) for name in targets),
        dates=tuple(dates),
        values=scaled,
    )
    return inverse_transform(select(scaler, targets), frame)


def predict(
    models: Sequence[Model], scaler: MinMaxScaler, frame: TimeSeriesFrame
) -> TimeSeriesFrame:
    """
    Scale inputs, forward, descale: target columns in original units
    """

    scaled = predict_scaled(models, scaler=scaler, frame=frame)
    return _descale(models, scaler=scaler, dates=frame.dates, scaled=scaled)


def evaluate(
    models: Sequence[Model],
    scaler: MinMaxScaler,
    split: SplitFrame,
    regime: str,
    epsilon: float,
) -> EvaluationReport:
    """
    Test block only, each target scored in scaled and original units
    """

    test = split.test
    targets = _targets(models)
    target_scaler = select(scaler, targets)

    scaled_pred = predict_scaled(models, scaler=scaler, frame=test)
    original_pred = _descale(
        models, scaler=scaler, dates=test.dates, scaled=scaled_pred
    )
    actual = test.select(targets)
    scaled_actual = transform(target_scaler, actual)

    def cont() -> Iterator[Cell]:
        for idx, target in enumerate(targets):
            label = f"{regime} / {target}"
            yield Cell(
                regime=regime,
                target=target,
                n=len(test),
                scaled=score(
                    scaled_actual.column(target),
                    scaled_pred[:, idx],
                    epsilon=epsilon,
                    label=f"{label} (scaled)",
                ),
                original=score(
                    actual.column(target),
                    original_pred.column(target),
                    epsilon=epsilon,
                    label=label,
                ),
            )

    return EvaluationReport(cells=tuple(cont()))


def combine(reports: Sequence[EvaluationReport]) -> EvaluationReport:
    cells = tuple(cell for report in reports for cell in report.cells)
    return EvaluationReport(cells=cells)


_REPORT_COLUMNS = ("regime", "target", "units", "n", "mae", "rmse", "mape", "hit_rate")


def _num(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def dump_report_csv(report: EvaluationReport, path: Path) -> None:
    def cont() -> Iterator[Mapping[str, str]]:
        for cell in report.cells:
            for units in Units:
                scores = cell.scores(units)
                yield {
                    "regime": cell.regime,
                    "target": cell.target,
                    "units": units.name,
                    "n": str(cell.n),
                    "mae": _num(scores.mae),
                    "rmse": _num(scores.rmse),
                    "mape": _num(scores.mape),
                    "hit_rate": _num(scores.hit_rate),
                }

    df = DataFrame(list(cont()), columns=_REPORT_COLUMNS)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, encoding=UTF8, lineterminator="\n")


def _read_str(path: Path, required: Sequence[str]) -> DataFrame:
    try:
        df = read_csv(path, dtype=str, keep_default_na=False, encoding=UTF8)
    except FileNotFoundError:
        raise MalformedCsv(f"file not found :: {path}")
    except (EmptyDataError, ParserError, UnicodeDecodeError) as e:
        raise MalformedCsv(f"{path} :: {e}")
    missing = [name for name in required if name not in df.columns]
    if missing:
        raise MalformedCsv(f"{path} :: missing columns {', '.join(missing)}")
    return df


def _float(path: Path, cell: str) -> float:
    try:
        x = float(cell)
    except ValueError:
        raise MalformedCsv(f"{path} :: bad number {cell!r}")
    if not isfinite(x):
        raise MalformedCsv(f"{path} :: non-finite number {cell!r}")
    return x


def load_report(path: Path) -> EvaluationReport:
    df = _read_str(path, required=_REPORT_COLUMNS)

    def opt(cell: str) -> Optional[float]:
        return None if cell == "" else _float(path, cell)

    order: MutableMapping[
        Tuple[str, str], Tuple[int, MutableMapping[Units, Scores]]
    ] = {}
    for row in df.itertuples(index=False):
        try:
            units = Units[row.units]
            n = int(row.n)
        except (KeyError, ValueError):
            raise MalformedCsv(f"{path} :: bad row {tuple(row)}")
        scores = Scores(
            mae=_float(path, row.mae),
            rmse=_float(path, row.rmse),
            mape=opt(row.mape),
            hit_rate=opt(row.hit_rate),
        )
        _, acc = order.setdefault((row.regime, row.target), (n, {}))
        acc[units] = scores

    def cont() -> Iterator[Cell]:
        for (regime, target), (n, acc) in order.items():
            if set(acc) != set(Units):
                raise MalformedCsv(f"{path} :: {regime} / {target} lacks a unit system")
            yield Cell(
                regime=regime,
                target=target,
                n=n,
                scaled=acc[Units.scaled],
                original=acc[Units.original],
            )

    return EvaluationReport(cells=tuple(cont()))


_CRITERIA = (
    ("MAE", lambda s: s.mae),
    ("RMSE", lambda s: s.rmse),
    ("MAPE %", lambda s: s.mape),
    ("hit rate", lambda s: s.hit_rate),
)


def _fmt(x: Optional[float]) -> str:
    return "n/a" if x is None else f"{x:.6g}"


def render_report(report: EvaluationReport, preamble: Sequence[str] = ()) -> str:
    """
    Regimes across, targets x criteria down, one table per unit system
    """

    regimes = report.regimes
    lookup = {(cell.regime, cell.target): cell for cell in report.cells}

    def section(units: Units) -> str:
        rows = []
        for target in report.targets:
            cells = {regime: lookup.get((regime, target)) for regime in regimes}
            rows.append(
                (
                    f"{target} :: n",
                    {r: str(c.n) for r, c in cells.items() if c},
                )
            )
            for label, pick in _CRITERIA:
                rows.append(
                    (
                        f"{target} :: {label}",
                        {r: _fmt(pick(c.scores(units))) for r, c in cells.items() if c},
                    )
                )
        return f"# {units.name} units\n\n" + table(regimes, rows)

    head = "".join(f"{line}\n" for line in preamble)
    body = "\n".join(section(units) for units in (Units.original, Units.scaled))
    return f"{head}\n{body}" if head else body


def write_predictions(series: PredictionSeries, path: Path) -> None:
    df = DataFrame(
        {
            DATE_COLUMN: [day.isoformat() for day in series.dates],
            "block": list(series.blocks),
            "actual": [repr(float(x)) for x in series.actual],
            "predicted": [repr(float(x)) for x in series.predicted],
        },
        columns=[DATE_COLUMN, "block", "actual", "predicted"],
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, encoding=UTF8, lineterminator="\n")


def read_predictions(path: Path) -> PredictionSeries:
    df = _read_str(path, required=(DATE_COLUMN, "actual", "predicted"))
    try:
        dates = tuple(date.fromisoformat(cell) for cell in df[DATE_COLUMN])
    except ValueError as e:
        raise MalformedCsv(f"{path} :: {e}")
    blocks = tuple(df["block"]) if "block" in df.columns else tuple("" for _ in dates)
    return PredictionSeries(
        dates=dates,
        blocks=blocks,
        actual=np.array([_float(path, c) for c in df["actual"]], dtype=np.float64),
        predicted=np.array(
            [_float(path, c) for c in df["predicted"]], dtype=np.float64
        ),
    )
