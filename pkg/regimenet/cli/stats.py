from pathlib import Path
from typing import Iterator, Mapping, Sequence, Tuple

from pandas import DataFrame

from ..consts import UTF8
from ..dataset.load import load_csv
from ..dataset.split import slice_regime
from ..dataset.stats import descriptive_stats
from ..dataset.types import DescriptiveStats, TimeSeriesFrame
from ..shared.settings import ExperimentConfig
from ..shared.table import table
from .config import regime_specs
from .run import WHOLE

_HEADERS = ("n", "mean", "median", "sd", "skewness", "kurtosis")
_COLUMNS = ("scope", "column", *_HEADERS, "degenerate")


def _scopes(
    frame: TimeSeriesFrame, settings: ExperimentConfig, by_regime: bool
) -> Iterator[Tuple[str, DescriptiveStats]]:
    yield WHOLE, descriptive_stats(frame)
    if by_regime:
        for regime in regime_specs(settings):
            yield regime.name, descriptive_stats(slice_regime(frame, regime=regime))


def _fmt(x: float) -> str:
    return f"{x:,.4g}" if abs(x) < 1e4 else f"{x:,.0f}"


def render_stats(scope: str, stats: DescriptiveStats) -> str:
    rows: Sequence[Tuple[str, Mapping[str, str]]] = tuple(
        (
            f"{col.name}{' *' if col.degenerate else ''}",
            {
                "n": str(col.n),
                "mean": _fmt(col.mean),
                "median": _fmt(col.median),
                "sd": _fmt(col.sd),
                "skewness": _fmt(col.skewness),
                "kurtosis": _fmt(col.kurtosis),
            },
        )
        for col in stats.columns
    )
    return f"# {scope}\n\n" + table(_HEADERS, rows)


def dump_stats_csv(scopes: Sequence[Tuple[str, DescriptiveStats]], path: Path) -> None:
    df = DataFrame(
        [
            {
                "scope": scope,
                "column": col.name,
                "n": str(col.n),
                "mean": repr(col.mean),
                "median": repr(col.median),
                "sd": repr(col.sd),
                "skewness": repr(col.skewness),
                "kurtosis": repr(col.kurtosis),
                "degenerate": str(col.degenerate).lower(),
            }
            for scope, stats in scopes
            for col in stats.columns
        ],
        columns=_COLUMNS,
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, encoding=UTF8, lineterminator="\n")


def stats(settings: ExperimentConfig, by_regime: bool) -> str:
    """
    Text tables for stdout, `<output>/stats.csv` as a side effect
    """

    frame = load_csv(
        Path(settings.data.path), schema=settings.data.schema, require_targets=False
    )
    scopes = tuple(_scopes(frame, settings=settings, by_regime=by_regime))
    dump_stats_csv(scopes, Path(settings.output) / "stats.csv")
    return "\n".join(render_stats(scope, stats=s) for scope, s in scopes)
