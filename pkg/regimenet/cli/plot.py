from enum import Enum, auto
from pathlib import Path
from string import Template
from typing import Iterable, Iterator, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np

from ..consts import UTF8
from ..dataset.types import MalformedCsv
from ..metrics.errors import fit_line
from ..metrics.report import PredictionSeries, read_predictions

_WIDTH, _HEIGHT, _PAD = 800, 450, 60
_ACTUAL, _PREDICTED, _FITTED = "#d62728", "#1f77b4", "#7f7f7f"

_TPL = """
<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">
<rect width="100%" height="100%" fill="white"/>
<text x="${mid}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">${title}</text>
<g stroke="black" stroke-width="1">
<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}"/>
<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}"/>
</g>
<g font-family="sans-serif" font-size="11">
${labels}
</g>
${body}
</svg>
""".lstrip()


class PlotKind(Enum):
    overlay = auto()
    scatter = auto()


def _pt(x: float, y: float) -> str:
    return f"{x:.2f},{y:.2f}"


def _range(*xs: np.ndarray) -> Tuple[float, float]:
    lo = float(min(x.min() for x in xs))
    hi = float(max(x.max() for x in xs))
    return (lo - 1, hi + 1) if lo == hi else (lo, hi)


def _project(x: np.ndarray, lo: float, hi: float, a: float, b: float) -> np.ndarray:
    return a + (x - lo) / (hi - lo) * (b - a)


def _xs(n: int) -> np.ndarray:
    if n == 1:
        return np.array([(_PAD + _WIDTH - _PAD) / 2])
    else:
        return _project(np.arange(n, dtype=np.float64), 0, n - 1, _PAD, _WIDTH - _PAD)


def _ys(y: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return _project(y, lo, hi, _HEIGHT - _PAD, _PAD)


def _text(x: float, y: float, anchor: str, text: str, fill: str = "black") -> str:
    return (
        f'<text x="{x:.2f}" y="{y:.2f}" text-anchor="{anchor}" fill="{fill}">'
        f"{escape(text)}</text>"
    )


def _polyline(xs: np.ndarray, ys: np.ndarray, colour: str, name: str) -> str:
    points = " ".join(_pt(x, y) for x, y in zip(xs, ys))
    return (
        f'<polyline class="{name}" fill="none" stroke="{colour}" stroke-width="1.5"'
        f' points="{points}"/>'
    )


def _legend(entries: Iterable[Tuple[str, str]]) -> Iterator[str]:
    for idx, (colour, label) in enumerate(entries):
        y = _PAD + 14 * idx
        yield _text(_WIDTH - _PAD, y, anchor="end", text=label, fill=colour)


def _render(title: str, labels: Sequence[str], body: Sequence[str]) -> str:
    return Template(_TPL).substitute(
        width=_WIDTH,
        height=_HEIGHT,
        mid=_WIDTH // 2,
        title=escape(title),
        x0=_PAD,
        x1=_WIDTH - _PAD,
        y0=_HEIGHT - _PAD,
        y1=_PAD,
        labels="\n".join(labels),
        body="\n".join(body),
    )


def _y_labels(lo: float, hi: float) -> Iterator[str]:
    yield _text(_PAD - 6, _HEIGHT - _PAD, anchor="end", text=f"{lo:.6g}")
    yield _text(_PAD - 6, _PAD + 4, anchor="end", text=f"{hi:.6g}")


def overlay_svg(series: PredictionSeries, title: str) -> str:
    """
    Actual (red) and predicted (blue) against time
    """

    lo, hi = _range(series.actual, series.predicted)
    xs = _xs(len(series.dates))
    first, last = series.dates[0], series.dates[-1]
    labels = (
        *_y_labels(lo, hi),
        _text(_PAD, _HEIGHT - _PAD + 18, anchor="start", text=first.isoformat()),
        _text(_WIDTH - _PAD, _HEIGHT - _PAD + 18, anchor="end", text=last.isoformat()),
        _text(_WIDTH / 2, _HEIGHT - 12, anchor="middle", text="date"),
        *_legend(((_ACTUAL, "actual"), (_PREDICTED, "predicted"))),
    )
    body = (
        _polyline(xs, _ys(series.actual, lo, hi), colour=_ACTUAL, name="actual"),
        _polyline(
            xs, _ys(series.predicted, lo, hi), colour=_PREDICTED, name="predicted"
        ),
    )
    return _render(title, labels=labels, body=body)


def scatter_svg(series: PredictionSeries, title: str) -> str:
    """
    Predicted against actual, with the least squares line
    """

    x_lo, x_hi = _range(series.actual)
    y_lo, y_hi = _range(series.predicted)
    line = fit_line(series.actual, series.predicted)

    xs = _project(series.actual, x_lo, x_hi, _PAD, _WIDTH - _PAD)
    ys = _ys(series.predicted, y_lo, y_hi)
    dots = (
        f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2" fill="{_PREDICTED}"/>'
        for x, y in zip(xs, ys)
    )

    ends = np.array([x_lo, x_hi])
    fitted = np.clip(line.slope * ends + line.intercept, y_lo, y_hi)
    body = (
        *dots,
        _polyline(
            _project(ends, x_lo, x_hi, _PAD, _WIDTH - _PAD),
            _ys(fitted, y_lo, y_hi),
            colour=_FITTED,
            name="fitted",
        ),
    )
    fit_label = f"y = {line.slope:.4g} x + {line.intercept:.4g}, r = {line.r:.4f}"
    labels = (
        *_y_labels(y_lo, y_hi),
        _text(_PAD, _HEIGHT - _PAD + 18, anchor="start", text=f"{x_lo:.6g}"),
        _text(_WIDTH - _PAD, _HEIGHT - _PAD + 18, anchor="end", text=f"{x_hi:.6g}"),
        _text(_WIDTH / 2, _HEIGHT - 12, anchor="middle", text="actual"),
        _text(18, _HEIGHT / 2, anchor="middle", text="predicted"),
        *_legend(((_FITTED, fit_label),)),
    )
    return _render(title, labels=labels, body=body)


def plot(predictions: Path, out: Path, kind: PlotKind, title: str = "") -> None:
    series = read_predictions(predictions)
    if not series.dates:
        raise MalformedCsv(f"{predictions} :: no rows to plot")

    label = title or predictions.stem
    svg = (
        overlay_svg(series, title=label)
        if kind is PlotKind.overlay
        else scatter_svg(series, title=label)
    )
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(svg, encoding=UTF8)
