"""Deterministic SVG line and scatter charts.

Charts are emitted as plain SVG text with fixed-precision coordinates, so
identical inputs always produce byte-identical documents and golden-file
diffs stay meaningful. No plotting library is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError
from .series import AnnualSeries

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass(frozen=True)
class ChartStyle:
    width: int = 720
    height: int = 440
    margin_left: int = 64
    margin_right: int = 16
    margin_top: int = 32
    margin_bottom: int = 48
    title: str = ""
    x_label: str = "year"
    y_label: str = ""
    percent_axis: bool = False  # label y ticks as percent while data stays fractional


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 2.5, 5, 10):
        step = mult * mag
        if span / step <= target:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _tick_label(v: float, percent: bool) -> str:
    if percent:
        return f"{v * 100:g}%"
    return f"{v:g}"


def line_chart(
    series: Sequence[AnnualSeries],
    style: ChartStyle | None = None,
    scatter: bool = False,
    regression: tuple[float, float] | None = None,
) -> str:
    """Render series as polylines (or point markers with ``scatter``).

    In time mode all series must share a units tag so the y axis is coherent.
    In scatter mode the first series supplies x values and the second supplies
    y values over their common years, each on its own axis; ``regression``
    draws an (intercept, slope) line.
    """
    if not series:
        raise InputError("no series to plot")
    style = style or ChartStyle()
    if scatter:
        return _scatter_chart(series, style, regression)
    units = {s.units for s in series}
    if len(units) > 1:
        raise InputError(f"mixed units on one axis: {sorted(units)}")
    return _time_chart(series, style)


def _frame(style: ChartStyle):
    x0 = style.margin_left
    y0 = style.margin_top
    x1 = style.width - style.margin_right
    y1 = style.height - style.margin_bottom
    return x0, y0, x1, y1


def _header(style: ChartStyle) -> list[str]:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}" '
        f'height="{style.height}" viewBox="0 0 {style.width} {style.height}">',
        f'<rect width="{style.width}" height="{style.height}" fill="white"/>',
    ]
    if style.title:
        parts.append(
            f'<text x="{style.width // 2}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{_escape(style.title)}</text>'
        )
    return parts


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _axes(style: ChartStyle, x_ticks, y_ticks, sx, sy, x_percent=False) -> list[str]:
    x0, y0, x1, y1 = _frame(style)
    parts = [
        f'<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
    ]
    for t in x_ticks:
        px = sx(t)
        parts.append(f'<line x1="{_fmt(px)}" y1="{y1}" x2="{_fmt(px)}" y2="{y1 + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{_fmt(px)}" y="{y1 + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_tick_label(t, x_percent)}</text>'
        )
    for t in y_ticks:
        py = sy(t)
        parts.append(f'<line x1="{x0 - 5}" y1="{_fmt(py)}" x2="{x0}" y2="{_fmt(py)}" stroke="black"/>')
        parts.append(
            f'<text x="{x0 - 8}" y="{_fmt(py + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_tick_label(t, style.percent_axis)}</text>'
        )
    if style.x_label:
        parts.append(
            f'<text x="{(x0 + x1) // 2}" y="{style.height - 8}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{_escape(style.x_label)}</text>'
        )
    if style.y_label:
        parts.append(
            f'<text x="14" y="{(y0 + y1) // 2}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 14 {(y0 + y1) // 2})">{_escape(style.y_label)}</text>'
        )
    return parts


def _legend(style: ChartStyle, labels: Sequence[str]) -> list[str]:
    x0, y0, x1, _ = _frame(style)
    parts = []
    for i, label in enumerate(labels):
        color = _PALETTE[i % len(_PALETTE)]
        ly = y0 + 14 * i + 6
        parts.append(f'<line x1="{x0 + 8}" y1="{ly}" x2="{x0 + 28}" y2="{ly}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(
            f'<text x="{x0 + 34}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="11">{_escape(label or f"series {i + 1}")}</text>'
        )
    return parts


def _time_chart(series: Sequence[AnnualSeries], style: ChartStyle) -> str:
    x0, y0, x1, y1 = _frame(style)
    lo_year = min(s.start_year for s in series)
    hi_year = max(s.end_year for s in series)
    lo_v = min(min(s.values) for s in series)
    hi_v = max(max(s.values) for s in series)
    if hi_v == lo_v:
        lo_v, hi_v = lo_v - 1.0, hi_v + 1.0
    pad = 0.05 * (hi_v - lo_v)
    lo_v -= pad
    hi_v += pad
    span_years = max(hi_year - lo_year, 1)

    def sx(year: float) -> float:
        return x0 + (year - lo_year) / span_years * (x1 - x0)

    def sy(v: float) -> float:
        return y1 - (v - lo_v) / (hi_v - lo_v) * (y1 - y0)

    parts = _header(style)
    parts += _axes(style, _year_ticks(lo_year, hi_year), _nice_ticks(lo_v, hi_v), sx, sy)
    for i, s in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(f"{_fmt(sx(y))},{_fmt(sy(v))}" for y, v in zip(s.years, s.values))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{points}"/>')
    parts += _legend(style, [s.label for s in series])
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _year_ticks(lo: int, hi: int) -> list[float]:
    span = max(hi - lo, 1)
    step = max(1, int(math.ceil(span / 8)))
    # round the step to a calendar-friendly value
    for nice in (1, 2, 5, 10, 20, 25, 50):
        if step <= nice:
            step = nice
            break
    first = int(math.ceil(lo / step)) * step
    return [float(t) for t in range(first, hi + 1, step)]


def _scatter_chart(series: Sequence[AnnualSeries], style: ChartStyle,
                   regression: tuple[float, float] | None) -> str:
    if len(series) != 2:
        raise InputError("scatter mode needs exactly two series (x then y)")
    from .series import align

    xs, ys, _ = align(series[0], series[1])
    # axes: x from first series, y from second; units may differ per axis
    x0, y0, x1, y1 = _frame(style)
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    if regression is not None:
        a, b = regression
        lo_y = min(lo_y, a + b * lo_x, a + b * hi_x)
        hi_y = max(hi_y, a + b * lo_x, a + b * hi_x)
    if hi_x == lo_x:
        lo_x, hi_x = lo_x - 1.0, hi_x + 1.0
    if hi_y == lo_y:
        lo_y, hi_y = lo_y - 1.0, hi_y + 1.0
    pad_x = 0.05 * (hi_x - lo_x)
    pad_y = 0.05 * (hi_y - lo_y)
    lo_x, hi_x = lo_x - pad_x, hi_x + pad_x
    lo_y, hi_y = lo_y - pad_y, hi_y + pad_y

    def sx(v: float) -> float:
        return x0 + (v - lo_x) / (hi_x - lo_x) * (x1 - x0)

    def sy(v: float) -> float:
        return y1 - (v - lo_y) / (hi_y - lo_y) * (y1 - y0)

    parts = _header(style)
    parts += _axes(style, _nice_ticks(lo_x, hi_x), _nice_ticks(lo_y, hi_y), sx, sy,
                   x_percent=style.percent_axis)
    for xv, yv in zip(xs, ys):
        parts.append(f'<circle cx="{_fmt(sx(xv))}" cy="{_fmt(sy(yv))}" r="3" '
                     f'fill="{_PALETTE[0]}"/>')
    if regression is not None:
        a, b = regression
        parts.append(
            f'<line x1="{_fmt(sx(lo_x))}" y1="{_fmt(sy(a + b * lo_x))}" '
            f'x2="{_fmt(sx(hi_x))}" y2="{_fmt(sy(a + b * hi_x))}" '
            f'stroke="{_PALETTE[1]}" stroke-width="2"/>'
        )
    parts += _legend(style, [series[0].label, series[1].label])
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
