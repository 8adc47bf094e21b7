"""Dependency-free SVG line plots for spectra and histograms.

The plots are deliberately plain: one data polyline, an optional fitted
curve overlaid in red, labeled axes with units, and a handful of tick
marks.  Output is well-formed standalone XML, friendly to diffing.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .spectra import HistogramData, Spectrum

_WIDTH, _HEIGHT = 720, 480
_MARGIN_LEFT, _MARGIN_RIGHT = 72, 24
_MARGIN_TOP, _MARGIN_BOTTOM = 40, 56
_DATA_COLOR = "#1f77b4"
_FIT_COLOR = "#d62728"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if not math.isfinite(lo) or not math.isfinite(hi) or hi <= lo:
        return [lo]
    raw = (hi - lo) / max(target - 1, 1)
    power = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * power:
            step = mult * power
            break
    else:
        step = 10.0 * power
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


def _fmt(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return f"{v:.6g}"


class _Frame:
    """Maps data coordinates onto the SVG viewport."""

    def __init__(self, x_lo: float, x_hi: float, y_lo: float, y_hi: float):
        if x_hi <= x_lo:
            x_lo, x_hi = x_lo - 0.5, x_lo + 0.5
        if y_hi <= y_lo:
            y_lo, y_hi = y_lo - 0.5, y_lo + 0.5
        pad = 0.05 * (y_hi - y_lo)
        self.x_lo, self.x_hi = x_lo, x_hi
        self.y_lo, self.y_hi = y_lo - pad, y_hi + pad
        self.plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
        self.plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def x(self, v: float) -> float:
        return _MARGIN_LEFT + (v - self.x_lo) / (self.x_hi - self.x_lo) * self.plot_w

    def y(self, v: float) -> float:
        return _MARGIN_TOP + (self.y_hi - v) / (self.y_hi - self.y_lo) * self.plot_h


def _polyline(frame: _Frame, xs: np.ndarray, ys: np.ndarray, color: str, width: float) -> str:
    points = " ".join(f"{frame.x(x):.2f},{frame.y(y):.2f}" for x, y in zip(xs, ys))
    return f'<polyline fill="none" stroke="{color}" stroke-width="{width}" points="{points}"/>'


def _axes(frame: _Frame, x_label: str, y_label: str, title: str) -> list[str]:
    parts = []
    x0, x1 = _MARGIN_LEFT, _WIDTH - _MARGIN_RIGHT
    y0, y1 = _MARGIN_TOP, _HEIGHT - _MARGIN_BOTTOM
    parts.append(f'<rect x="{x0}" y="{y0}" width="{x1 - x0}" height="{y1 - y0}" fill="none" stroke="#333" stroke-width="1"/>')
    for t in _nice_ticks(frame.x_lo, frame.x_hi):
        px = frame.x(t)
        if x0 - 0.5 <= px <= x1 + 0.5:
            parts.append(f'<line x1="{px:.2f}" y1="{y1}" x2="{px:.2f}" y2="{y1 + 5}" stroke="#333"/>')
            parts.append(
                f'<text x="{px:.2f}" y="{y1 + 20}" font-size="12" text-anchor="middle">{_fmt(t)}</text>'
            )
    for t in _nice_ticks(frame.y_lo, frame.y_hi):
        py = frame.y(t)
        if y0 - 0.5 <= py <= y1 + 0.5:
            parts.append(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="#333"/>')
            parts.append(
                f'<text x="{x0 - 8}" y="{py + 4:.2f}" font-size="12" text-anchor="end">{_fmt(t)}</text>'
            )
    parts.append(
        f'<text x="{(x0 + x1) / 2:.2f}" y="{_HEIGHT - 12}" font-size="14" text-anchor="middle">{escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="18" y="{(y0 + y1) / 2:.2f}" font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 18 {(y0 + y1) / 2:.2f})">{escape(y_label)}</text>'
    )
    if title:
        parts.append(
            f'<text x="{(x0 + x1) / 2:.2f}" y="24" font-size="15" text-anchor="middle">{escape(title)}</text>'
        )
    return parts


def _document(body: list[str], comment: str | None) -> str:
    head = ['<?xml version="1.0" encoding="UTF-8"?>']
    if comment:
        head.append(f"<!-- {escape(comment)} -->")
    head.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    head.append('<rect width="100%" height="100%" fill="white"/>')
    return "\n".join(head + body + ["</svg>"]) + "\n"


def spectrum_svg(
    spectrum: Spectrum,
    fit_counts: np.ndarray | None = None,
    title: str = "",
    comment: str | None = None,
) -> str:
    """Render a spectrum (and optionally a fitted curve) as an SVG string."""
    xs = spectrum.frequency_offset_ghz
    ys = spectrum.counts
    if xs.size == 0:
        return _document(_axes(_Frame(0, 1, 0, 1), "frequency offset (GHz)", "counts", title), comment)
    y_all = ys if fit_counts is None else np.concatenate([ys, np.asarray(fit_counts, dtype=float)])
    frame = _Frame(float(xs[0]), float(xs[-1]), float(np.min(y_all)), float(np.max(y_all)))
    body = _axes(frame, "frequency offset (GHz)", "counts", title)
    body.append(_polyline(frame, xs, ys, _DATA_COLOR, 1.2))
    if fit_counts is not None:
        body.append(_polyline(frame, xs, np.asarray(fit_counts, dtype=float), _FIT_COLOR, 1.5))
    return _document(body, comment)


def histogram_svg(
    histogram: HistogramData,
    fit_axis_ghz: np.ndarray | None = None,
    fit_counts: np.ndarray | None = None,
    title: str = "",
    comment: str | None = None,
) -> str:
    """Render a histogram as a step outline, optionally with a fitted curve."""
    edges = histogram.bin_edges_ghz
    counts = histogram.counts.astype(float)
    xs = np.repeat(edges, 2)
    ys = np.concatenate([[0.0], np.repeat(counts, 2), [0.0]])
    y_max = float(np.max(counts)) if counts.size else 1.0
    if fit_counts is not None:
        y_max = max(y_max, float(np.max(fit_counts)))
    frame = _Frame(float(edges[0]), float(edges[-1]), 0.0, y_max)
    body = _axes(frame, "frequency offset (GHz)", "counts per bin", title)
    body.append(_polyline(frame, xs, ys, _DATA_COLOR, 1.2))
    if fit_counts is not None and fit_axis_ghz is not None:
        body.append(
            _polyline(frame, np.asarray(fit_axis_ghz, dtype=float), np.asarray(fit_counts, dtype=float), _FIT_COLOR, 1.5)
        )
    return _document(body, comment)
