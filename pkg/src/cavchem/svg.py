"""Minimal self-contained SVG emission for line plots and heatmaps.

No plotting toolchain: polylines and rects on linear axes, coordinates
rounded to 0.01 px, no timestamps, so output is fully deterministic.
"""

from __future__ import annotations

import math

import numpy as np

WIDTH, HEIGHT = 720.0, 480.0
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70.0, 20.0, 30.0, 50.0

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _px(x: float) -> str:
    return format(round(x, 2), ".2f")


class _Axes:
    def __init__(self, xlim, ylim):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1.0

    def x(self, v: float) -> float:
        frac = (v - self.x0) / (self.x1 - self.x0)
        return MARGIN_L + frac * (WIDTH - MARGIN_L - MARGIN_R)

    def y(self, v: float) -> float:
        frac = (v - self.y0) / (self.y1 - self.y0)
        return HEIGHT - MARGIN_B - frac * (HEIGHT - MARGIN_T - MARGIN_B)


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    step = 10 ** math.floor(math.log10(span / n))
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= n:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + 1e-12 * span:
        out.append(round(t, 12))
        t += step
    return out


def _frame(ax: _Axes, xlabel: str, ylabel: str, title: str) -> list[str]:
    parts = [
        f'<rect x="{_px(MARGIN_L)}" y="{_px(MARGIN_T)}" '
        f'width="{_px(WIDTH - MARGIN_L - MARGIN_R)}" '
        f'height="{_px(HEIGHT - MARGIN_T - MARGIN_B)}" '
        'fill="none" stroke="black" stroke-width="1"/>'
    ]
    for t in _ticks(ax.x0, ax.x1):
        x = ax.x(t)
        parts.append(
            f'<line x1="{_px(x)}" y1="{_px(HEIGHT - MARGIN_B)}" '
            f'x2="{_px(x)}" y2="{_px(HEIGHT - MARGIN_B + 5)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_px(x)}" y="{_px(HEIGHT - MARGIN_B + 18)}" '
            f'font-size="11" text-anchor="middle">{t:g}</text>'
        )
    for t in _ticks(ax.y0, ax.y1):
        y = ax.y(t)
        parts.append(
            f'<line x1="{_px(MARGIN_L - 5)}" y1="{_px(y)}" '
            f'x2="{_px(MARGIN_L)}" y2="{_px(y)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_px(MARGIN_L - 8)}" y="{_px(y + 4)}" '
            f'font-size="11" text-anchor="end">{t:g}</text>'
        )
    parts.append(
        f'<text x="{_px((MARGIN_L + WIDTH - MARGIN_R) / 2)}" '
        f'y="{_px(HEIGHT - 10)}" font-size="13" text-anchor="middle">{xlabel}</text>'
    )
    parts.append(
        f'<text x="15" y="{_px((MARGIN_T + HEIGHT - MARGIN_B) / 2)}" font-size="13" '
        f'text-anchor="middle" transform="rotate(-90 15 '
        f'{_px((MARGIN_T + HEIGHT - MARGIN_B) / 2)})">{ylabel}</text>'
    )
    parts.append(
        f'<text x="{_px(WIDTH / 2)}" y="20" font-size="14" '
        f'text-anchor="middle">{title}</text>'
    )
    return parts


def line_plot(
    series: list[tuple[str, np.ndarray, np.ndarray]],
    xlabel: str,
    ylabel: str,
    title: str = "",
    vlines: list[tuple[str, float, str]] | None = None,
) -> str:
    """Overlayed polyline plot; vlines are dashed (label, x, color) markers."""
    all_y = np.concatenate([y for _, _, y in series])
    all_x = np.concatenate([x for _, x, _ in series])
    ax = _Axes(
        (float(all_x.min()), float(all_x.max())),
        (min(0.0, float(all_y.min())), float(all_y.max()) * 1.05),
    )
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:g}" '
        f'height="{HEIGHT:g}" viewBox="0 0 {WIDTH:g} {HEIGHT:g}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    parts += _frame(ax, xlabel, ylabel, title)
    for label, x, color in vlines or []:
        if not ax.x0 <= x <= ax.x1:
            continue
        px = ax.x(x)
        parts.append(
            f'<line x1="{_px(px)}" y1="{_px(MARGIN_T)}" x2="{_px(px)}" '
            f'y2="{_px(HEIGHT - MARGIN_B)}" stroke="{color}" '
            'stroke-dasharray="5,4" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_px(px + 3)}" y="{_px(MARGIN_T + 12)}" font-size="10" '
            f'fill="{color}">{label}</text>'
        )
    for k, (label, x, y) in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        points = " ".join(f"{_px(ax.x(xv))},{_px(ax.y(yv))}" for xv, yv in zip(x, y))
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" '
            'stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{_px(WIDTH - MARGIN_R - 5)}" y="{_px(MARGIN_T + 15 + 14 * k)}" '
            f'font-size="11" text-anchor="end" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _heat_color(frac: float) -> str:
    """Simple blue -> white -> red diverging map on [0, 1]."""
    frac = min(max(frac, 0.0), 1.0)
    if frac < 0.5:
        t = frac / 0.5
        rgb = (int(255 * t), int(255 * t), 255)
    else:
        t = (frac - 0.5) / 0.5
        rgb = (255, int(255 * (1 - t)), int(255 * (1 - t)))
    return f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"


def heatmap(
    x_values: np.ndarray,
    y_values: np.ndarray,
    body: np.ndarray,
    xlabel: str,
    ylabel: str,
    title: str = "",
) -> str:
    """Cell grid with body[i, j] at (x_values[j], y_values[i]); NaN left gray."""
    finite = body[np.isfinite(body)]
    lo = float(finite.min()) if finite.size else 0.0
    hi = float(finite.max()) if finite.size else 1.0
    span = hi - lo if hi > lo else 1.0
    ax = _Axes(
        (float(x_values.min()), float(x_values.max())),
        (float(y_values.min()), float(y_values.max())),
    )
    nx, ny = len(x_values), len(y_values)
    cw = (WIDTH - MARGIN_L - MARGIN_R) / nx
    ch = (HEIGHT - MARGIN_T - MARGIN_B) / ny
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:g}" '
        f'height="{HEIGHT:g}" viewBox="0 0 {WIDTH:g} {HEIGHT:g}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for i in range(ny):
        for j in range(nx):
            v = body[i, j]
            color = "#bbbbbb" if not np.isfinite(v) else _heat_color((v - lo) / span)
            parts.append(
                f'<rect x="{_px(MARGIN_L + j * cw)}" '
                f'y="{_px(HEIGHT - MARGIN_B - (i + 1) * ch)}" '
                f'width="{_px(cw)}" height="{_px(ch)}" fill="{color}"/>'
            )
    parts += _frame(ax, xlabel, ylabel, f"{title} [{lo:.3g}, {hi:.3g}]")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
