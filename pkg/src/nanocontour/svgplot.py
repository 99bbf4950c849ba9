"""Minimal self-contained SVG line plots.

Good enough for the XY-path and error-vs-time figures the CLI emits; the
authoritative data is always the CSV next to them. Series are decimated to
a bounded point count since the plots are illustrative.
"""

from __future__ import annotations

import numpy as np

WIDTH = 720
HEIGHT = 520
MARGIN_L = 80
MARGIN_R = 20
MARGIN_T = 40
MARGIN_B = 55
MAX_POINTS = 2000

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _decimate(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if len(x) <= MAX_POINTS:
        return x, y
    idx = np.linspace(0, len(x) - 1, MAX_POINTS).round().astype(int)
    return x[idx], y[idx]


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return list(np.linspace(lo, hi, n))


def line_plot(series, title: str, xlabel: str, ylabel: str,
              equal_aspect: bool = False) -> str:
    """Render series of (x, y, label) tuples to an SVG document string."""
    series = [(np.asarray(x, dtype=float), np.asarray(y, dtype=float), label)
              for x, y, label in series]
    xmin = min(float(np.min(x)) for x, _, _ in series)
    xmax = max(float(np.max(x)) for x, _, _ in series)
    ymin = min(float(np.min(y)) for _, y, _ in series)
    ymax = max(float(np.max(y)) for _, y, _ in series)
    xpad = 0.05 * (xmax - xmin) or 1.0
    ypad = 0.05 * (ymax - ymin) or 1.0
    xmin, xmax = xmin - xpad, xmax + xpad
    ymin, ymax = ymin - ypad, ymax + ypad

    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B
    if equal_aspect:
        # stretch the narrower data range so one unit maps equally on both axes
        xspan, yspan = xmax - xmin, ymax - ymin
        if xspan / pw > yspan / ph:
            grow = xspan * ph / pw - yspan
            ymin, ymax = ymin - grow / 2, ymax + grow / 2
        else:
            grow = yspan * pw / ph - xspan
            xmin, xmax = xmin - grow / 2, xmax + grow / 2

    def sx(x: float) -> float:
        return MARGIN_L + (x - xmin) / (xmax - xmin) * pw

    def sy(y: float) -> float:
        return MARGIN_T + (ymax - y) / (ymax - ymin) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" '
        'fill="none" stroke="#333" stroke-width="1"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
        f'<text x="{MARGIN_L + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
        f'<text x="18" y="{MARGIN_T + ph / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {MARGIN_T + ph / 2:.1f})">{ylabel}</text>',
    ]
    for tick in _ticks(xmin, xmax):
        x = sx(tick)
        parts.append(f'<line x1="{x:.1f}" y1="{MARGIN_T + ph}" x2="{x:.1f}" '
                     f'y2="{MARGIN_T + ph + 5}" stroke="#333"/>')
        parts.append(f'<text x="{x:.1f}" y="{MARGIN_T + ph + 18}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11">{tick:.4g}</text>')
    for tick in _ticks(ymin, ymax):
        y = sy(tick)
        parts.append(f'<line x1="{MARGIN_L - 5}" y1="{y:.1f}" x2="{MARGIN_L}" '
                     f'y2="{y:.1f}" stroke="#333"/>')
        parts.append(f'<text x="{MARGIN_L - 8}" y="{y + 4:.1f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{tick:.4g}</text>')

    for i, (x, y, label) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        xd, yd = _decimate(x, y)
        pts = " ".join(f"{sx(float(a)):.2f},{sy(float(b)):.2f}" for a, b in zip(xd, yd))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     'stroke-width="1.2"/>')
        ly = MARGIN_T + 16 + 16 * i
        parts.append(f'<line x1="{MARGIN_L + pw - 150}" y1="{ly - 4}" '
                     f'x2="{MARGIN_L + pw - 125}" y2="{ly - 4}" stroke="{color}" '
                     'stroke-width="2"/>')
        parts.append(f'<text x="{MARGIN_L + pw - 120}" y="{ly}" '
                     f'font-family="sans-serif" font-size="11">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def write_svg(svg: str, path) -> None:
    with open(path, "w") as fh:
        fh.write(svg)
