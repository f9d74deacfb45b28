"""Self-contained SVG step plots of complexity profiles."""

from __future__ import annotations

from html import escape
from typing import Mapping, Sequence

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def step_svg(series: Mapping[str, Sequence[int]], title: str = "", width: int = 720,
             height: int = 360) -> str:
    """Overlay integer-valued series as step functions of ``n``."""
    left, right, top, bottom = 50, 20, 30, 40
    n_max = max((len(v) for v in series.values()), default=1) - 1
    lo = min((min(v) for v in series.values() if len(v)), default=0)
    hi = max((max(v) for v in series.values() if len(v)), default=1)
    lo = min(lo, 0)
    if hi == lo:
        hi = lo + 1
    pw, ph = width - left - right, height - top - bottom

    def x(n):
        return left + pw * n / max(n_max + 1, 1)

    def y(val):
        return top + ph * (hi - val) / (hi - lo)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
           f'<rect width="{width}" height="{height}" fill="white"/>']
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="18" text-anchor="middle">{escape(title)}</text>')
    out.append(f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>')
    for frac in (0, 0.25, 0.5, 0.75, 1):
        val = lo + (hi - lo) * frac
        out.append(f'<text x="{left - 6}" y="{y(val) + 4:.1f}" text-anchor="end">{val:g}</text>')
        n = round(n_max * frac)
        out.append(f'<text x="{x(n):.1f}" y="{top + ph + 16}" text-anchor="middle">{n}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 6}" text-anchor="middle">n</text>')
    for i, (name, values) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        pts = []
        for n, val in enumerate(values):
            pts.append(f"{x(n):.2f},{y(val):.2f}")
            pts.append(f"{x(n + 1):.2f},{y(val):.2f}")
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{" ".join(pts)}"/>')
        out.append(f'<text x="{left + 10}" y="{top + 14 * (i + 1)}" fill="{color}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
