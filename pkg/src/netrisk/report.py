"""Text renderings: DOT network snapshots, SVG time-series plot, CSV/JSON.

All numbers go through :func:`fmt` (6 significant digits, '.' decimal
point) so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
import math
from typing import Iterable

from netrisk.errors import EmptySeries
from netrisk.netgraph import ExposureNetwork
from netrisk.riskcore import RiskReport, SriSeries


def fmt(x: float) -> str:
    x = float(x)
    if x == 0:
        return "0"  # also folds -0.0
    return format(x, ".6g")


def rounded(obj):
    """Round every float in a JSON-ready structure to 6 significant digits."""
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v) for v in obj]
    return obj


def to_json(obj) -> str:
    return json.dumps(rounded(obj), indent=2) + "\n"


def penwidth(claim: float) -> float:
    return 1.0 + math.log10(1.0 + claim)


def export_dot(network: ExposureNetwork) -> str:
    name = network.period or "G"
    out = [f'digraph "{name}" {{']
    for c in sorted(network.countries):
        out.append(f"  {c};")
    for src, dst, claim in sorted(network.edges()):
        out.append(f'  {src} -> {dst} [claim="{fmt(claim)}", penwidth="{fmt(penwidth(claim))}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def emit_svg_plot(series: SriSeries, title: str = "Systemic Risk Index") -> str:
    if len(series) == 0:
        raise EmptySeries("cannot plot an empty series")
    width, height = 800, 420
    left, right, top, bottom = 70, 20, 50, 80
    pw, ph = width - left - right, height - top - bottom
    x_axis_y = top + ph

    values = series.values
    periods = series.periods
    peak = max(values)
    ymax = 1.05 * peak if peak > 0 else 1.0
    n = len(values)

    def xpos(k: int) -> float:
        return left + pw / 2 if n == 1 else left + pw * k / (n - 1)

    def ypos(v: float) -> float:
        return top + ph * (1.0 - v / ymax)

    pts = [(xpos(k), ypos(v)) for k, v in enumerate(values)]
    step = 1 if n <= 26 else 4

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{fmt(width / 2)}" y="28" text-anchor="middle" font-family="sans-serif" '
        f'font-size="18">{_esc(title)}</text>',
        f'<line x1="{left}" y1="{x_axis_y}" x2="{left + pw}" y2="{x_axis_y}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{x_axis_y}" stroke="black"/>',
    ]
    for k in range(5):
        v = ymax * k / 4
        y = ypos(v)
        out.append(f'<line x1="{left - 5}" y1="{fmt(y)}" x2="{left}" y2="{fmt(y)}" stroke="black"/>')
        out.append(
            f'<text x="{left - 8}" y="{fmt(y + 4)}" text-anchor="end" font-family="sans-serif" '
            f'font-size="11">{fmt(v)}</text>'
        )
    for k in range(0, n, step):
        x = xpos(k)
        out.append(
            f'<text x="{fmt(x)}" y="{x_axis_y + 14}" text-anchor="end" font-family="sans-serif" '
            f'font-size="10" transform="rotate(-45 {fmt(x)} {x_axis_y + 14})">{_esc(periods[k])}</text>'
        )
    poly = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in pts)
    out.append(f'<polyline points="{poly}" fill="none" stroke="#1f77b4" stroke-width="2"/>')
    for (x, y), p, v in zip(pts, periods, values):
        out.append(
            f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="3.5" fill="#1f77b4">'
            f"<title>{_esc(p)}: {fmt(v)}</title></circle>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def sri_csv(series: SriSeries) -> str:
    lines = ["period,sri"] + [f"{p},{fmt(v)}" for p, v in series.points]
    return "\n".join(lines) + "\n"


def centrality_csv(rows: Iterable[tuple[str, str, float]]) -> str:
    lines = ["period,country,centrality"] + [f"{p},{c},{fmt(v)}" for p, c, v in rows]
    return "\n".join(lines) + "\n"


def risk_csv(reports: Iterable[RiskReport]) -> str:
    lines = ["period,density,nel,sri"]
    lines += [f"{r.period},{fmt(r.density)},{fmt(r.nel)},{fmt(r.sri)}" for r in reports]
    return "\n".join(lines) + "\n"
