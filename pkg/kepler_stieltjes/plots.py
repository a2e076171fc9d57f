"""Relative error against M on a log scale, as a standalone SVG."""

import math
from itertools import groupby

from kepler_stieltjes.errors import OutputError
from kepler_stieltjes.schemas import SweepRecord
from kepler_stieltjes.utils import render_jinja

_template = """
<svg xmlns="http://www.w3.org/2000/svg" width="{{ width }}" height="{{ height }}" font-family="sans-serif" font-size="11">
  <rect width="100%" height="100%" fill="white"/>
  <rect x="{{ left }}" y="{{ top }}" width="{{ plot_w }}" height="{{ plot_h }}" fill="none" stroke="black"/>
  {% for tick in y_ticks %}
  <line x1="{{ left }}" x2="{{ left + plot_w }}" y1="{{ tick.y }}" y2="{{ tick.y }}" stroke="#ddd"/>
  <text x="{{ left - 6 }}" y="{{ tick.y + 4 }}" text-anchor="end">1e{{ tick.exponent }}</text>
  {% endfor %}
  {% for tick in x_ticks %}
  <text x="{{ tick.x }}" y="{{ top + plot_h + 16 }}" text-anchor="middle">{{ tick.label }}</text>
  {% endfor %}
  <text x="{{ left + plot_w / 2 }}" y="{{ height - 6 }}" text-anchor="middle">M</text>
  <text x="14" y="{{ top + plot_h / 2 }}" transform="rotate(-90 14 {{ top + plot_h / 2 }})" text-anchor="middle">relative error</text>
  {% for curve in curves %}
  <polyline fill="none" stroke="{{ curve.color }}" stroke-width="1.2" points="{{ curve.points }}"/>
  <text x="{{ left + plot_w + 8 }}" y="{{ top + 14 * loop.index }}" fill="{{ curve.color }}">{{ curve.label }}</text>
  {% endfor %}
</svg>
"""

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"]
# zero errors are drawn at this floor
ERROR_FLOOR = 1e-17


def render_error_plot(records: list[SweepRecord], width: int = 720, height: int = 420) -> str:
    left, top, right, bottom = 60, 20, 140, 40
    plot_w, plot_h = width - left - right, height - top - bottom

    if records:
        m_lo, m_hi = min(r.M for r in records), max(r.M for r in records)
        exps = [math.log10(max(r.rel_error, ERROR_FLOOR)) for r in records]
        e_lo, e_hi = math.floor(min(exps)), math.ceil(max(exps))
    else:
        m_lo, m_hi, e_lo, e_hi = 0.0, 1.0, -16, 0
    m_hi = m_hi if m_hi > m_lo else m_lo + 1.0
    e_hi = e_hi if e_hi > e_lo else e_lo + 1

    def sx(M):
        return left + plot_w * (M - m_lo) / (m_hi - m_lo)

    def sy(err):
        return top + plot_h * (e_hi - math.log10(max(err, ERROR_FLOOR))) / (e_hi - e_lo)

    def label(r):
        return (r.method.value, r.order_or_tol)

    curves = []
    for i, ((method, level), group) in enumerate(groupby(sorted(records, key=label), key=label)):
        group = sorted(group, key=lambda r: r.M)
        curves.append(
            {
                "color": _COLORS[i % len(_COLORS)],
                "label": f"{method} {level:g}",
                "points": " ".join(f"{sx(r.M):.2f},{sy(r.rel_error):.2f}" for r in group),
            }
        )

    step = max(1, (e_hi - e_lo) // 8)
    y_ticks = [{"y": sy(10.0**e), "exponent": e} for e in range(e_lo, e_hi + 1, step)]
    x_ticks = [{"x": sx(m), "label": f"{m:.3g}"} for m in (m_lo + (m_hi - m_lo) * j / 4 for j in range(5))]
    return render_jinja(
        _template.strip(),
        width=width,
        height=height,
        left=left,
        top=top,
        plot_w=plot_w,
        plot_h=plot_h,
        y_ticks=y_ticks,
        x_ticks=x_ticks,
        curves=curves,
    )


def write_error_plot(records: list[SweepRecord], path: str):
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(render_error_plot(records))
    except OSError as e:
        raise OutputError(path, e.strerror or str(e))
