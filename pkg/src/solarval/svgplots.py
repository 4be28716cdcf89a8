"""Deterministic SVG figures for curve and sweep results.

Hand-assembled SVG rather than a plotting library: output must be
byte-identical across runs for identical inputs, and the tests count and
read individual curve segments, so every drawn step and bar is its own
element carrying ``data-*`` attributes with the source numbers.
"""

from __future__ import annotations

import math
from pathlib import Path

from .curves import benefit_rows, supply_rows

_W, _H = 720, 420
_ML, _MR, _MT, _MB = 68, 16, 30, 46

_STYLE = (
    "text{font-family:Helvetica,Arial,sans-serif;font-size:11px;fill:#333}"
    ".title{font-size:13px;font-weight:bold}"
    ".axis{stroke:#333;stroke-width:1}"
    ".grid{stroke:#ddd;stroke-width:0.5}"
    ".step{stroke-width:2;fill:none}"
    ".riser{stroke-width:0.8;fill:none;stroke-dasharray:2 2}"
    ".supply{stroke:#1f77b4}.net{stroke:#2ca02c}.gross{stroke:#98df8a}"
    ".bar-solar{fill:#f2b705}.bar-wind{fill:#1f77b4}.bar-storage{fill:#9467bd}"
    ".bar-lines{fill:#8c564b}.bar-ngcc{fill:#7f7f7f}.bar-ngcc_ccs{fill:#17becf}"
    ".bar-other{fill:#c7c7c7}"
    ".dpos{fill:#2ca02c}.dneg{fill:#d62728}"
)

_KNOWN_BARS = ("solar", "wind", "storage", "lines", "ngcc", "ngcc_ccs")


def _f(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    """Round tick positions covering [lo, hi]."""
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    step = 10.0 * mag
    for mult in (1.0, 2.0, 2.5, 5.0):
        if mult * mag >= raw:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + 1e-9 * step:
        out.append(0.0 if abs(t) < 1e-12 else t)
        t += step
    return out


class _Figure:
    """One SVG document with a single plot area and linear axes."""

    def __init__(self, title: str, x_label: str, y_label: str,
                 x_range: tuple[float, float], y_range: tuple[float, float]):
        self.parts: list[str] = []
        self.x_lo, self.x_hi = x_range
        self.y_lo, self.y_hi = y_range
        if self.x_hi <= self.x_lo:
            self.x_hi = self.x_lo + 1.0
        if self.y_hi <= self.y_lo:
            self.y_hi = self.y_lo + 1.0
        self.title = title
        self.x_label = x_label
        self.y_label = y_label

    def x(self, v: float) -> float:
        frac = (v - self.x_lo) / (self.x_hi - self.x_lo)
        return _ML + frac * (_W - _ML - _MR)

    def y(self, v: float) -> float:
        frac = (v - self.y_lo) / (self.y_hi - self.y_lo)
        return _H - _MB - frac * (_H - _MT - _MB)

    def add(self, tag: str, text: str | None = None, **attrs) -> None:
        keys = sorted(attrs)
        body = " ".join(f'{k.replace("_", "-")}="{attrs[k]}"' for k in keys)
        if text is None:
            self.parts.append(f"<{tag} {body}/>")
        else:
            self.parts.append(f"<{tag} {body}>{text}</{tag}>")

    def _frame(self) -> list[str]:
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" '
            f'height="{_H}" viewBox="0 0 {_W} {_H}">',
            f"<style>{_STYLE}</style>",
            f'<rect width="{_W}" height="{_H}" fill="white"/>',
            f'<text class="title" x="{_ML}" y="18">{self.title}</text>',
        ]
        x0, x1 = _ML, _W - _MR
        y0, y1 = _H - _MB, _MT
        for t in _ticks(self.y_lo, self.y_hi):
            yy = _f(self.y(t))
            out.append(f'<line class="grid" x1="{x0}" y1="{yy}" '
                       f'x2="{x1}" y2="{yy}"/>')
            label = f"{t:,.0f}" if abs(t) >= 1 or t == 0 else f"{t:g}"
            out.append(f'<text x="{x0 - 6}" y="{yy}" text-anchor="end" '
                       f'dominant-baseline="middle">{label}</text>')
        for t in _ticks(self.x_lo, self.x_hi):
            xx = _f(self.x(t))
            out.append(f'<line class="axis" x1="{xx}" y1="{y0}" '
                       f'x2="{xx}" y2="{y0 + 4}"/>')
            out.append(f'<text x="{xx}" y="{y0 + 16}" '
                       f'text-anchor="middle">{t:g}</text>')
        out.append(f'<line class="axis" x1="{x0}" y1="{y0}" '
                   f'x2="{x1}" y2="{y0}"/>')
        out.append(f'<line class="axis" x1="{x0}" y1="{y0}" '
                   f'x2="{x0}" y2="{y1}"/>')
        out.append(f'<text x="{_f((x0 + x1) / 2)}" y="{_H - 10}" '
                   f'text-anchor="middle">{self.x_label}</text>')
        out.append(f'<text x="14" y="{_f((y0 + y1) / 2)}" '
                   f'text-anchor="middle" transform="rotate(-90 14 '
                   f'{_f((y0 + y1) / 2)})">{self.y_label}</text>')
        return out

    def render(self) -> str:
        return "\n".join(self._frame() + self.parts + ["</svg>"])


def _draw_steps(fig: _Figure, rows: list[tuple[float, float]],
                cls: str) -> None:
    """One horizontal segment per curve point, dashed risers between."""
    prev_gw, prev_y = 0.0, None
    for gw, value in rows:
        y = fig.y(value)
        if prev_y is not None:
            fig.add("line", class_=f"riser {cls}",
                    x1=_f(fig.x(prev_gw)), y1=_f(prev_y),
                    x2=_f(fig.x(prev_gw)), y2=_f(y))
        fig.add("line", class_=f"step {cls}",
                x1=_f(fig.x(prev_gw)), y1=_f(y),
                x2=_f(fig.x(gw)), y2=_f(y),
                data_gw=f"{gw:.6f}", data_value=f"{value:.6f}")
        prev_gw, prev_y = gw, y


def write_curve_plot(path: Path | str, supply: list[tuple[float, float]],
                     net: list[tuple[float, float]],
                     gross: list[tuple[float, float]]) -> Path:
    """Step overlay: ascending cost curve, descending net and gross value."""
    xs = [gw for rows in (supply, net, gross) for gw, _ in rows]
    ys = [v for rows in (supply, net, gross) for _, v in rows]
    fig = _Figure(
        "Cost and value-added curves",
        "Cumulative capacity (GW)",
        "$ per MW-year",
        (0.0, max(xs, default=1.0)),
        (0.0, 1.08 * max(ys, default=1.0)),
    )
    _draw_steps(fig, gross, "gross")
    _draw_steps(fig, net, "net")
    _draw_steps(fig, supply, "supply")
    lx = _W - _MR - 150
    for i, (cls, label) in enumerate(
        (("supply", "cost"), ("net", "net value"), ("gross", "gross value"))
    ):
        yy = _MT + 12 + 14 * i
        fig.add("line", class_=f"step {cls}", x1=_f(lx), y1=_f(yy),
                x2=_f(lx + 22), y2=_f(yy))
        fig.add("text", label, x=_f(lx + 28), y=_f(yy + 3))
    out = Path(path)
    out.write_text(fig.render())
    return out


def write_investment_plot(path: Path | str, report) -> Path:
    """Grouped bars: final-period MW by technology, one group per weight."""
    rows = report.rows
    techs = sorted({t for r in rows for t in r.invest_by_tech})
    peak = max(
        (r.invest_by_tech.get(t, 0.0) for r in rows for t in techs),
        default=1.0,
    )
    fig = _Figure(
        "Capacity additions by technology",
        "Cost weight",
        f"Capacity in {report.periods[-1]} (MW)",
        (0.0, max(len(rows), 1)),
        (0.0, 1.1 * max(peak, 1.0)),
    )
    group_w = (_W - _ML - _MR) / max(len(rows), 1)
    bar_w = group_w / (len(techs) + 1) if techs else group_w
    y0 = fig.y(0.0)
    for gi, row in enumerate(rows):
        gx = _ML + gi * group_w
        for ti, tech in enumerate(techs):
            mw = row.invest_by_tech.get(tech, 0.0)
            yy = fig.y(mw)
            cls = f"bar-{tech}" if tech in _KNOWN_BARS else "bar-other"
            fig.add("rect", class_=f"bar {cls}",
                    x=_f(gx + (ti + 0.5) * bar_w), y=_f(yy),
                    width=_f(bar_w * 0.9), height=_f(max(y0 - yy, 0.0)),
                    data_weight=f"{row.weight:.2f}", data_tech=tech,
                    data_mw=f"{mw:.3f}")
        fig.add("text", f"w={row.weight:g}", x=_f(gx + group_w / 2),
                y=_f(y0 + 16), text_anchor="middle")
    for ti, tech in enumerate(techs):
        lx = _ML + 8
        yy = _MT + 12 + 14 * ti
        cls = f"bar-{tech}" if tech in _KNOWN_BARS else "bar-other"
        fig.add("rect", class_=f"bar {cls}", x=_f(lx), y=_f(yy - 8),
                width="12", height="10")
        fig.add("text", tech, x=_f(lx + 18), y=_f(yy))
    out = Path(path)
    out.write_text(fig.render())
    return out


def write_state_shift_plot(path: Path | str, report) -> Path:
    """Diverging bars: per-state solar shift at the lowest weight vs base."""
    low = report.rows[-1]
    deltas = dict(sorted(low.delta_solar_by_state.items()))
    span = max((abs(v) for v in deltas.values()), default=1.0)
    span = max(span, 1.0)
    fig = _Figure(
        f"State reallocation at w={low.weight:g}",
        f"Change in {report.periods[-1]} solar capacity vs least-cost (MW)",
        "",
        (-1.1 * span, 1.1 * span),
        (0.0, max(len(deltas), 1)),
    )
    x_zero = fig.x(0.0)
    row_h = (_H - _MT - _MB) / max(len(deltas), 1)
    for i, (state, delta) in enumerate(deltas.items()):
        yy = _MT + i * row_h + 0.2 * row_h
        xx = fig.x(delta)
        left = min(x_zero, xx)
        fig.add("rect", class_="dbar " + ("dpos" if delta >= 0 else "dneg"),
                x=_f(left), y=_f(yy),
                width=_f(abs(xx - x_zero)), height=_f(0.6 * row_h),
                data_state=state, data_delta=f"{delta:.3f}")
        anchor = "end" if delta >= 0 else "start"
        lx = x_zero + (-6 if delta >= 0 else 6)
        fig.add("text", state, x=_f(lx), y=_f(yy + 0.35 * row_h),
                text_anchor=anchor)
    fig.add("line", class_="axis", x1=_f(x_zero), y1=str(_MT),
            x2=_f(x_zero), y2=str(_H - _MB))
    out = Path(path)
    out.write_text(fig.render())
    return out


def emit_plots(report, supply_points, benefit_points,
               out_dir: Path | str) -> list[Path]:
    """Write the three standard figures; returns their paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [
        write_curve_plot(
            out / "curves.svg",
            supply_rows(supply_points),
            benefit_rows(benefit_points),
            benefit_rows(benefit_points, gross=True),
        ),
        write_investment_plot(out / "investments.svg", report),
        write_state_shift_plot(out / "state_shift.svg", report),
    ]
