"""Bit-exact serialization: CSV tables, JSON, and dependency-free SVG plots.

Floats are printed with 17 significant digits so every value round-trips
exactly; CSV uses comma separators, '.' decimals, a header row, and LF line
endings.  SVG output embeds no timestamps and is generated directly
(polyline traces, run-length-merged rectangle rasters), so repeated runs of
the same configuration produce byte-identical files.  Files are written
atomically (temp file in the target directory, then rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .periodic import PeriodicOrbit
from .solver import TimeSeries

__all__ = [
    "fmt",
    "atomic_write",
    "write_json",
    "timeseries_csv",
    "snapshots_csv",
    "orbit_csv",
    "svg_front_plot",
    "svg_heatmap",
]


def fmt(x: float) -> str:
    return "%.17g" % float(x)


def atomic_write(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: str | Path, payload: dict) -> None:
    atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def timeseries_csv(series: TimeSeries) -> str:
    lines = ["t,g,h,sup_u,sup_v"]
    for i in range(series.t.size):
        lines.append(
            ",".join(
                fmt(a[i]) for a in (series.t, series.g, series.h, series.sup_u, series.sup_v)
            )
        )
    return "\n".join(lines) + "\n"


def snapshots_csv(series: TimeSeries) -> str:
    lines = ["t,x,u,v"]
    for snap in series.snapshots:
        t = fmt(snap.t)
        for j in range(snap.x.size):
            lines.append(f"{t},{fmt(snap.x[j])},{fmt(snap.u[j])},{fmt(snap.v[j])}")
    return "\n".join(lines) + "\n"


def orbit_csv(orbit: PeriodicOrbit) -> str:
    lines = []
    if orbit.x is None:
        lines.append("t,U,V")
        for i in range(orbit.t.size):
            lines.append(f"{fmt(orbit.t[i])},{fmt(orbit.U[i])},{fmt(orbit.V[i])}")
    else:
        lines.append("t,x,U,V")
        for i in range(orbit.t.size):
            t = fmt(orbit.t[i])
            for j in range(orbit.x.size):
                lines.append(f"{t},{fmt(orbit.x[j])},{fmt(orbit.U[i, j])},{fmt(orbit.V[i, j])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SVG

_W, _H = 720, 440
_ML, _MR, _MT, _MB = 64, 16, 24, 44


def _px(x: float) -> str:
    return "%.2f" % x


def _axis_map(vals_min: float, vals_max: float, lo_px: float, hi_px: float):
    span = vals_max - vals_min
    if span == 0.0:
        span = 1.0
    scale = (hi_px - lo_px) / span
    return lambda v: lo_px + (v - vals_min) * scale


def _frame(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_ML}" y="16" font-family="monospace" font-size="12">{title}</text>',
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" height="{_H - _MT - _MB}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]


def _polyline(xs, ys, color: str) -> str:
    pts = " ".join(f"{_px(x)},{_px(y)}" for x, y in zip(xs, ys))
    return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.2"/>'


def _tick_labels(tmin, tmax, ymin, ymax) -> list[str]:
    out = []
    out.append(
        f'<text x="{_ML}" y="{_H - _MB + 16}" font-family="monospace" font-size="10">'
        f"{tmin:.6g}</text>"
    )
    out.append(
        f'<text x="{_W - _MR}" y="{_H - _MB + 16}" text-anchor="end" '
        f'font-family="monospace" font-size="10">{tmax:.6g}</text>'
    )
    out.append(
        f'<text x="{_ML - 6}" y="{_H - _MB}" text-anchor="end" '
        f'font-family="monospace" font-size="10">{ymin:.6g}</text>'
    )
    out.append(
        f'<text x="{_ML - 6}" y="{_MT + 10}" text-anchor="end" '
        f'font-family="monospace" font-size="10">{ymax:.6g}</text>'
    )
    return out


def svg_front_plot(series: TimeSeries, title: str = "front traces g(t), h(t)") -> str:
    stride = max(1, series.t.size // 2000)
    t = series.t[::stride]
    g = series.g[::stride]
    h = series.h[::stride]
    ymin, ymax = float(np.min(g)), float(np.max(h))
    fx = _axis_map(float(t[0]), float(t[-1]), _ML, _W - _MR)
    fy = _axis_map(ymin, ymax, _H - _MB, _MT)  # inverted: larger values up
    parts = _frame(title)
    parts.append(_polyline([fx(v) for v in t], [fy(v) for v in h], "#b02020"))
    parts.append(_polyline([fx(v) for v in t], [fy(v) for v in g], "#2040b0"))
    parts.extend(_tick_labels(float(t[0]), float(t[-1]), ymin, ymax))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _colormap() -> list[str]:
    """Fixed 256-entry ramp, dark blue through teal to warm yellow."""
    anchors = [(13, 8, 64), (48, 62, 140), (38, 130, 142), (83, 197, 105), (253, 231, 37)]
    table = []
    segs = len(anchors) - 1
    for i in range(256):
        pos = i / 255.0 * segs
        j = min(int(pos), segs - 1)
        frac = pos - j
        rgb = tuple(
            round(anchors[j][k] + frac * (anchors[j + 1][k] - anchors[j][k])) for k in range(3)
        )
        table.append("#%02x%02x%02x" % rgb)
    return table


_CMAP = _colormap()


def svg_heatmap(series: TimeSeries, field: str = "u", columns: int = 256,
                title: str | None = None) -> str:
    """Raster of a density over (t, x) built from the stored snapshots.

    Each snapshot becomes one pixel row; profiles are resampled onto a fixed
    x range covering the full front excursion, with zero outside the moving
    interval.  Adjacent same-color cells are merged into one rectangle.
    """
    snaps = series.snapshots
    if not snaps:
        raise ValueError("heatmap needs at least one snapshot")
    xmin = min(float(s.x[0]) for s in snaps)
    xmax = max(float(s.x[-1]) for s in snaps)
    xs = np.linspace(xmin, xmax, columns)
    rows = []
    vmax = 0.0
    for s in snaps:
        prof = getattr(s, field)
        resampled = np.interp(xs, s.x, prof, left=0.0, right=0.0)
        # outside the current interval the density is identically zero
        resampled[(xs < s.x[0]) | (xs > s.x[-1])] = 0.0
        vmax = max(vmax, float(np.max(resampled)))
        rows.append(resampled)
    vmax = vmax or 1.0

    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB
    cell_w = plot_w / columns
    cell_h = plot_h / len(rows)
    parts = _frame(title or f"{field}(t, x)")
    for i, row in enumerate(rows):
        # time increases upward from the bottom edge
        y = _MT + plot_h - (i + 1) * cell_h
        idx = np.minimum((row / vmax * 255.0).astype(int), 255)
        j = 0
        while j < columns:
            k = j
            while k + 1 < columns and idx[k + 1] == idx[j]:
                k += 1
            parts.append(
                f'<rect x="{_px(_ML + j * cell_w)}" y="{_px(y)}" '
                f'width="{_px((k - j + 1) * cell_w)}" height="{_px(cell_h)}" '
                f'fill="{_CMAP[int(idx[j])]}"/>'
            )
            j = k + 1
    parts.extend(
        _tick_labels(xmin, xmax, float(snaps[0].t), float(snaps[-1].t))
    )
    parts.append(
        f'<text x="{_W - _MR}" y="16" text-anchor="end" font-family="monospace" '
        f'font-size="10">max {field} = {vmax:.6g}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
