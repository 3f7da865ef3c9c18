"""CSV, SVG and run-config file formats."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from . import __version__


def fmt(x) -> str:
    """17 significant digits; round-trips every double."""
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def write_csv(path: Path, header: Sequence[str], columns: Sequence[Sequence], meta: str) -> None:
    """Write columns with a leading ``#`` metadata line and a header row."""
    rows = zip(*columns)
    lines = [f"# nheur {__version__} {meta}", ",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


PALETTE = ("#1f4e9c", "#2a9d3f", "#c0392b", "#7f7f7f", "#8e44ad")


def write_svg(
    path: Path,
    x,
    series: dict[str, Sequence[float]],
    xlabel: str,
    ylabel: str,
    title: str = "",
    dashed: Sequence[str] = (),
    width: int = 640,
    height: int = 420,
) -> None:
    """Static line plot as a self-contained SVG (polylines, axes, legend)."""
    x = np.asarray(x, dtype=float)
    ys = {k: np.asarray(v, dtype=float) for k, v in series.items()}
    finite = np.concatenate([v[np.isfinite(v)] for v in ys.values()])
    y0, y1 = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    x0, x1 = float(x.min()), float(x.max())
    ml, mr, mt, mb = 70, 20, 40, 55
    pw, ph = width - ml - mr, height - mt - mb

    def px(v):
        return ml + (v - x0) / (x1 - x0) * pw

    def py(v):
        return mt + (y1 - v) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for k in range(6):
        xv = x0 + k * (x1 - x0) / 5
        yv = y0 + k * (y1 - y0) / 5
        out.append(f'<line x1="{px(xv):.2f}" y1="{mt + ph}" x2="{px(xv):.2f}" y2="{mt + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px(xv):.2f}" y="{mt + ph + 18}" text-anchor="middle">{xv:.3g}</text>')
        out.append(f'<line x1="{ml - 5}" y1="{py(yv):.2f}" x2="{ml}" y2="{py(yv):.2f}" stroke="black"/>')
        out.append(f'<text x="{ml - 8}" y="{py(yv) + 4:.2f}" text-anchor="end">{yv:.3g}</text>')
    out.append(f'<text x="{ml + pw / 2}" y="{height - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{mt + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {mt + ph / 2})">{escape(ylabel)}</text>'
    )
    if title:
        out.append(f'<text x="{ml + pw / 2}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for i, (name, y) in enumerate(ys.items()):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y) if math.isfinite(b))
        dash = ' stroke-dasharray="6,4"' if name in dashed else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{pts}"/>')
        ly = mt + 14 + 16 * i
        out.append(f'<line x1="{ml + pw - 150}" y1="{ly}" x2="{ml + pw - 125}" y2="{ly}" stroke="{color}"{dash}/>')
        out.append(f'<text x="{ml + pw - 120}" y="{ly + 4}">{escape(name)}</text>')
    out.append("</svg>")
    path.write_text("\n".join(out) + "\n", encoding="utf-8")


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "config"):
        self.line = line
        loc = f"{source}:{line}" if line is not None else source
        super().__init__(f"{loc}: {message}")


NUMERIC_KEYS = {
    "r", "s", "sigma", "phi", "lambda", "t_max", "n_steps",
    "scan_start", "scan_stop", "scan_step",
    "witness_horizon", "witness_points", "beta_window_start", "beta_window_end", "beta_points",
}
TEXT_KEYS = {
    "model", "initial", "observable_r", "observable_q", "scan_param", "scan_metric",
    "output_dir", "formats", "beta_estimator",
}
MODEL_PARAMS = {"general": ("r", "s", "sigma", "phi"), "pt": ("r", "s", "phi"), "antipt": ("lambda", "s", "phi")}


@dataclass
class RunConfig:
    model: str
    params: dict[str, float]
    initial: str = "plus"
    observables: tuple[str, str] = ("z", "x")
    t_max: float | None = None
    n_steps: int | None = None
    scan: dict | None = None
    metric_options: dict = field(default_factory=dict)
    output_dir: str | None = None
    formats: tuple[str, ...] = ("csv",)

    @property
    def is_scan(self) -> bool:
        return self.scan is not None


def parse_config(text: str, source: str = "config") -> RunConfig:
    """Parse the flat ``key = value`` format (``#`` starts a comment)."""
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno, source)
        key, val = (p.strip() for p in line.split("=", 1))
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno, source)
        if key in NUMERIC_KEYS:
            try:
                num = float(val)
            except ValueError:
                raise ConfigError(f"{key} must be a number, got {val!r}", lineno, source) from None
            if not math.isfinite(num):
                raise ConfigError(f"{key} must be finite", lineno, source)
            values[key] = num
        elif key in TEXT_KEYS:
            values[key] = val
        else:
            raise ConfigError(f"unknown key {key!r}", lineno, source)
        lines[key] = lineno

    def fail(msg, key=None):
        raise ConfigError(msg, lines.get(key), source)

    model = values.get("model")
    if model not in MODEL_PARAMS:
        fail(f"model must be one of {sorted(MODEL_PARAMS)}, got {model!r}", "model")
    params = {}
    for k in MODEL_PARAMS[model]:
        if k not in values:
            fail(f"model {model} requires key {k!r}")
        params[k] = values[k]
    for k in ("r", "s", "sigma", "phi", "lambda"):
        if k in values and k not in params:
            fail(f"key {k!r} is not a parameter of model {model}", k)

    cfg = RunConfig(model=model, params=params)
    cfg.initial = values.get("initial", "plus")
    cfg.observables = (values.get("observable_r", "z"), values.get("observable_q", "x"))
    cfg.output_dir = values.get("output_dir")
    formats = tuple(f.strip() for f in str(values.get("formats", "csv")).split(",") if f.strip())
    if not formats or any(f not in ("csv", "svg") for f in formats):
        fail("formats must be a comma list drawn from csv, svg", "formats")
    cfg.formats = formats

    scan_keys = [k for k in values if k.startswith("scan_")]
    option_keys = [k for k in values if k.startswith(("witness_", "beta_"))]
    metric = values.get("scan_metric")
    for k in option_keys:
        if not scan_keys or not k.startswith("witness_" if metric == "witness" else "beta_"):
            fail(f"key {k!r} does not apply to this run mode/metric", k)
    trace_keys = [k for k in ("t_max", "n_steps") if k in values]
    if scan_keys and trace_keys:
        fail("config mixes trace keys (t_max, n_steps) with scan keys", trace_keys[0])
    if scan_keys:
        for k in ("scan_param", "scan_start", "scan_stop", "scan_step", "scan_metric"):
            if k not in values:
                fail(f"scan mode requires key {k!r}")
        if values["scan_param"] not in MODEL_PARAMS[model]:
            fail(f"scan_param must be one of {MODEL_PARAMS[model]}", "scan_param")
        if values["scan_step"] <= 0:
            fail("scan_step must be > 0", "scan_step")
        if values["scan_stop"] <= values["scan_start"]:
            fail("scan_stop must exceed scan_start", "scan_stop")
        if values["scan_metric"] not in ("beta", "witness"):
            fail("scan_metric must be beta or witness", "scan_metric")
        cfg.scan = {k[5:]: values[k] for k in scan_keys}
        opts = {}
        if values["scan_metric"] == "witness":
            if "witness_horizon" in values:
                opts["horizon"] = values["witness_horizon"]
            if "witness_points" in values:
                opts["n_points"] = int(values["witness_points"])
        else:
            if "beta_window_start" in values:
                opts["window_start"] = values["beta_window_start"]
            if "beta_window_end" in values:
                opts["window_end"] = values["beta_window_end"]
            if "beta_points" in values:
                opts["n_points"] = int(values["beta_points"])
            if "beta_estimator" in values:
                opts["estimator"] = values["beta_estimator"]
        cfg.metric_options = opts
    else:
        for k in ("t_max", "n_steps"):
            if k not in values:
                fail(f"trace mode requires key {k!r}")
        if values["t_max"] <= 0:
            fail("t_max must be > 0", "t_max")
        n = values["n_steps"]
        if n < 2 or n != int(n):
            fail("n_steps must be an integer >= 2", "n_steps")
        cfg.t_max, cfg.n_steps = values["t_max"], int(n)
    return cfg
