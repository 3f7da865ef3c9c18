"""Command-line front end: ``nheur figure|run|validate``.

Exit codes: 0 success, 1 config error, 2 I/O error, 3 validation failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .criticality import eur_trace, make_grid, scan
from .dynamics import AntiPTParams, GeneralNHParams, InitialState, spectrum
from .figures import FIGURE_IDS, figure1, scan_figure
from .formats import ConfigError, RunConfig, parse_config, write_csv, write_svg
from .measure import Observable

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_VALIDATION = 0, 1, 2, 3


class ValidationFailure(RuntimeError):
    pass


def _out_dir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _check_trace(trace) -> None:
    if not np.all(np.isfinite(trace.values)):
        raise ValidationFailure("non-finite EUR values in trace")
    if np.any(trace.values < trace.bound - 1e-9):
        raise ValidationFailure(f"EUR fell below the bound {trace.bound}")


def cmd_figure(args) -> int:
    out = _out_dir(args.out)
    if args.id == "fig1":
        res = figure1(out)
        for tr in res["traces"].values():
            _check_trace(tr)
        ep = res["traces"]["exceptional"].values[-1]
        print(f"fig1: exceptional-point EUR at t_max = {ep:.6f}")
    else:
        res = scan_figure(args.id, out, threads=args.threads, paper_phi=args.paper_phi)
        sr = res["scan"]
        if not np.all(np.isfinite(sr.metric)):
            raise ValidationFailure(f"non-finite {sr.metric_kind} values in scan")
        print(
            f"{args.id}: critical_point={sr.critical_point:.4f} jump={sr.critical_jump:.6g} "
            f"detected={'yes' if sr.transition_detected() else 'no'}"
        )
    for f in res["files"]:
        print(f"wrote {f}")
    return EXIT_OK


def _system(cfg: RunConfig):
    p = cfg.params
    if cfg.model == "general":
        return GeneralNHParams(p["r"], p["s"], p["sigma"], p["phi"])
    if cfg.model == "pt":
        return GeneralNHParams.pt(p["r"], p["s"], p["phi"])
    return AntiPTParams(p["lambda"], p["s"], p["phi"])


def _field_name(cfg: RunConfig, key: str) -> str:
    if cfg.model == "antipt" and key == "lambda":
        return "lam"
    return key


def _meta(cfg: RunConfig, source: str) -> str:
    params = " ".join(f"{k}={v!r}" for k, v in cfg.params.items())
    extra = ""
    if cfg.is_scan:
        sc = cfg.scan
        extra = f" scan={sc['param']}:[{sc['start']!r},{sc['stop']!r},{sc['step']!r}] metric={sc['metric']}"
        extra += "".join(f" {k}={v!r}" for k, v in sorted(cfg.metric_options.items()))
    else:
        extra = f" t_max={cfg.t_max!r} n_steps={cfg.n_steps}"
    return (f"config={source} model={cfg.model} {params} initial={cfg.initial} "
            f"observables={cfg.observables[0]},{cfg.observables[1]}{extra}")


def _fmt_omega(w: complex) -> str:
    return f"{w.real:.6g}" if w.imag == 0 else f"{w:.6g}"


def cmd_run(args) -> int:
    source = args.config
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        cfg = parse_config(text, source)
        system = _system(cfg)
        initial = InitialState.parse(cfg.initial)
        observables = (Observable.parse(cfg.observables[0]), Observable.parse(cfg.observables[1]))
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = _out_dir(cfg.output_dir or args.out)
    stem = Path(source).stem
    meta = _meta(cfg, Path(source).name)
    if cfg.is_scan:
        sc = cfg.scan
        try:
            grid = make_grid(sc["start"], sc["stop"], sc["step"])
            result = scan(system, _field_name(cfg, sc["param"]), grid, sc["metric"], initial,
                          observables, threads=args.threads, **cfg.metric_options)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        if not np.all(np.isfinite(result.metric)):
            raise ValidationFailure("non-finite metric values in scan")
        if "csv" in cfg.formats:
            write_csv(out / f"{stem}.csv", ["param", "metric", "phase"],
                      [result.grid, result.metric, [ph.value for ph in result.phases]], meta)
        if "svg" in cfg.formats:
            write_svg(out / f"{stem}.svg", result.grid, {sc["metric"]: result.metric}, sc["param"], sc["metric"])
        print(
            f"scan {sc['param']} points={len(grid)} metric={sc['metric']} "
            f"critical_point={result.critical_point:.6g} jump={result.critical_jump:.6g} "
            f"detected={'yes' if result.transition_detected() else 'no'}"
        )
    else:
        trace = eur_trace(system, initial, observables, cfg.t_max, cfg.n_steps)
        _check_trace(trace)
        if "csv" in cfg.formats:
            bound = np.full_like(trace.times, trace.bound)
            write_csv(out / f"{stem}.csv", ["t", "eur", "h_r", "h_q", "bound"],
                      [trace.times, trace.values, trace.h_r, trace.h_q, bound], meta)
        if "svg" in cfg.formats:
            write_svg(out / f"{stem}.svg", trace.times, {"EUR": trace.values}, "t", "EUR (bits)")
        spec = spectrum(system)
        print(f"trace phase={spec.phase.value} omega={_fmt_omega(spec.omega)} rows={len(trace.times)} "
              f"eur_final={trace.values[-1]:.6f}")
    return EXIT_OK


def cmd_validate(args) -> int:
    from . import validate

    level = "full" if args.full else "quick"
    checks, elapsed = validate.timed_run(level)
    print(f"validate ({level})")
    print(validate.report(checks, elapsed))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="output directory (default ./out)")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads for scans (default: all cores); never changes results")

    parser = argparse.ArgumentParser(prog="nheur", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"nheur {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", parents=[common], help="reproduce a figure as CSV + SVG")
    fig.add_argument("id", choices=FIGURE_IDS)
    fig.add_argument("--paper-phi", action="store_true",
                     help="anti-PT figures: sweep at phi = pi/2 instead of phi = 0 (no transition there)")
    fig.set_defaults(func=cmd_figure)

    run = sub.add_parser("run", parents=[common], help="run a trace or scan from a config file")
    run.add_argument("config")
    run.set_defaults(func=cmd_run)

    val = sub.add_parser("validate", parents=[common], help="closed-form vs oracle checks")
    val.add_argument("--full", action="store_true", help="acceptance-grade grids")
    val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.out = getattr(args, "out", "./out")
    args.threads = getattr(args, "threads", None) or os.cpu_count() or 1
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationFailure as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
