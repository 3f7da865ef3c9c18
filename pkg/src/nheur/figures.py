"""Parameter sets and writers for the reproduced figures."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .criticality import eur_trace, make_grid, scan
from .dynamics import AntiPTParams, GeneralNHParams, InitialState
from .formats import write_csv, write_svg

HALF_PI = math.pi / 2
SQRT2 = math.sqrt(2.0)

FIG1_CURVES = {
    "unbroken": GeneralNHParams(r=1.0, s=2.0, sigma=2.0, phi=HALF_PI),
    "broken": GeneralNHParams(r=2.0, s=1.0, sigma=1.0, phi=HALF_PI),
    "exceptional": GeneralNHParams(r=1.0, s=1.0, sigma=1.0, phi=HALF_PI),
}
# Hermitian comparison: (w/2) sigma_z at the unbroken curve's frequency, so
# |+> undergoes Rabi-type oscillation with period 2 pi / w.
FIG1_HERMITIAN_OMEGA = math.sqrt(3.0)
FIG1_T_MAX = 50.0
FIG1_STEPS = 5000


@dataclass(frozen=True)
class ScanFigure:
    base: GeneralNHParams | AntiPTParams
    param: str
    start: float
    stop: float
    step: float
    metric: str
    title: str

    def grid(self) -> np.ndarray:
        return make_grid(self.start, self.stop, self.step)


def _pt():
    return GeneralNHParams(r=1.0, s=2.0, sigma=2.0, phi=HALF_PI)


def _general():
    return GeneralNHParams(r=1.0, s=SQRT2 / 2, sigma=SQRT2, phi=HALF_PI)


def _antipt(phi: float):
    return AntiPTParams(lam=1.0, s=1.0, phi=phi)


def scan_figures(paper_phi: bool = False) -> dict[str, ScanFigure]:
    """Scan figure definitions; ``paper_phi`` runs the anti-PT sweep at phi = pi/2."""
    phi = HALF_PI if paper_phi else 0.0
    return {
        "fig2a": ScanFigure(_pt(), "r", 0.5, 3.5, 0.01, "witness", "W(r), PT: s = sigma = 2"),
        "fig2b": ScanFigure(_general(), "r", 0.2, 2.0, 0.01, "witness", "W(r), s = sqrt2/2, sigma = sqrt2"),
        "fig3a": ScanFigure(_pt(), "r", 0.5, 3.5, 0.01, "beta", "beta(r), PT: s = sigma = 2"),
        "fig3b": ScanFigure(_general(), "r", 0.2, 2.0, 0.01, "beta", "beta(r), s = sqrt2/2, sigma = sqrt2"),
        "fig4a": ScanFigure(_antipt(phi), "s", 0.2, 2.0, 0.01, "beta", f"beta(s), anti-PT: lambda = 1, phi = {phi:.4g}"),
        "fig4b": ScanFigure(_antipt(phi), "s", 0.2, 2.0, 0.01, "witness", f"W(s), anti-PT: lambda = 1, phi = {phi:.4g}"),
    }


FIGURE_IDS = ("fig1", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b")


def _meta(params) -> str:
    return " ".join(f"{k}={v!r}" for k, v in asdict(params).items())


def figure1(out_dir: Path, formats=("csv", "svg")) -> dict:
    plus = InitialState.plus()
    w = FIG1_HERMITIAN_OMEGA
    herm = np.diag([0.5 * w, -0.5 * w]).astype(complex)
    traces = {"hermitian": eur_trace(herm, plus, t_max=FIG1_T_MAX, n_steps=FIG1_STEPS)}
    for name, p in FIG1_CURVES.items():
        traces[name] = eur_trace(p, plus, t_max=FIG1_T_MAX, n_steps=FIG1_STEPS)
    t = traces["hermitian"].times
    names = list(traces)
    meta = "figure=fig1 initial=plus observables=z,x hermitian=diag(w/2,-w/2) w=%r " % w + " ".join(
        f"{n}:[{_meta(p)}]" for n, p in FIG1_CURVES.items()
    )
    files = []
    if "csv" in formats:
        path = out_dir / "fig1.csv"
        write_csv(path, ["t", *names], [t, *(traces[n].values for n in names)], meta)
        files.append(path)
    if "svg" in formats:
        path = out_dir / "fig1.svg"
        write_svg(path, t, {n: traces[n].values for n in names}, "t", "EUR (bits)",
                  "EUR dynamics for |+>, observables sigma_z / sigma_x", dashed=("hermitian",))
        files.append(path)
    return {"files": files, "traces": traces}


def scan_figure(fig_id: str, out_dir: Path, threads: int | None = None, paper_phi: bool = False,
                formats=("csv", "svg")) -> dict:
    spec = scan_figures(paper_phi)[fig_id]
    result = scan(spec.base, spec.param, spec.grid(), spec.metric, threads=threads)
    meta = (
        f"figure={fig_id} metric={spec.metric} sweep={spec.param}:[{spec.start!r},{spec.stop!r},{spec.step!r}] "
        f"initial=plus observables=z,x {_meta(spec.base)}"
    )
    files = []
    if "csv" in formats:
        path = out_dir / f"{fig_id}.csv"
        write_csv(path, ["param", "metric", "phase"],
                  [result.grid, result.metric, [ph.value for ph in result.phases]], meta)
        files.append(path)
    if "svg" in formats:
        path = out_dir / f"{fig_id}.svg"
        ylabel = "W (bits)" if spec.metric == "witness" else "beta (bits / time)"
        write_svg(path, result.grid, {spec.metric: result.metric}, spec.param, ylabel, spec.title)
        files.append(path)
    return {"files": files, "scan": result}
