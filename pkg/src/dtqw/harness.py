"""Experiment runner: parameter sweeps, per-step quantumness records, CSV output.

Sweeps are fully deterministic; re-running a spec produces a byte-identical
CSV. Rows are ordered by (theta, lambda, t).
"""

import csv
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channels import NoiseConfig
from .measures import SearchPolicy, quantumness_record
from .walk import Cycle, Line, WalkConfig, evolve

CSV_COLUMNS = [
    "experiment",
    "topology",
    "size",
    "theta",
    "lambda",
    "t",
    "mid",
    "qd",
    "mutual_info",
    "s_coin",
    "s_pos",
    "s_joint",
    "qd_alpha",
    "qd_beta",
    "degenerate_marginal",
]


@dataclass(frozen=True)
class ExperimentSpec:
    """One sweep: a topology and step budget crossed with theta and lambda lists."""

    name: str
    topology: object
    steps: int
    thetas: tuple
    lambdas: tuple
    record_every: int = 1
    search: Optional[SearchPolicy] = None

    def __post_init__(self):
        object.__setattr__(self, "thetas", tuple(float(t) for t in self.thetas))
        object.__setattr__(self, "lambdas", tuple(float(l) for l in self.lambdas))
        if not self.thetas or not self.lambdas:
            raise ValueError("theta and lambda sweep lists must be non-empty")
        if any(not 0.0 <= t <= np.pi / 2 for t in self.thetas):
            raise ValueError("all theta values must lie in [0, pi/2]")
        if any(not 0.0 <= l <= 1.0 for l in self.lambdas):
            raise ValueError("all lambda values must lie in [0, 1]")
        if self.record_every < 1:
            raise ValueError("record_every must be positive")


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    topology: str
    size: int
    theta: float
    lam: float
    t: int
    mid: float
    qd: float
    mutual_info: float
    s_coin: float
    s_pos: float
    s_joint: float
    qd_alpha: float
    qd_beta: float
    degenerate_marginal: bool


def _topology_fields(topology):
    if isinstance(topology, Cycle):
        return "cycle", topology.n
    return "line", topology.t_max


def run(spec: ExperimentSpec):
    """Execute the sweep and return rows ordered by (theta, lambda, t)."""
    topo_name, size = _topology_fields(spec.topology)
    rows = []
    for theta in sorted(spec.thetas):
        for lam in sorted(spec.lambdas):
            noise = NoiseConfig(lam=lam) if lam > 0 else None
            config = WalkConfig(
                topology=spec.topology, theta=theta, steps=spec.steps, noise=noise
            )

            def record(state, theta=theta, lam=lam):
                if state.t % spec.record_every:
                    return
                rec = quantumness_record(state.rho, state.t, spec.search)
                rows.append(
                    ResultRow(
                        experiment=spec.name,
                        topology=topo_name,
                        size=size,
                        theta=theta,
                        lam=lam,
                        t=rec.t,
                        mid=rec.mid,
                        qd=rec.qd,
                        mutual_info=rec.mutual_info,
                        s_coin=rec.s_coin,
                        s_pos=rec.s_pos,
                        s_joint=rec.s_joint,
                        qd_alpha=rec.qd_argmin.alpha,
                        qd_beta=rec.qd_argmin.beta,
                        degenerate_marginal=rec.degenerate_marginal,
                    )
                )

            evolve(config, observer=record)
    return rows


def _fmt(value):
    return "%.9g" % value


def write_csv(rows, path):
    """Write rows in the fixed schema, 9 significant digits, header included."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in rows:
            writer.writerow(
                [
                    r.experiment,
                    r.topology,
                    r.size,
                    _fmt(r.theta),
                    _fmt(r.lam),
                    r.t,
                    _fmt(r.mid),
                    _fmt(r.qd),
                    _fmt(r.mutual_info),
                    _fmt(r.s_coin),
                    _fmt(r.s_pos),
                    _fmt(r.s_joint),
                    _fmt(r.qd_alpha),
                    _fmt(r.qd_beta),
                    int(r.degenerate_marginal),
                ]
            )


def figure_presets():
    """Named parameter sets for the four shipped figure datasets.

    fig1 uses theta = pi/4: a pi/2 coin is a plain bit flip, for which the
    walk collapses to a period-2 bounce and the quantumness alternates
    between 0 and 1 bit, hiding the cycle's crossover structure.
    fig2's lambda grid is a reconstruction; only its endpoints (0 and 0.1)
    are pinned by the acceptance checks.
    """
    cycle = Cycle(51)
    line = Line(100)
    qpi = np.pi / 4
    return {
        "fig1": (
            ExperimentSpec("fig1", cycle, 200, (qpi,), (0.0,)),
            ExperimentSpec("fig1", line, 100, (qpi,), (0.0,)),
        ),
        "fig2": (
            ExperimentSpec(
                "fig2", cycle, 200, (qpi,), (0.0, 0.001, 0.01, 0.05, 0.1), record_every=10
            ),
            ExperimentSpec(
                "fig2", line, 100, (qpi,), (0.0, 0.001, 0.01, 0.05, 0.1), record_every=50
            ),
        ),
        "fig3": (
            ExperimentSpec("fig3", cycle, 200, (np.pi / 6, qpi, np.pi / 3), (0.0,)),
        ),
        "fig4": (
            ExperimentSpec("fig4", cycle, 200, (qpi,), (0.01, 0.1)),
        ),
    }


def run_preset(name, out_dir):
    """Run every part of one preset and write <out_dir>/<name>.csv."""
    presets = figure_presets()
    if name not in presets:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(presets)}")
    rows = []
    for spec in presets[name]:
        rows.extend(run(spec))
    path = os.path.join(out_dir, f"{name}.csv")
    write_csv(rows, path)
    return path


def dominant_period(series, min_period=8.0):
    """Period (in steps) of the strongest non-trivial spectral component.

    The series is linearly detrended and zero-padded; candidate periods are
    limited to [min_period, len(series)/2] so that at least two full cycles
    support the estimate. Raises on (near-)constant input.
    """
    x = np.asarray(series, dtype=float)
    if len(x) < 32:
        raise ValueError("series must have at least 32 samples")
    t = np.arange(len(x))
    x = x - np.polyval(np.polyfit(t, x, 1), t)
    if np.abs(x).max() < 1e-12:
        raise ValueError("series is constant; period undefined")
    nfft = 1 << max(14, int(np.ceil(np.log2(len(x) * 8))))
    freqs = np.fft.rfftfreq(nfft)
    mag = np.abs(np.fft.rfft(x, nfft))
    band = (freqs >= 2.0 / len(x)) & (freqs <= 1.0 / min_period)
    if not band.any():
        raise ValueError("no admissible frequency band for this series length")
    fb = freqs[band]
    return float(1.0 / fb[np.argmax(mag[band])])
