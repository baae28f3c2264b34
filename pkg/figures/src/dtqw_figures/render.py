"""Publication-style plots from dtqw sweep CSVs.

Each figure id maps to a builder that turns typed CSV rows into a
matplotlib Figure; `render` wires file input to image output. The
builders only plot — no measure is ever recomputed here.
"""

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .schema import read_rows

_THETA_TOL = 1e-9
_MID_STYLE = dict(linestyle="--", linewidth=1.2)
_QD_STYLE = dict(linestyle="-", linewidth=1.2)


class MissingSeriesError(ValueError):
    """The CSV parsed fine but lacks rows for a required curve."""


@dataclass(frozen=True)
class FigureSpec:
    figure: str
    csv_path: str
    out_path: str


def _select(rows, topology=None, theta=None, lam=None):
    out = rows
    if topology is not None:
        out = [r for r in out if r["topology"] == topology]
    if theta is not None:
        out = [r for r in out if abs(r["theta"] - theta) < _THETA_TOL]
    if lam is not None:
        out = [r for r in out if abs(r["lambda"] - lam) < _THETA_TOL]
    return out


def _series(rows, column, **where):
    picked = sorted(_select(rows, **where), key=lambda r: r["t"])
    if not picked:
        raise MissingSeriesError(f"no rows for {column} with {where}")
    return [r["t"] for r in picked], [r[column] for r in picked]


def _values(rows, column):
    return sorted({r[column] for r in rows})


def _line_inset(ax, rows, lambdas=(None,)):
    """Small axes in the corner showing the line-walk companion data."""
    inset = ax.inset_axes([0.58, 0.58, 0.38, 0.38])
    for lam in lambdas:
        t, qd = _series(rows, "qd", topology="line", lam=lam)
        inset.plot(t, qd, **_QD_STYLE)
        t, mid = _series(rows, "mid", topology="line", lam=lam)
        inset.plot(t, mid, **_MID_STYLE)
    inset.set_title("line", fontsize=8)
    inset.tick_params(labelsize=7)
    return inset


def _build_fig1(rows):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    t, qd = _series(rows, "qd", topology="cycle")
    ax.plot(t, qd, label="QD", **_QD_STYLE)
    t, mid = _series(rows, "mid", topology="cycle")
    ax.plot(t, mid, label="MID", **_MID_STYLE)
    _line_inset(ax, rows)
    ax.set_title("Quantumness of the unitary walk on a cycle")
    return fig


def _build_fig2(rows):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    lambdas = _values(_select(rows, topology="cycle"), "lambda")
    if not lambdas:
        raise MissingSeriesError("no cycle rows in fig2 input")
    for lam in lambdas:
        t, qd = _series(rows, "qd", topology="cycle", lam=lam)
        ax.plot(t, qd, label=f"QD, $\\lambda$={lam:g}", **_QD_STYLE)
        t, mid = _series(rows, "mid", topology="cycle", lam=lam)
        ax.plot(t, mid, **_MID_STYLE)
    if _select(rows, topology="line"):
        _line_inset(ax, rows, lambdas=_values(_select(rows, topology="line"), "lambda"))
    ax.set_title("Quantumness under amplitude damping")
    return fig


def _build_fig3(rows):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    thetas = _values(rows, "theta")
    if not thetas:
        raise MissingSeriesError("no rows in fig3 input")
    for theta in thetas:
        t, qd = _series(rows, "qd", theta=theta)
        ax.plot(t, qd, label=f"QD, $\\theta$={theta:.3f}", **_QD_STYLE)
        t, mid = _series(rows, "mid", theta=theta)
        ax.plot(t, mid, **_MID_STYLE)
    ax.set_title("Coin-angle dependence of the revival period")
    return fig


def _build_fig4(rows):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    lambdas = _values(rows, "lambda")
    if not lambdas:
        raise MissingSeriesError("no rows in fig4 input")
    for lam in lambdas:
        t, mid = _series(rows, "mid", lam=lam)
        ax.plot(t, mid, label=f"MID, $\\lambda$={lam:g}", **_MID_STYLE)
        t, qd = _series(rows, "qd", lam=lam)
        ax.plot(t, qd, label=f"QD, $\\lambda$={lam:g}", **_QD_STYLE)
    ax.set_title("MID and discord under weak vs. strong damping")
    return fig


BUILDERS = {
    "fig1": _build_fig1,
    "fig2": _build_fig2,
    "fig3": _build_fig3,
    "fig4": _build_fig4,
}


def build(figure, rows):
    try:
        builder = BUILDERS[figure]
    except KeyError:
        raise ValueError(f"unknown figure id {figure!r}") from None
    fig = builder(rows)
    ax = fig.axes[0]
    ax.set_xlabel("step $t$")
    ax.set_ylabel("quantumness (bits)")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec):
    rows = read_rows(spec.csv_path)
    fig = build(spec.figure, rows)
    try:
        fig.savefig(spec.out_path)
    finally:
        plt.close(fig)
    return spec.out_path
