"""One figure per job: contour overlays, CDF-vs-diagonal panels, 2-D maps."""

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
# stable ids and real text nodes so SVG output is reproducible and greppable
matplotlib.rcParams["svg.hashsalt"] = "valim-plots"
matplotlib.rcParams["svg.fonttype"] = "none"

import matplotlib.pyplot as plt
import numpy as np

from .csvio import load_table, prefixed, require

GRAY = "0.55"
DIAGONAL = dict(linestyle="--", color="0.4", linewidth=1.0)
PANEL_GRID = {1: (1, 1), 2: (1, 2), 3: (1, 3), 4: (2, 2)}


@dataclass(frozen=True)
class FigureJob:
    figure: str
    inputs: tuple
    output: str
    style: dict = field(default_factory=dict)


def series_color(role: str, has_tnorm: bool, style: dict) -> str:
    if role in style:
        return style[role]
    if role.startswith("vacuous"):
        return GRAY
    if role.startswith("tnorm"):
        return "black"
    if role.startswith("dempster"):
        return "tab:red"
    if role.startswith("validified"):
        return "tab:blue"
    if role.startswith("hose"):
        # the aggregation rule: the sole prior-using line in two-line
        # overlays, a separate green line next to a t-norm line
        return "tab:green" if has_tnorm else "black"
    return "black"


def _family(figure: str) -> str:
    fam = figure[:1]
    if fam not in "123456" or figure[1:] not in ("", "a", "b", "c", "d"):
        raise ValueError(f"unknown figure {figure!r}")
    return fam


def _panel_title(table) -> str:
    cfg = table.config()
    if "assertion" in cfg:
        return f"A=({cfg['assertion']})"
    if "y" in cfg:
        return f"y={cfg['y']}"
    return ""


def _contour_panel(ax, table, style):
    require(table, "theta")
    names = prefixed(table, "contour_")
    if not names:
        require(table, "contour_vacuous")
    x = table.columns["theta"]
    has_tnorm = any(n.startswith("contour_tnorm") for n in names)
    for name in names:
        role = name[len("contour_"):]
        line, = ax.plot(x, table.columns[name], linewidth=1.4,
                        color=series_color(role, has_tnorm, style), label=role)
        line.set_gid(f"series_{role}")
    ax.set_xlabel("theta")
    ax.set_ylabel("plausibility")
    ax.set_ylim(0.0, 1.05)
    ax.set_title(_panel_title(table), fontsize=10)
    ax.legend(frameon=False, fontsize=8)


def _cdf_panel(ax, table, style):
    require(table, "alpha")
    x = table.columns["alpha"]
    names = prefixed(table, "cdf_")
    if names:
        has_tnorm = any(n.startswith("cdf_tnorm") for n in names)
        for name in names:
            role = name[len("cdf_"):]
            line, = ax.plot(x, table.columns[name], linewidth=1.4,
                            color=series_color(role, has_tnorm, style), label=role)
            line.set_gid(f"series_{role}")
    else:
        require(table, "H_A")
        line, = ax.plot(x, table.columns["H_A"], linewidth=1.4, color="black",
                        label="H_A")
        line.set_gid("series_H_A")
    diag, = ax.plot((0.0, 1.0), (0.0, 1.0), **DIAGONAL)
    diag.set_gid("diagonal")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("alpha")
    ax.set_ylabel("CDF")
    ax.set_title(_panel_title(table), fontsize=10)
    ax.legend(frameon=False, fontsize=8, loc="upper left")


def _pivot(table, name):
    t1 = np.unique(table.columns["theta"])
    t2 = np.unique(table.columns["theta2"])
    z = table.columns[name].reshape(len(t1), len(t2))
    return t1, t2, z


def _surface_panels(fig, axes, table, style):
    require(table, "theta", "theta2")
    names = prefixed(table, "contour_")
    if not names:
        require(table, "contour_vacuous")
    for ax, name in zip(axes, names):
        role = name[len("contour_"):]
        t1, t2, z = _pivot(table, name)
        ax.contourf(t1, t2, z.T, levels=np.linspace(0.0, 1.0, 11), cmap="Greys")
        boundary = ax.contour(t1, t2, z.T, levels=[0.1], linewidths=1.8,
                              colors=[series_color(role, True, style)])
        boundary.set_gid(f"region_{role}")
        ax.set_aspect("equal")
        ax.set_xlabel("theta1")
        ax.set_ylabel("theta2")
        ax.set_title(role, fontsize=10)
    for ax in axes[len(names):]:
        ax.set_axis_off()


def render(job: FigureJob) -> str:
    fam = _family(job.figure)
    tables = [load_table(p) for p in job.inputs]
    if not tables:
        raise ValueError("no input CSVs")
    if fam == "6":
        if len(tables) != 1:
            raise ValueError("2-D figures take exactly one CSV")
        panels = len(prefixed(tables[0], "contour_"))
        require(tables[0], "theta", "theta2")
    else:
        panels = len(tables)
    rows, cols = PANEL_GRID.get(panels, (1, panels))
    fig, axes = plt.subplots(rows, cols, figsize=(4.4 * cols, 3.5 * rows),
                             squeeze=False)
    flat = [ax for row in axes for ax in row]
    try:
        if fam == "6":
            _surface_panels(fig, flat, tables[0], job.style)
        else:
            panel = _cdf_panel if fam in "23" else _contour_panel
            for ax, table in zip(flat, tables):
                panel(ax, table, job.style)
            for ax in flat[len(tables):]:
                ax.set_axis_off()
        fig.tight_layout()
        save = {"metadata": {"Date": None}} if job.output.endswith(".svg") else {}
        fig.savefig(job.output, **save)
    finally:
        plt.close(fig)
    return job.output
