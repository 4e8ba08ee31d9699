"""Figure assembly shared by the per-kind scripts."""

from dataclasses import dataclass, field

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LogNorm

from . import schema
from .schema import expect_kind, read_sweep_file

# per-kind magnitude scale defaults: spectra span many decades, the
# stability maps do not
DEFAULT_SCALE = {"curves": "log", "heatmap": "linear", "dft-density": "log"}


@dataclass
class FigureSpec:
    inputs: list
    kind: str  # curves | heatmap | dft-density
    out: str
    scale: str = ""  # linear | log; empty picks the kind default
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""
    observable: str = ""  # dft-density: which observable column to plot
    dpi: int = 150

    def __post_init__(self):
        if self.kind not in schema.KIND_MODES:
            raise ValueError(f"kind must be one of {tuple(schema.KIND_MODES)}, got {self.kind!r}")
        if not self.scale:
            self.scale = DEFAULT_SCALE[self.kind]
        if self.scale not in ("linear", "log"):
            raise ValueError(f"scale must be linear or log, got {self.scale!r}")


def _log_floor(values):
    positive = values[values > 0]
    return float(positive.min()) if positive.size else 1e-12


def _render_curves(spec: FigureSpec, ax):
    data = expect_kind(read_sweep_file(spec.inputs[0]), "curves")
    cols = schema.numeric_columns(data, data.columns)
    h = cols["h"]
    ax.plot(h, cols["D_avg"], label="decorrelator average", lw=1.2)
    ax.plot(h, cols["F_avg"], label="FOTOC average", lw=1.2, ls="--")
    if spec.scale == "log":
        floor = min(_log_floor(cols["D_avg"]), _log_floor(cols["F_avg"]))
        ax.set_yscale("log")
        ax.set_ylim(bottom=max(floor, 1e-16))
    ax.set_xlim(h.min(), h.max())
    ax.set_xlabel(spec.xlabel or "h (uniform drive)")
    ax.set_ylabel(spec.ylabel or "time-averaged diagnostic")
    ax.legend(frameon=False)
    window = (data.config.get("window-start", "?"), data.config.get("window-end", "?"))
    ax.set_title(spec.title or f"stability diagnostics, J={data.config.get('j', '?')}, cycles {window[0]}-{window[1]}")


def _render_heatmap(spec: FigureSpec, ax, fig):
    data = expect_kind(read_sweep_file(spec.inputs[0]), "heatmap")
    h1_axis, h2_axis, grid = schema.map_grid(data)
    norm = LogNorm(vmin=max(_log_floor(grid), 1e-16), vmax=grid.max()) if spec.scale == "log" else None
    mesh = ax.pcolormesh(h1_axis, h2_axis, grid.T, shading="nearest", norm=norm, cmap="viridis")
    label = {"decorrelator-map": "time-averaged decorrelator", "fotoc-map": "time-averaged FOTOC"}[data.mode]
    fig.colorbar(mesh, ax=ax, label=label)
    ax.set_xlabel(spec.xlabel or "h1")
    ax.set_ylabel(spec.ylabel or "h2")
    ax.set_title(spec.title or f"{label}, J={data.config.get('j', '?')}")


def _panel_label(data: schema.SweepData):
    source = data.config.get("source", "")
    if source.startswith("q"):
        return f"quantum, N={data.config.get('n-spins', '?')}"
    return "mean-field limit"


def _render_dft_density(spec: FigureSpec, axes, fig):
    for ax, path in zip(axes, spec.inputs):
        data = expect_kind(read_sweep_file(path), "dft-density")
        h2_axis, freq_axis, grid, obs = schema.density_grid(data, spec.observable or None)
        norm = LogNorm(vmin=max(_log_floor(grid), 1e-16), vmax=grid.max()) if spec.scale == "log" else None
        mesh = ax.pcolormesh(h2_axis, freq_axis, grid.T, shading="nearest", norm=norm, cmap="magma")
        ax.set_xlabel(spec.xlabel or "h2")
        ax.set_title(f"{_panel_label(data)} ({obs}, h1={data.config.get('h1-min', '?')})")
        fig.colorbar(mesh, ax=ax, label=f"|{obs}| DFT magnitude")
    axes[0].set_ylabel(spec.ylabel or "frequency (units of drive frequency)")


def render(spec: FigureSpec) -> str:
    """Write the figure described by spec; returns the output path."""
    if spec.kind == "dft-density":
        n_panels = len(spec.inputs)
        fig, axes = plt.subplots(1, n_panels, figsize=(5.2 * n_panels, 4.2), sharey=True, squeeze=False)
        _render_dft_density(spec, axes[0], fig)
        if spec.title:
            fig.suptitle(spec.title)
    else:
        if len(spec.inputs) != 1:
            raise ValueError(f"{spec.kind} takes exactly one input file, got {len(spec.inputs)}")
        fig, ax = plt.subplots(figsize=(5.6, 4.2))
        if spec.kind == "curves":
            _render_curves(spec, ax)
        else:
            _render_heatmap(spec, ax, fig)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=spec.dpi)
    plt.close(fig)
    return spec.out


def add_common_flags(parser, kind):
    parser.add_argument("--out", required=True, help="output image path (png/pdf/svg by extension)")
    parser.add_argument("--scale", choices=("linear", "log"), default="",
                        help=f"magnitude scale (default: {DEFAULT_SCALE[kind]})")
    parser.add_argument("--xlabel", default="", help="x axis label override")
    parser.add_argument("--ylabel", default="", help="y axis label override")
    parser.add_argument("--title", default="", help="figure title override")
    parser.add_argument("--dpi", type=int, default=150)
