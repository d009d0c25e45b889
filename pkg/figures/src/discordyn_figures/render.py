"""Deterministic rendering of validated PlotSpecs to PNG or SVG files.

Rendering is read-only over its inputs and byte-stable: the Agg backend
is forced, the SVG hash salt is pinned, and no timestamps are embedded,
so re-running on identical CSVs reproduces the image exactly.
"""

from __future__ import annotations

import re
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .plotspec import PlotSpec, build_spec
from .schema import FigureInputError, read_curve, read_surface

plt.rcParams["svg.hashsalt"] = "discordyn-figures"

OUTPUT_SUFFIXES = (".png", ".svg")

_VARIANT_RE = re.compile(r"^([a-z]+)([0-9.]+)$")


def _variant_label(filename: str) -> str:
    # fig7_a_alpha0.8.csv -> "alpha=0.8"
    tail = Path(filename).stem.split("_")[-1]
    m = _VARIANT_RE.match(tail)
    if m:
        return f"{m.group(1)}={m.group(2)}"
    return tail


def _draw_curves(ax, spec: PlotSpec) -> None:
    multi = len(spec.csv_paths) > 1
    for k, path in enumerate(spec.csv_paths):
        cols = read_curve(path)
        suffix = f", {_variant_label(path.name)}" if multi else ""
        for style in spec.styles:
            ax.plot(
                cols["tau"],
                cols[style.column],
                linestyle=style.linestyle,
                linewidth=style.linewidth,
                color=f"C{k}",
                label=style.label + suffix,
            )
    for mark in spec.markers:
        ax.axvline(mark, color="0.4", linestyle="--", linewidth=1.0)
    ax.set_xlim(*spec.xlim)
    ax.set_xlabel(r"$\Omega t$")
    ax.set_ylabel("correlations (bits)")
    ax.legend(loc="best", fontsize=9, frameon=False)


def _draw_surface(fig, ax, spec: PlotSpec) -> None:
    c3_vals, tau_vals, grid = read_surface(spec.csv_paths[0])
    mesh = ax.pcolormesh(tau_vals, c3_vals, grid, shading="auto")
    fig.colorbar(mesh, ax=ax, label="discord (bits)")
    ax.set_xlim(*spec.xlim)
    ax.set_xlabel(r"$\Omega t$")
    ax.set_ylabel(r"$c_3$")


def render(spec: PlotSpec, out_path) -> Path:
    """Render one spec to ``out_path`` (.png or .svg) and return the path.

    All input validation happens before the output file is touched, so a
    bad input never leaves a partial image behind.
    """
    out_path = Path(out_path)
    if out_path.suffix not in OUTPUT_SUFFIXES:
        raise FigureInputError(
            f"unsupported output format {out_path.suffix!r}: use .png or .svg"
        )
    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=150)
    try:
        if spec.kind == "surface":
            _draw_surface(fig, ax, spec)
        else:
            _draw_curves(ax, spec)
        fig.tight_layout()
        if out_path.suffix == ".svg":
            fig.savefig(out_path, metadata={"Date": None})
        else:
            fig.savefig(out_path)
    finally:
        plt.close(fig)
    return out_path


def render_figure(figure_id: str, indir, out_path) -> Path:
    """Validate inputs for ``figure_id`` under ``indir`` and render them."""
    out_path = Path(out_path)
    if out_path.suffix not in OUTPUT_SUFFIXES:
        raise FigureInputError(
            f"unsupported output format {out_path.suffix!r}: use .png or .svg"
        )
    spec = build_spec(figure_id, indir)
    return render(spec, out_path)
