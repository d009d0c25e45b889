"""Figure definitions: input files per figure id, styles and markers.

A PlotSpec is fully validated on construction: every referenced CSV must
exist and match the column contract, and the optional transition-time
markers are derived from the data itself (the point where the discord
column leaves its initial plateau), never recomputed from model
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .schema import FigureInputError, read_curve, read_surface


@dataclass(frozen=True)
class CurveStyle:
    column: str
    label: str
    linestyle: str
    linewidth: float


DEFAULT_STYLES = (
    CurveStyle("mutual_info", "mutual information", ":", 1.6),
    CurveStyle("classical", "classical", "--", 1.6),
    CurveStyle("discord", "discord", "-", 1.8),
)

# filenames written by the producer's figure command, one entry per panel
FIGURE_INPUTS: dict[str, tuple[str, ...]] = {
    "2a": ("fig2_a_alpha1.2.csv",),
    "2b": ("fig2_b_alpha0.8.csv",),
    "3": ("fig3_all_surface.csv",),
    "4a": ("fig4_a_alpha0.8.csv",),
    "4b": ("fig4_b_alpha0.8.csv",),
    "5a": ("fig5_a_alpha0.8.csv",),
    "5b": ("fig5_b_alpha1.2.csv",),
    "6a": ("fig6_a_r0.5.csv", "fig6_a_r0.9.csv"),
    "6b": ("fig6_b_r0.5.csv", "fig6_b_r0.9.csv"),
    "7a": ("fig7_a_alpha0.8.csv", "fig7_a_alpha0.5.csv"),
    "7b": ("fig7_b_alpha0.8.csv", "fig7_b_alpha0.5.csv"),
    "8a": ("fig8_a_kappa0.1.csv", "fig8_a_kappa1.csv"),
    "8b": ("fig8_b_kappa0.1.csv", "fig8_b_kappa1.csv"),
}

FIGURE_IDS = tuple(FIGURE_INPUTS)

PLATEAU_TOL = 1e-9
PLATEAU_MIN_RUN = 5


@dataclass(frozen=True)
class PlotSpec:
    figure_id: str
    kind: str  # "curves" or "surface"
    csv_paths: tuple[Path, ...]
    xlim: tuple[float, float]
    styles: tuple[CurveStyle, ...]
    markers: tuple[float, ...]


def plateau_break(tau: np.ndarray, discord: np.ndarray) -> float | None:
    """Transition time read off the data, or None if there is no break.

    The discord column is compared against its initial value; the first
    sample deviating by more than PLATEAU_TOL marks the end of the frozen
    plateau.  A plateau shorter than PLATEAU_MIN_RUN samples is not
    treated as frozen (the curve simply was never flat), and a curve that
    stays flat for the whole window has no transition.  The returned time
    refines the sample position by intersecting the post-break slope with
    the plateau level.
    """
    deviating = np.flatnonzero(np.abs(discord - discord[0]) > PLATEAU_TOL)
    if deviating.size == 0:
        return None
    i = int(deviating[0])
    if i < PLATEAU_MIN_RUN:
        return None
    if i + 1 < tau.size:
        slope = (discord[i + 1] - discord[i]) / (tau[i + 1] - tau[i])
        if abs(slope) > 1e-12:
            t = tau[i] - (discord[i] - discord[0]) / slope
            return float(np.clip(t, tau[i - 1], tau[i]))
    return float(0.5 * (tau[i - 1] + tau[i]))


def build_spec(figure_id: str, indir) -> PlotSpec:
    """Validate the inputs for one figure id and assemble its PlotSpec."""
    if figure_id not in FIGURE_INPUTS:
        known = " ".join(FIGURE_IDS)
        raise FigureInputError(f"unknown figure id: {figure_id!r} (known: {known})")
    indir = Path(indir)
    paths = tuple(indir / name for name in FIGURE_INPUTS[figure_id])
    if figure_id == "3":
        _, tau_vals, _ = read_surface(paths[0])
        return PlotSpec("3", "surface", paths, (float(tau_vals[0]), float(tau_vals[-1])),
                        DEFAULT_STYLES, ())
    markers = []
    lo, hi = np.inf, -np.inf
    for path in paths:
        cols = read_curve(path)
        lo = min(lo, float(cols["tau"][0]))
        hi = max(hi, float(cols["tau"][-1]))
        mark = plateau_break(cols["tau"], cols["discord"])
        if mark is not None:
            markers.append(mark)
    return PlotSpec(figure_id, "curves", paths, (lo, hi), DEFAULT_STYLES, tuple(markers))
