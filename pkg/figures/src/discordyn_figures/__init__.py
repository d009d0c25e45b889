"""Publication-style figure rendering for discordyn trajectory CSVs."""

from .plotspec import (
    DEFAULT_STYLES,
    FIGURE_IDS,
    FIGURE_INPUTS,
    PLATEAU_MIN_RUN,
    PLATEAU_TOL,
    CurveStyle,
    PlotSpec,
    build_spec,
    plateau_break,
)
from .render import OUTPUT_SUFFIXES, render, render_figure
from .schema import (
    CURVE_COLUMNS,
    SURFACE_COLUMNS,
    FigureInputError,
    SchemaError,
    read_curve,
    read_surface,
)

__version__ = "0.1.0"

__all__ = [
    "CURVE_COLUMNS",
    "CurveStyle",
    "DEFAULT_STYLES",
    "FIGURE_IDS",
    "FIGURE_INPUTS",
    "FigureInputError",
    "OUTPUT_SUFFIXES",
    "PLATEAU_MIN_RUN",
    "PLATEAU_TOL",
    "PlotSpec",
    "SURFACE_COLUMNS",
    "SchemaError",
    "build_spec",
    "plateau_break",
    "read_curve",
    "read_surface",
    "render",
    "render_figure",
]
