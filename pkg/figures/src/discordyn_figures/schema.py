"""CSV input contract for the renderer.

Two table layouts are accepted: trajectory curves with the column header
``tau,F_re,F_im,F_abs2,mutual_info,classical,discord`` and the discord
surface with ``c3,tau,discord``.  Any deviation from the expected header
is reported as a column diff so the producer and consumer can be aligned
without opening the file by hand.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

CURVE_COLUMNS = ("tau", "F_re", "F_im", "F_abs2", "mutual_info", "classical", "discord")
SURFACE_COLUMNS = ("c3", "tau", "discord")


class FigureInputError(ValueError):
    """An input file is missing, empty, or otherwise unusable."""


class SchemaError(FigureInputError):
    """The file exists but its layout does not match the contract."""


def _column_diff(name: str, expected: tuple[str, ...], found: list[str]) -> str:
    missing = [c for c in expected if c not in found]
    unexpected = [c for c in found if c not in expected]
    lines = [
        f"schema mismatch in {name}:",
        "  expected: " + ",".join(expected),
        "  found:    " + ",".join(found),
        "  missing:  " + (",".join(missing) if missing else "(none)"),
        "  unexpected: " + (",".join(unexpected) if unexpected else "(none)"),
    ]
    if not missing and not unexpected:
        lines.append("  note: column order differs from the contract")
    return "\n".join(lines)


def _load_table(path: Path, expected: tuple[str, ...]) -> np.ndarray:
    if not path.is_file():
        raise FigureInputError(f"input file not found: {path}")
    text = path.read_text()
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise SchemaError(f"{path.name}: missing header row")
    found = [c.strip() for c in lines[0].split(",")]
    if found != list(expected):
        raise SchemaError(_column_diff(path.name, expected, found))
    body = "\n".join(lines[1:])
    if not body.strip():
        raise FigureInputError(f"{path.name}: no data rows")
    try:
        data = np.loadtxt(io.StringIO(body), delimiter=",", ndmin=2)
    except ValueError as exc:
        raise SchemaError(f"{path.name}: non-numeric data: {exc}") from None
    if data.shape[1] != len(expected):
        raise SchemaError(
            f"{path.name}: rows have {data.shape[1]} fields, header has {len(expected)}"
        )
    return data


def read_curve(path) -> dict[str, np.ndarray]:
    """Load a trajectory CSV and return one array per column.

    Raises FigureInputError / SchemaError on missing files, header
    mismatches, empty or non-numeric bodies, and a non-increasing time
    column.
    """
    path = Path(path)
    data = _load_table(path, CURVE_COLUMNS)
    cols = {name: data[:, k] for k, name in enumerate(CURVE_COLUMNS)}
    if cols["tau"].size > 1 and not np.all(np.diff(cols["tau"]) > 0.0):
        raise FigureInputError(f"{path.name}: tau column must be strictly increasing")
    return cols


def read_surface(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Load the (c3, tau, discord) table as a complete rectangular grid.

    Returns (c3 values, tau values, discord grid) with the grid indexed
    as [c3, tau].
    """
    path = Path(path)
    data = _load_table(path, SURFACE_COLUMNS)
    c3_vals = np.unique(data[:, 0])
    tau_vals = np.unique(data[:, 1])
    if c3_vals.size * tau_vals.size != data.shape[0]:
        raise SchemaError(
            f"{path.name}: expected a complete {c3_vals.size} x {tau_vals.size} grid, "
            f"got {data.shape[0]} rows"
        )
    order = np.lexsort((data[:, 1], data[:, 0]))
    grid = data[order, 2].reshape(c3_vals.size, tau_vals.size)
    return c3_vals, tau_vals, grid
