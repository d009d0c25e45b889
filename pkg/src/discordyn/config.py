"""Scenario files: flat JSON configuration for the command-line interface.

A scenario names one parameter family ("frozen", "werner" or "general"),
the channel settings, and the time grid.  Keys are flat, unknown keys are
rejected, and every physical constraint is checked up front so commands
fail before any computation starts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import frozen_family
from .states import (
    ChannelParams,
    WernerParams,
    XStateParams,
    validate_physicality,
    werner_params,
)

_COMMON_KEYS = {
    "family",
    "alpha_re",
    "alpha_im",
    "kappa",
    "tau_max",
    "samples",
    "fock_dim",
    "rk4_step",
    "grid_theta",
    "grid_phi",
    "refine_iters",
}
_FAMILY_KEYS = {
    "frozen": {"c3"},
    "werner": {"r"},
    "general": {"c1", "c2", "c3"},
}
_REQUIRED = {"family", "alpha_re", "kappa", "tau_max", "samples"}


class ConfigError(ValueError):
    """Malformed or physically invalid scenario file."""


def _require_number(data: dict, key: str) -> float:
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key '{key}' must be a number, got {value!r}")
    if not np.isfinite(value):
        raise ConfigError(f"key '{key}' must be finite, got {value!r}")
    return float(value)


def _require_int(data: dict, key: str) -> int:
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"key '{key}' must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class Scenario:
    family: str
    alpha: complex
    kappa: float
    tau_max: float
    samples: int
    c1: float | None = None
    c2: float | None = None
    c3: float | None = None
    r: float | None = None
    fock_dim: int | None = None
    rk4_step: float = 1e-3
    grid_theta: int = 181
    grid_phi: int = 360
    refine_iters: int = 40

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        if not isinstance(data, dict):
            raise ConfigError(f"scenario must be a JSON object, got {type(data).__name__}")
        family = data.get("family")
        if family not in _FAMILY_KEYS:
            raise ConfigError(
                f"key 'family' must be one of {sorted(_FAMILY_KEYS)}, got {family!r}"
            )
        allowed = _COMMON_KEYS | _FAMILY_KEYS[family]
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise ConfigError(f"unknown keys for family '{family}': {', '.join(unknown)}")
        missing = sorted((_REQUIRED | _FAMILY_KEYS[family]) - set(data))
        if missing:
            raise ConfigError(f"missing required keys: {', '.join(missing)}")

        alpha = complex(_require_number(data, "alpha_re"), _require_number(data, "alpha_im") if "alpha_im" in data else 0.0)
        kappa = _require_number(data, "kappa")
        tau_max = _require_number(data, "tau_max")
        if tau_max < 0.0:
            raise ConfigError(f"key 'tau_max' must be nonnegative, got {tau_max}")
        samples = _require_int(data, "samples")
        if samples < 1:
            raise ConfigError(f"key 'samples' must be at least 1, got {samples}")
        if samples > 1 and tau_max == 0.0:
            raise ConfigError("tau_max must be positive when samples > 1")

        fock_dim = None
        if "fock_dim" in data:
            fock_dim = _require_int(data, "fock_dim")
            if fock_dim < 2:
                raise ConfigError(f"key 'fock_dim' must be at least 2, got {fock_dim}")
        rk4_step = _require_number(data, "rk4_step") if "rk4_step" in data else 1e-3
        if rk4_step <= 0.0:
            raise ConfigError(f"key 'rk4_step' must be positive, got {rk4_step}")
        grids = {}
        for key, default in (("grid_theta", 181), ("grid_phi", 360)):
            grids[key] = _require_int(data, key) if key in data else default
            if grids[key] < 8:
                raise ConfigError(f"key '{key}' must be at least 8, got {grids[key]}")
        refine_iters = _require_int(data, "refine_iters") if "refine_iters" in data else 40
        if refine_iters < 0:
            raise ConfigError(f"key 'refine_iters' must be nonnegative, got {refine_iters}")

        fields = {key: _require_number(data, key) for key in _FAMILY_KEYS[family]}
        scenario = cls(
            family=family,
            alpha=alpha,
            kappa=kappa,
            tau_max=tau_max,
            samples=samples,
            fock_dim=fock_dim,
            rk4_step=rk4_step,
            grid_theta=grids["grid_theta"],
            grid_phi=grids["grid_phi"],
            refine_iters=refine_iters,
            **fields,
        )
        scenario.family_params()  # physical validation up front
        try:
            scenario.channel()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return scenario

    @classmethod
    def from_file(cls, path: str | Path) -> "Scenario":
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read scenario file {path}: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"scenario file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def family_params(self) -> XStateParams | WernerParams:
        """Parameter object for the configured family, validated."""
        try:
            if self.family == "frozen":
                return frozen_family(self.c3)
            if self.family == "werner":
                return WernerParams(self.r)
            params = XStateParams(self.c1, self.c2, self.c3)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        report = validate_physicality(params)
        if not report.ok:
            raise ConfigError("; ".join(report.violations))
        return params

    def x_params(self) -> XStateParams:
        """Correlation coefficients regardless of family."""
        params = self.family_params()
        if isinstance(params, WernerParams):
            return werner_params(params.r)
        return params

    def channel(self) -> ChannelParams:
        return ChannelParams(alpha=self.alpha, kappa=self.kappa)

    def tau_grid(self) -> np.ndarray:
        if self.samples == 1:
            return np.array([0.0])
        return np.linspace(0.0, self.tau_max, self.samples)
