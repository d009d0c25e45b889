"""Command-line front end: evolve, transition, validate, optimize, figure.

Every command is scenario-driven and non-interactive.  Exit codes: 0 on
success, 1 when a validation or internal invariant fails, 2 on
configuration errors (including unknown figure ids and bad arguments).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import channel
from .analysis import (
    NoDissipationError,
    family_correlations,
    find_transitions,
    stationary_values,
    sweep,
)
from .config import ConfigError, Scenario
from .lindblad import StepSizeError, TruncationError, integrate, trace_distance
from .measurement import discord_numeric, maximize_classical
from .states import UnphysicalStateError, WernerParams

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

CSV_HEADER = "tau,F_re,F_im,F_abs2,mutual_info,classical,discord"


def _fmt(x: float) -> str:
    """12 significant digits; -0 is normalized so output bytes are stable."""
    x = float(x)
    if x == 0.0:
        x = 0.0
    return format(x, ".12g")


def _write_csv(path: Path, header: str, rows: list[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join([header, *rows]) + "\n")


def _sweep_rows(scenario: Scenario) -> list[str]:
    table = sweep(scenario.family_params(), scenario.channel(), scenario.tau_grid())
    rows = []
    for k in range(table.taus.size):
        f = table.factors[k]
        rows.append(
            ",".join(
                _fmt(v)
                for v in (
                    table.taus[k],
                    f.real,
                    f.imag,
                    table.abs2[k],
                    table.mutual_info[k],
                    table.classical[k],
                    table.discord[k],
                )
            )
        )
    return rows


def cmd_evolve(args: argparse.Namespace) -> int:
    scenario = Scenario.from_file(args.config)
    rows = _sweep_rows(scenario)
    _write_csv(Path(args.out), CSV_HEADER, rows)
    return EXIT_OK


def _branch_threshold(scenario: Scenario) -> float | None:
    """|F|^2 level where the measurement branch switches, if any."""
    if scenario.family == "werner":
        return None
    if scenario.family == "frozen":
        return abs(scenario.c3) if scenario.c3 != 0.0 else None
    peak = max(abs(scenario.c1), abs(scenario.c2))
    if peak == 0.0 or abs(scenario.c3) == 0.0:
        return None
    ratio = abs(scenario.c3) / peak
    return ratio if ratio < 1.0 else None


def cmd_transition(args: argparse.Namespace) -> int:
    scenario = Scenario.from_file(args.config)
    params = scenario.channel()
    report: dict = {"family": scenario.family}
    threshold = _branch_threshold(scenario)
    if scenario.family == "werner":
        report["family_has_branch_transition"] = False
        report["note"] = "Werner family: the branch parameter stays at r for all tau"
        report["crossings"] = []
        report["plateau_value"] = None
    elif threshold is None:
        report["family_has_branch_transition"] = False
        report["note"] = "branch parameter never switches for these coefficients"
        report["crossings"] = []
        report["plateau_value"] = None
    else:
        c3 = scenario.c3
        tr = find_transitions(
            c3, params, window=(0.0, scenario.tau_max), samples=max(scenario.samples, 10_000),
            threshold=None if scenario.family == "frozen" else threshold,
        )
        report["family_has_branch_transition"] = True
        report["threshold"] = tr.threshold
        report["crossings"] = [float(x) for x in tr.crossings]
        report["degenerate"] = list(tr.degenerate)
        report["regimes"] = list(tr.regimes)
        report["plateau_value"] = tr.plateau_value
    try:
        st = stationary_values(scenario.family_params(), params)
        report["stationary"] = {
            "limit_abs2": st.limit_abs2,
            "mutual_info": st.triple.mutual_info,
            "classical": st.triple.classical,
            "discord": st.triple.discord,
        }
    except NoDissipationError as exc:
        report["stationary"] = None
        report["stationary_note"] = str(exc)
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    scenario = Scenario.from_file(args.config)
    c = scenario.x_params()
    params = scenario.channel()
    dim = args.fock_dim if args.fock_dim is not None else scenario.fock_dim
    step = args.rk4_step if args.rk4_step is not None else scenario.rk4_step
    tol = args.tol

    traj = integrate(c, params, truncation=dim, tau_max=scenario.tau_max, step=step)
    distances = np.array(
        [
            trace_distance(traj.states[s], channel.reduced_state(c, float(traj.taus[s]), params))
            for s in range(traj.taus.size)
        ]
    )
    worst = np.argsort(distances)[::-1][:5]
    oracle = {
        "max_trace_distance": float(np.max(distances)),
        "worst_tau": float(traj.taus[int(np.argmax(distances))]),
        "worst_samples": [[float(traj.taus[i]), float(distances[i])] for i in worst],
        "tol": tol,
        "pass": bool(np.max(distances) < tol),
    }

    taus = np.linspace(0.0, scenario.tau_max, 20)
    family = scenario.family_params()
    gaps = []
    for tau in taus:
        factor = channel.coherence_factor(float(tau), params)
        rho = channel.apply_coherence(c, factor)
        closed = family_correlations(family, min(factor.abs2, 1.0)).discord
        numeric = discord_numeric(
            rho, scenario.grid_theta, scenario.grid_phi, scenario.refine_iters
        )
        gaps.append(abs(numeric - closed))
    gaps = np.array(gaps)
    worst_opt = np.argsort(gaps)[::-1][:5]
    optimizer = {
        "max_gap": float(np.max(gaps)),
        "worst_tau": float(taus[int(np.argmax(gaps))]),
        "worst_samples": [[float(taus[i]), float(gaps[i])] for i in worst_opt],
        "tol": tol,
        "pass": bool(np.max(gaps) < tol),
    }

    ok = oracle["pass"] and optimizer["pass"]
    print(json.dumps({"oracle": oracle, "optimizer": optimizer, "pass": ok}, indent=2))
    return EXIT_OK if ok else EXIT_FAILURE


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ConfigError(f"--grid expects THETAxPHI, e.g. 181x360, got {text!r}")
    try:
        gt, gp = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ConfigError(f"--grid expects integers, got {text!r}") from exc
    if gt < 8 or gp < 8:
        raise ConfigError("--grid sizes must be at least 8")
    return gt, gp


def cmd_optimize(args: argparse.Namespace) -> int:
    scenario = Scenario.from_file(args.config)
    grid_theta, grid_phi = (
        _parse_grid(args.grid) if args.grid else (scenario.grid_theta, scenario.grid_phi)
    )
    refine = args.refine if args.refine is not None else scenario.refine_iters
    c = scenario.x_params()
    family = scenario.family_params()
    params = scenario.channel()
    rows = []
    for tau in scenario.tau_grid():
        factor = channel.coherence_factor(float(tau), params)
        rho = channel.apply_coherence(c, factor)
        triple = family_correlations(family, min(factor.abs2, 1.0))
        classical, angles = maximize_classical(rho, grid_theta, grid_phi, refine)
        numeric = triple.mutual_info - classical if triple.mutual_info - classical > 0 else 0.0
        rows.append(
            {
                "tau": float(tau),
                "abs2": factor.abs2,
                "closed_discord": triple.discord,
                "numeric_discord": numeric,
                "gap": abs(numeric - triple.discord),
                "theta": angles.theta,
                "phi": angles.phi,
            }
        )
    max_gap = max(row["gap"] for row in rows)
    print(json.dumps({"rows": rows, "max_gap": max_gap}, indent=2))
    return EXIT_OK


@dataclass(frozen=True)
class FigureCurve:
    filename: str
    scenario: Scenario


def _frozen_scenario(c3, alpha, kappa, tau_max, samples) -> Scenario:
    return Scenario(
        family="frozen", alpha=alpha, kappa=kappa, tau_max=tau_max, samples=samples, c3=c3
    )


def _werner_scenario(r, alpha, kappa, tau_max, samples) -> Scenario:
    return Scenario(
        family="werner", alpha=alpha, kappa=kappa, tau_max=tau_max, samples=samples, r=r
    )


FIGURES: dict[str, tuple[FigureCurve, ...]] = {
    "2a": (FigureCurve("fig2_a_alpha1.2.csv", _frozen_scenario(0.6, 1.2, 0.05, 3.0, 601)),),
    "2b": (FigureCurve("fig2_b_alpha0.8.csv", _frozen_scenario(0.6, 0.8, 0.05, 3.0, 601)),),
    "4a": (FigureCurve("fig4_a_alpha0.8.csv", _frozen_scenario(0.6, 0.8, 0.05, 10.0, 1001)),),
    "4b": (FigureCurve("fig4_b_alpha0.8.csv", _frozen_scenario(0.6, 0.8, 0.05, 50.0, 2001)),),
    "5a": (FigureCurve("fig5_a_alpha0.8.csv", _frozen_scenario(0.7, 0.8, 2.0, 10.0, 1001)),),
    "5b": (FigureCurve("fig5_b_alpha1.2.csv", _frozen_scenario(0.6, 1.2, 3.0, 10.0, 1001)),),
    "6a": (
        FigureCurve("fig6_a_r0.5.csv", _werner_scenario(0.5, 0.5, 0.05, 10.0, 1001)),
        FigureCurve("fig6_a_r0.9.csv", _werner_scenario(0.9, 0.5, 0.05, 10.0, 1001)),
    ),
    "6b": (
        FigureCurve("fig6_b_r0.5.csv", _werner_scenario(0.5, 0.5, 0.05, 50.0, 2001)),
        FigureCurve("fig6_b_r0.9.csv", _werner_scenario(0.9, 0.5, 0.05, 50.0, 2001)),
    ),
    "7a": (
        FigureCurve("fig7_a_alpha0.8.csv", _werner_scenario(0.7, 0.8, 0.05, 10.0, 1001)),
        FigureCurve("fig7_a_alpha0.5.csv", _werner_scenario(0.7, 0.5, 0.05, 10.0, 1001)),
    ),
    "7b": (
        FigureCurve("fig7_b_alpha0.8.csv", _werner_scenario(0.7, 0.8, 0.05, 50.0, 2001)),
        FigureCurve("fig7_b_alpha0.5.csv", _werner_scenario(0.7, 0.5, 0.05, 50.0, 2001)),
    ),
    "8a": (
        FigureCurve("fig8_a_kappa0.1.csv", _werner_scenario(0.7, 0.8, 0.1, 30.0, 1501)),
        FigureCurve("fig8_a_kappa1.csv", _werner_scenario(0.7, 0.8, 1.0, 30.0, 1501)),
    ),
    "8b": (
        FigureCurve("fig8_b_kappa0.1.csv", _werner_scenario(0.9, 0.5, 0.1, 30.0, 1501)),
        FigureCurve("fig8_b_kappa1.csv", _werner_scenario(0.9, 0.5, 1.0, 30.0, 1501)),
    ),
}

FIGURE_IDS = ("2a", "2b", "3", "4a", "4b", "5a", "5b", "6a", "6b", "7a", "7b", "8a", "8b")

_SURFACE_HEADER = "c3,tau,discord"


def _write_surface(outdir: Path) -> Path:
    """Discord of the frozen family over a (c3, tau) grid at alpha=1, kappa=0.05."""
    from .correlations import frozen_family_correlations
    from .states import ChannelParams

    params = ChannelParams(alpha=1.0, kappa=0.05)
    taus = np.linspace(0.0, 3.0, 301)
    abs2 = channel.coherence_abs2(taus, params)
    rows = []
    for c3 in np.linspace(0.0, 0.98, 50):
        for k in range(taus.size):
            q = frozen_family_correlations(float(c3), min(float(abs2[k]), 1.0)).discord
            rows.append(",".join((_fmt(c3), _fmt(taus[k]), _fmt(q))))
    path = outdir / "fig3_all_surface.csv"
    _write_csv(path, _SURFACE_HEADER, rows)
    return path


def cmd_figure(args: argparse.Namespace) -> int:
    outdir = Path(args.outdir)
    written: list[Path] = []
    if args.id == "3":
        written.append(_write_surface(outdir))
    else:
        for curve in FIGURES[args.id]:
            path = outdir / curve.filename
            _write_csv(path, CSV_HEADER, _sweep_rows(curve.scenario))
            written.append(path)
    for path in written:
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discordyn",
        description="Correlation dynamics of two qubits dephasing through dissipative cavities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="write the correlation trajectory as CSV")
    p.add_argument("--config", required=True, help="scenario JSON file")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("transition", help="report branch crossings and stationary values")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("validate", help="cross-check closed forms against the integrator")
    p.add_argument("--config", required=True)
    p.add_argument("--fock-dim", type=int, default=None)
    p.add_argument("--rk4-step", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("optimize", help="run the measurement search on the scenario grid")
    p.add_argument("--config", required=True)
    p.add_argument("--grid", default=None, help="THETAxPHI grid sizes, e.g. 181x360")
    p.add_argument("--refine", type=int, default=None)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("figure", help="emit preset CSV curves for one figure")
    p.add_argument("--id", required=True, choices=FIGURE_IDS)
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_figure)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (
        UnphysicalStateError,
        StepSizeError,
        TruncationError,
        NoDissipationError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def run() -> None:
    sys.exit(main())
