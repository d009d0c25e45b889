"""End-to-end acceptance checks.

One test per headline behavior; each prints a PASS/FAIL line (visible with
pytest -s) and then asserts, so the suite doubles as a checklist.
"""

import math

import numpy as np

from conftest import random_physical_params
from discordyn.analysis import find_transitions, frozen_family, stationary_values, sweep
from discordyn.channel import CoherenceFactor, apply_coherence, coherence_factor, reduced_state
from discordyn.correlations import (
    binary_entropy,
    correlation_triple,
    werner_correlations,
)
from discordyn.lindblad import integrate, trace_distance
from discordyn.measurement import discord_numeric
from discordyn.states import (
    ChannelParams,
    WernerParams,
    XStateParams,
    validate_density_matrix,
)

PLATEAU_06 = 1.0 - binary_entropy(0.8)


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'}: {name} ({detail})")
    assert ok, f"{name}: {detail}"


def test_frozen_plateau():
    family = frozen_family(0.6)
    worst = 0.0
    for alpha in (1.2, 0.8):
        channel = ChannelParams(alpha=alpha, kappa=0.05)
        table = sweep(family, channel, np.linspace(0.0, 10.0, 4001))
        mask = table.abs2 >= 0.6
        worst = max(worst, float(np.max(np.abs(table.discord[mask] - PLATEAU_06))))
    _report(
        "frozen plateau: discord = 1 - H2(0.8) wherever |F|^2 >= 0.6",
        worst < 1e-9,
        f"max deviation {worst:.3g}",
    )


def test_sudden_transition():
    first = {}
    stable = True
    for alpha in (1.2, 0.8):
        channel = ChannelParams(alpha=alpha, kappa=0.05)
        base = find_transitions(0.6, channel, window=(0.0, 5.0), samples=10_000)
        dense = find_transitions(0.6, channel, window=(0.0, 5.0), samples=20_000)
        stable &= len(base.crossings) == len(dense.crossings)
        stable &= abs(base.crossings[0] - dense.crossings[0]) < 2e-9
        first[alpha] = base.crossings[0]
    ordered = first[1.2] < first[0.8]
    _report(
        "sudden transition: bisected crossings, earlier for larger alpha",
        ordered and stable,
        f"tau_bar(1.2)={first[1.2]:.9f}, tau_bar(0.8)={first[0.8]:.9f}",
    )


def test_stationary_discord():
    channel = ChannelParams(alpha=0.8, kappa=0.05)
    table = sweep(frozen_family(0.6), channel, np.array([200.0]))
    reference = 1.0 - binary_entropy((1.0 + math.exp(-1.276808)) / 2.0)
    gap = abs(float(table.discord[0]) - reference)
    _report(
        "stationary discord: sweep at tau=200 matches the analytic limit",
        gap < 1e-6,
        f"|Q(200) - Q_inf| = {gap:.3g}",
    )


def test_unaffected_regime():
    channel = ChannelParams(alpha=0.8, kappa=2.0)
    report = find_transitions(0.7, channel, window=(0.0, 50.0))
    table = sweep(frozen_family(0.7), channel, np.linspace(0.0, 50.0, 5001))
    plateau = 1.0 - binary_entropy(0.85)
    worst = float(np.max(np.abs(table.discord - plateau)))
    _report(
        "unaffected regime: kappa=2 keeps discord on the plateau",
        len(report.crossings) == 0 and worst < 1e-9,
        f"crossings={len(report.crossings)}, max deviation {worst:.3g}",
    )


def test_werner_laws():
    channel = ChannelParams(alpha=0.5, kappa=0.05)
    taus = np.linspace(0.0, 30.0, 601)
    flat = max(
        float(np.ptp(sweep(WernerParams(r), channel, taus).classical)) for r in (0.5, 0.7, 0.9)
    )
    unit = abs(werner_correlations(1.0, 1.0).discord - 1.0)
    lo = stationary_values(WernerParams(0.9), ChannelParams(alpha=0.5, kappa=0.1)).triple.discord
    hi = stationary_values(WernerParams(0.9), ChannelParams(alpha=0.5, kappa=1.0)).triple.discord
    ok = flat < 1e-12 and unit < 1e-12 and hi > lo
    _report(
        "Werner laws: constant classical, unit discord at r=1, kappa-enhanced limit",
        ok,
        f"classical ptp {flat:.3g}, |Q(r=1)-1| {unit:.3g}, Q_inf {lo:.6f} -> {hi:.6f}",
    )


def test_optimizer_equivalence():
    coefficient_sets = [
        XStateParams(1.0, -0.6, 0.6),
        XStateParams(1.0, -0.2, 0.2),
        XStateParams(-0.7, -0.7, -0.7),
        XStateParams(0.7, -0.5, 0.3),
        XStateParams(0.5, 0.4, -0.1),
    ]
    abs2_values = (0.05, 0.3, 0.55, 0.8, 1.0)
    worst = 0.0
    for i, params in enumerate(coefficient_sets):
        for j, abs2 in enumerate(abs2_values):
            factor = CoherenceFactor.from_value(
                np.sqrt(abs2) * np.exp(1j * (0.7 * i + 1.3 * j))
            )
            rho = apply_coherence(params, factor)
            closed = correlation_triple(params, abs2).discord
            numeric = discord_numeric(rho)
            worst = max(worst, abs(numeric - closed))
    _report(
        "optimizer equivalence: measurement search matches closed form on 25 combos",
        worst < 1e-6,
        f"max |Q_numeric - Q_closed| = {worst:.3g}",
    )


def test_master_equation_oracle():
    c = XStateParams(1.0, -0.6, 0.6)
    channel = ChannelParams(alpha=0.8, kappa=0.05)

    def max_err(step):
        traj = integrate(c, channel, truncation=30, tau_max=10.0, step=step)
        return max(
            trace_distance(traj.states[s], reduced_state(c, float(traj.taus[s]), channel))
            for s in range(traj.taus.size)
        )

    err = max_err(1e-3)
    err_half = max_err(5e-4)
    ratio = err / err_half
    ok = err < 1e-6 and 10.0 < ratio < 24.0
    _report(
        "master-equation oracle: trace distance < 1e-6 and RK4 step halving gains ~16x",
        ok,
        f"max distance {err:.3g}, halving ratio {ratio:.1f}",
    )


def test_invariant_suite():
    rng = np.random.default_rng(991)
    worst_additivity = 0.0
    worst_abs = 0.0
    ok = True
    for _ in range(100):
        params = random_physical_params(rng)
        alpha = rng.uniform(0.0, 1.2) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        channel = ChannelParams(alpha=alpha, kappa=rng.uniform(0.0, 3.0))
        tau = rng.uniform(0.0, 50.0)
        factor = coherence_factor(tau, channel)
        worst_abs = max(worst_abs, abs(factor.value))
        rho = apply_coherence(params, factor)
        validate_density_matrix(rho)
        triple = correlation_triple(params, min(factor.abs2, 1.0))
        worst_additivity = max(
            worst_additivity, abs(triple.mutual_info - triple.classical - triple.discord)
        )
        ok &= triple.discord >= 0.0 and triple.classical >= 0.0
        ok &= triple.discord <= triple.mutual_info + 1e-12
    ok &= worst_abs <= 1.0 + 1e-12 and worst_additivity < 1e-12
    _report(
        "invariant suite: 100 random states keep density, |F| and additivity invariants",
        ok,
        f"max |F| = {worst_abs:.12f}, additivity defect {worst_additivity:.3g}",
    )
