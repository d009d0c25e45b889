import numpy as np
import pytest

from conftest import random_physical_params
from discordyn.channel import CoherenceFactor, apply_coherence, coherence_factor
from discordyn.correlations import classical_correlation, correlation_triple
from discordyn.measurement import (
    ProjectorAngles,
    average_conditional_entropy,
    conditional_states,
    discord_numeric,
    eta_value,
    maximize_classical,
    projector_kets,
)
from discordyn.states import ChannelParams, XStateParams, werner_params, x_state_density

PLATEAU_06 = 0.2780719051126377


def _factor(abs2: float, phase: float = 0.0) -> CoherenceFactor:
    return CoherenceFactor.from_value(np.sqrt(abs2) * np.exp(1j * phase))


def test_projector_kets_orthonormal(rng):
    for _ in range(50):
        angles = ProjectorAngles(rng.uniform(0.0, np.pi / 2.0), rng.uniform(0.0, 2.0 * np.pi))
        k1, k2 = projector_kets(angles)
        assert abs(np.vdot(k1, k1) - 1.0) < 1e-14
        assert abs(np.vdot(k2, k2) - 1.0) < 1e-14
        assert abs(np.vdot(k1, k2)) < 1e-14


def test_polar_measurement_gives_diagonal_conditionals():
    params = XStateParams(1.0, -0.6, 0.6)
    rho = apply_coherence(params, _factor(0.7))
    o1, o2 = conditional_states(rho, ProjectorAngles(0.0, 0.0))
    assert o1.probability == pytest.approx(0.5, abs=1e-12)
    assert o2.probability == pytest.approx(0.5, abs=1e-12)
    assert np.allclose(o1.state, np.diag([0.8, 0.2]), atol=1e-12)
    assert np.allclose(o2.state, np.diag([0.2, 0.8]), atol=1e-12)


def test_maximally_mixed_conditionals(rng):
    rho = np.eye(4, dtype=complex) / 4.0
    for _ in range(10):
        angles = ProjectorAngles(rng.uniform(0.0, np.pi / 2.0), rng.uniform(0.0, 2.0 * np.pi))
        o1, o2 = conditional_states(rho, angles)
        assert o1.probability == pytest.approx(0.5, abs=1e-14)
        assert np.allclose(o1.state, np.eye(2) / 2.0, atol=1e-14)
        assert np.allclose(o2.state, np.eye(2) / 2.0, atol=1e-14)


def test_conditional_states_match_dense_oracle(rng):
    for _ in range(50):
        params = random_physical_params(rng)
        rho = apply_coherence(params, _factor(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0 * np.pi)))
        angles = ProjectorAngles(rng.uniform(0.0, np.pi / 2.0), rng.uniform(0.0, 2.0 * np.pi))
        outcomes = conditional_states(rho, angles)
        for ket, outcome in zip(projector_kets(angles), outcomes):
            proj = np.kron(np.eye(2), np.outer(ket, ket.conj()))
            dense = proj @ rho @ proj
            p = float(np.real(np.trace(dense)))
            assert outcome.probability == pytest.approx(p, abs=1e-12)
            # partial trace over B of the projected state
            reduced = (dense / p).reshape(2, 2, 2, 2)
            reduced = np.einsum("imjm->ij", reduced)
            assert np.max(np.abs(outcome.state - reduced)) < 1e-12


def test_zero_probability_outcome():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0  # |ee><ee|
    o1, o2 = conditional_states(rho, ProjectorAngles(np.pi / 2.0, 0.0))
    assert o1.probability == pytest.approx(0.0, abs=1e-14)
    assert np.allclose(o1.state, np.eye(2) / 2.0)
    assert o2.probability == pytest.approx(1.0, abs=1e-14)
    assert average_conditional_entropy(rho, ProjectorAngles(np.pi / 2.0, 0.0)) == pytest.approx(
        0.0, abs=1e-12
    )


def test_eta_polar_equals_c3():
    factor = _factor(0.42, 1.1)
    for c3 in (-0.8, -0.2, 0.5, 0.9):
        params = XStateParams(0.0, 0.0, c3)
        assert eta_value(params, factor, ProjectorAngles(0.0, 0.7)) == pytest.approx(
            abs(c3), abs=1e-14
        )


def test_eta_equatorial_peak_is_branch_value(rng):
    for _ in range(30):
        params = random_physical_params(rng)
        abs2 = rng.uniform(0.0, 1.0)
        factor = _factor(abs2, rng.uniform(0.0, 2.0 * np.pi))
        phis = np.linspace(0.0, 2.0 * np.pi, 2001)
        peak = max(
            eta_value(params, factor, ProjectorAngles(np.pi / 4.0, float(p))) for p in phis
        )
        target = abs2 * max(abs(params.c1), abs(params.c2))
        assert peak == pytest.approx(target, abs=1e-6)


def test_eta_matches_conditional_eigenvalues(rng):
    for _ in range(100):
        params = random_physical_params(rng)
        factor = _factor(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0 * np.pi))
        rho = apply_coherence(params, factor)
        angles = ProjectorAngles(rng.uniform(0.0, np.pi / 2.0), rng.uniform(0.0, 2.0 * np.pi))
        eta = eta_value(params, factor, angles)
        for outcome in conditional_states(rho, angles):
            eigs = np.sort(np.linalg.eigvalsh(outcome.state))
            assert abs(eigs[0] - (1.0 - eta) / 2.0) < 1e-10
            assert abs(eigs[1] - (1.0 + eta) / 2.0) < 1e-10
            det = float(np.real(np.linalg.det(outcome.state)))
            assert eta == pytest.approx(np.sqrt(max(1.0 - 4.0 * det, 0.0)), abs=1e-10)


def test_phi_peak_invariant_under_factor_phase(rng):
    from scipy.optimize import minimize_scalar

    phis = np.linspace(0.0, 2.0 * np.pi, 721)

    def refined_peak(params, factor):
        values = [eta_value(params, factor, ProjectorAngles(np.pi / 4.0, float(p))) for p in phis]
        center = phis[int(np.argmax(values))]
        res = minimize_scalar(
            lambda p: -eta_value(params, factor, ProjectorAngles(np.pi / 4.0, p)),
            bounds=(center - 0.01, center + 0.01),
            method="bounded",
            options={"xatol": 1e-12},
        )
        return -res.fun

    for _ in range(10):
        params = random_physical_params(rng)
        abs2 = rng.uniform(0.1, 1.0)
        base = _factor(abs2, 0.0)
        rotated = _factor(abs2, rng.uniform(0.0, 2.0 * np.pi))
        assert abs(refined_peak(params, base) - refined_peak(params, rotated)) < 1e-10


def test_maximize_classical_maximally_mixed():
    classical, _ = maximize_classical(np.eye(4, dtype=complex) / 4.0, 21, 40, 20)
    assert classical == pytest.approx(0.0, abs=1e-12)


def test_maximize_classical_equatorial_branch():
    rho = apply_coherence(XStateParams(1.0, -0.6, 0.6), _factor(1.0))
    classical, angles = maximize_classical(rho)
    assert classical == pytest.approx(1.0, abs=1e-7)
    assert classical <= 1.0 + 1e-9
    assert abs(angles.theta - np.pi / 4.0) < 0.01


def test_maximize_classical_polar_branch():
    rho = apply_coherence(XStateParams(1.0, -0.6, 0.6), _factor(0.3))
    classical, angles = maximize_classical(rho)
    assert classical == pytest.approx(PLATEAU_06, abs=1e-7)
    assert angles.theta < 0.01


def test_maximize_classical_tie_prefers_smaller_angles():
    # at abs2 = |c3| both branches are optimal; theta = 0 sorts first
    rho = apply_coherence(XStateParams(1.0, -0.6, 0.6), _factor(0.6))
    classical, angles = maximize_classical(rho)
    assert classical == pytest.approx(PLATEAU_06, abs=1e-7)
    assert angles.theta < 1e-6


def test_maximize_classical_bounds_vs_closed_form(rng):
    for _ in range(8):
        params = random_physical_params(rng)
        abs2 = rng.uniform(0.0, 1.0)
        rho = apply_coherence(params, _factor(abs2, rng.uniform(0.0, 2.0 * np.pi)))
        numeric, _ = maximize_classical(rho, 91, 180, 40)
        closed = classical_correlation(params, abs2)
        assert numeric <= closed + 1e-9
        assert numeric >= closed - 1e-6


def test_maximize_classical_grid_too_small():
    with pytest.raises(ValueError):
        maximize_classical(np.eye(4) / 4.0, 4, 360)
    with pytest.raises(ValueError):
        maximize_classical(np.eye(4) / 4.0, 181, 5)


def test_discord_numeric_singlet():
    rho = x_state_density(werner_params(1.0))
    assert discord_numeric(rho, 61, 120, 30) == pytest.approx(1.0, abs=1e-6)


def test_discord_numeric_product_state():
    assert discord_numeric(np.eye(4, dtype=complex) / 4.0, 21, 40, 20) == pytest.approx(
        0.0, abs=1e-9
    )


def test_discord_numeric_vs_closed(rng):
    for _ in range(6):
        params = random_physical_params(rng)
        tau = rng.uniform(0.0, 10.0)
        channel = ChannelParams(alpha=rng.uniform(0.0, 1.2), kappa=rng.uniform(0.05, 2.0))
        factor = coherence_factor(tau, channel)
        rho = apply_coherence(params, factor)
        closed = correlation_triple(params, min(factor.abs2, 1.0)).discord
        numeric = discord_numeric(rho, 91, 180, 40)
        assert abs(numeric - closed) < 1e-6
