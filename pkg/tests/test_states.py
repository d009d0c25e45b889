import numpy as np
import pytest

from conftest import random_physical_params
from discordyn.states import (
    ChannelParams,
    UnphysicalStateError,
    WernerParams,
    XStateParams,
    validate_density_matrix,
    validate_physicality,
    werner_params,
    x_state_density,
)


def test_maximally_mixed():
    rho = x_state_density(XStateParams(0.0, 0.0, 0.0))
    assert np.array_equal(rho, np.eye(4) / 4.0)


def test_matrix_layout():
    rho = x_state_density(XStateParams(1.0, -0.6, 0.6))
    assert rho[0, 0] == rho[3, 3] == pytest.approx(0.4)
    assert rho[1, 1] == rho[2, 2] == pytest.approx(0.1)
    assert rho[0, 3] == rho[3, 0] == pytest.approx(0.4)  # (c1 - c2)/4
    assert rho[1, 2] == rho[2, 1] == pytest.approx(0.1)  # (c1 + c2)/4
    assert rho[0, 1] == rho[0, 2] == rho[1, 3] == rho[2, 3] == 0.0


def test_singlet():
    rho = x_state_density(XStateParams(-1.0, -1.0, -1.0))
    ket = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0)
    assert np.allclose(rho, np.outer(ket, ket), atol=1e-15)


def test_bell_weights_example():
    weights = XStateParams(1.0, -0.6, 0.6).bell_weights()
    assert np.allclose(np.sort(weights), [0.0, 0.0, 0.2, 0.8], atol=1e-15)


def test_physicality_pass():
    report = validate_physicality(XStateParams(1.0, -0.6, 0.6))
    assert report.ok
    assert report.violations == ()


def test_physicality_violation_names_eigenvalue():
    report = validate_physicality(XStateParams(1.0, 1.0, 1.0))
    assert not report.ok
    assert any("(1 - c1 - c2 - c3)/4" in v for v in report.violations)
    assert any("-0.5" in v for v in report.violations)


def test_unphysical_density_raises():
    with pytest.raises(UnphysicalStateError, match=r"\(1 - c1 - c2 - c3\)/4"):
        x_state_density(XStateParams(1.0, 1.0, 1.0))


def test_coefficient_magnitude_violation():
    report = validate_physicality(XStateParams(1.5, 0.0, 0.0))
    assert not report.ok
    assert any("|c1|" in v for v in report.violations)


def test_werner_params_range():
    assert werner_params(0.0) == XStateParams(0.0, 0.0, 0.0)
    assert werner_params(0.7).as_tuple() == (-0.7, -0.7, -0.7)
    with pytest.raises(ValueError):
        werner_params(-0.1)
    with pytest.raises(ValueError):
        werner_params(1.1)
    with pytest.raises(ValueError):
        WernerParams(2.0)


def test_werner_states_physical():
    for r in np.linspace(0.0, 1.0, 11):
        rho = x_state_density(werner_params(float(r)))
        validate_density_matrix(rho)


def test_channel_params_validation():
    ChannelParams(alpha=0.8, kappa=0.05)
    with pytest.raises(ValueError):
        ChannelParams(alpha=0.8, kappa=-0.1)
    with pytest.raises(ValueError):
        ChannelParams(alpha=complex(np.inf, 0.0), kappa=1.0)
    with pytest.raises(ValueError):
        ChannelParams(alpha=1.0, kappa=np.nan)


def test_nbar():
    assert ChannelParams(alpha=1.2j, kappa=0.5).nbar == pytest.approx(1.44)


def test_random_states_are_density_matrices(rng):
    for _ in range(200):
        params = random_physical_params(rng)
        rho = x_state_density(params)
        validate_density_matrix(rho)
        # both marginals maximally mixed
        rho4 = rho.reshape(2, 2, 2, 2)
        assert np.allclose(np.einsum("imjm->ij", rho4), np.eye(2) / 2.0, atol=1e-15)
        assert np.allclose(np.einsum("mimj->ij", rho4), np.eye(2) / 2.0, atol=1e-15)


def test_validate_density_matrix_rejects():
    with pytest.raises(UnphysicalStateError, match="square"):
        validate_density_matrix(np.zeros((2, 3)))
    bad_herm = np.eye(4, dtype=complex) / 4.0
    bad_herm[0, 1] = 0.1j
    with pytest.raises(UnphysicalStateError, match="hermiticity"):
        validate_density_matrix(bad_herm)
    with pytest.raises(UnphysicalStateError, match="trace"):
        validate_density_matrix(np.eye(4) / 2.0)
    negative = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
    with pytest.raises(UnphysicalStateError, match="negative eigenvalue"):
        validate_density_matrix(negative)
