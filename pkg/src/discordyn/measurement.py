"""Numerical maximization of the classical correlation over local projectors.

This is the independent route to the discord: measure qubit B with the
projector pair indexed by two angles, evaluate the average conditional
entropy of qubit A from the dense 4x4 state, and minimize over angles.
It makes no use of the closed-form branch expression, so agreement with
:mod:`discordyn.correlations` is a genuine cross-check.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .channel import CoherenceFactor
from .correlations import NEGATIVE_CLAMP, _xlog2x, von_neumann_entropy
from .states import XStateParams

logger = logging.getLogger(__name__)

ETA_BOUND_SLACK = 1e-9
_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
_PROB_FLOOR = 1e-14


@dataclass(frozen=True)
class ProjectorAngles:
    """Polar half-angle and azimuth of the measured basis on qubit B."""

    theta: float
    phi: float

    def wrapped(self) -> "ProjectorAngles":
        """Equivalent angles with theta in [0, pi/2) and phi in [0, 2 pi).

        Shifting theta by pi/2 swaps the two projectors, so the measurement
        itself is unchanged.
        """
        return ProjectorAngles(
            theta=float(np.mod(self.theta, np.pi / 2.0)),
            phi=float(np.mod(self.phi, 2.0 * np.pi)),
        )


@dataclass(frozen=True)
class ConditionalOutcome:
    probability: float
    state: np.ndarray


def projector_kets(angles: ProjectorAngles) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis kets (cos t, e^{i p} sin t) and (e^{-i p} sin t, -cos t)."""
    ct, st = np.cos(angles.theta), np.sin(angles.theta)
    phase = np.exp(1j * angles.phi)
    k1 = np.array([ct, phase * st])
    k2 = np.array([np.conj(phase) * st, -ct])
    return k1, k2


def conditional_states(
    rho: np.ndarray, angles: ProjectorAngles
) -> tuple[ConditionalOutcome, ConditionalOutcome]:
    """States of qubit A after each projective outcome on qubit B.

    A zero-probability outcome is returned with the maximally mixed state,
    so its entropy contribution is well defined (and weighted by zero).
    """
    rho4 = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    outcomes = []
    for ket in projector_kets(angles):
        proj = np.outer(ket, ket.conj())
        # rho_A[i, j] = sum_{m, n} rho[(i, m), (j, n)] proj[n, m]
        sub = np.einsum("imjn,nm->ij", rho4, proj)
        p = float(np.real(sub[0, 0] + sub[1, 1]))
        if p < _PROB_FLOOR:
            outcomes.append(ConditionalOutcome(probability=max(p, 0.0), state=np.eye(2) / 2.0))
        else:
            outcomes.append(ConditionalOutcome(probability=p, state=sub / p))
    return outcomes[0], outcomes[1]


def eta_value(params: XStateParams, factor: CoherenceFactor, angles: ProjectorAngles) -> float:
    """Bloch-vector length of the conditional state of qubit A.

    eta^2 = c3^2 cos^2 2t + (|F|^4 / 4) [2 (c1^2 + c2^2)
            + 2 (c1^2 - c2^2) cos(2p + arg F^2)] sin^2 2t

    Both outcomes give the same length, so the average conditional entropy
    is H2((1 + eta)/2).  Values above max(|c3|, |F|^2 max|c_i|) by more
    than a small slack indicate an inconsistency and are logged.
    """
    c1, c2, c3 = params.as_tuple()
    cos2t = np.cos(2.0 * angles.theta)
    sin2t = np.sin(2.0 * angles.theta)
    bracket = 2.0 * (c1**2 + c2**2) + 2.0 * (c1**2 - c2**2) * np.cos(
        2.0 * angles.phi + factor.squared_phase
    )
    eta_sq = c3**2 * cos2t**2 + (factor.abs2**2 / 4.0) * bracket * sin2t**2
    eta = float(np.sqrt(max(eta_sq, 0.0)))
    bound = max(abs(c3), factor.abs2 * max(abs(c1), abs(c2)))
    if eta > bound + ETA_BOUND_SLACK:
        logger.warning("conditional Bloch length %.12g exceeds branch bound %.12g", eta, bound)
    return eta


def _entropy_grid(rho4: np.ndarray, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Average conditional entropy on a (theta, phi) grid, fully vectorized."""
    ct = np.cos(thetas)[:, None]
    st = np.sin(thetas)[:, None]
    ph = np.exp(1j * phis)[None, :]
    shape = np.broadcast_shapes(ct.shape, ph.shape)
    kets = (
        (np.broadcast_to(ct, shape), np.broadcast_to(st * ph, shape)),
        (np.broadcast_to(st * np.conj(ph), shape), np.broadcast_to(-ct + 0j, shape)),
    )
    total = np.zeros(shape)
    for a, b in kets:
        proj = np.empty(shape + (2, 2), dtype=complex)
        proj[..., 0, 0] = a * np.conj(a)
        proj[..., 0, 1] = a * np.conj(b)
        proj[..., 1, 0] = b * np.conj(a)
        proj[..., 1, 1] = b * np.conj(b)
        sub = np.einsum("imjn,tpnm->tpij", rho4, proj)
        p = np.real(sub[..., 0, 0] + sub[..., 1, 1])
        det = np.real(
            sub[..., 0, 0] * sub[..., 1, 1] - sub[..., 0, 1] * sub[..., 1, 0]
        )
        safe_p = np.where(p > _PROB_FLOOR, p, 1.0)
        det_norm = np.clip(det / safe_p**2, 0.0, 0.25)
        eta = np.sqrt(1.0 - 4.0 * det_norm)
        lo = (1.0 - eta) / 2.0
        hi = (1.0 + eta) / 2.0
        entropy = -_xlog2x(lo) - _xlog2x(hi)
        total += np.where(p > _PROB_FLOOR, p * entropy, 0.0)
    return total


def average_conditional_entropy(rho: np.ndarray, angles: ProjectorAngles) -> float:
    """sum_k p_k S(rho_A | outcome k) for a single measurement basis."""
    rho4 = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    grid = _entropy_grid(rho4, np.array([angles.theta]), np.array([angles.phi]))
    return float(grid[0, 0])


def _golden_min(fn, lo: float, hi: float, iters: int) -> tuple[float, float]:
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = fn(d)
    return (c, fc) if fc < fd else (d, fd)


def maximize_classical(
    rho: np.ndarray,
    grid_theta: int = 181,
    grid_phi: int = 360,
    refine_iters: int = 40,
) -> tuple[float, ProjectorAngles]:
    """Classical correlation of ``rho`` by direct search over projectors.

    Parameters
    ----------
    rho : ndarray
        4x4 density matrix (any state with qubit tensor structure).
    grid_theta, grid_phi : int
        Coarse grid over theta in [0, pi/2] and phi in [0, 2 pi); both
        must be at least 8.
    refine_iters : int
        Golden-section iterations per coordinate pass during refinement.

    Returns
    -------
    (float, ProjectorAngles)
        The maximal S(rho_A) - sum_k p_k S(rho_A|k), small negatives
        clamped to zero, and the maximizing angles.  The coarse-grid
        argmin plus the two analytic branch candidates (polar theta = 0
        and equatorial theta = pi/4) are all refined, and ties go to the
        lexicographically smaller angle pair.
    """
    if grid_theta < 8 or grid_phi < 8:
        raise ValueError("angle grids need at least 8 points each")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    rho4 = rho.reshape(2, 2, 2, 2)
    thetas = np.linspace(0.0, np.pi / 2.0, grid_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, grid_phi, endpoint=False)
    grid = _entropy_grid(rho4, thetas, phis)

    it, ip = np.unravel_index(np.argmin(grid), grid.shape)
    dt = thetas[1] - thetas[0]
    dp = phis[1] - phis[0]
    candidates = [
        (float(thetas[it]), float(phis[ip])),
        (0.0, 0.0),
        (np.pi / 4.0, float(phis[np.argmin(grid[int(np.argmin(np.abs(thetas - np.pi / 4.0)))])])),
    ]

    def entropy_at(theta: float, phi: float) -> float:
        return float(_entropy_grid(rho4, np.array([theta]), np.array([phi]))[0, 0])

    best_value = np.inf
    best_angles = ProjectorAngles(0.0, 0.0)
    for theta0, phi0 in candidates:
        theta, phi = theta0, phi0
        value = entropy_at(theta, phi)
        # keep the unrefined anchor in the pool: on a flat ridge the golden
        # search drifts off exact branch angles without improving the value
        entrants = [(value, ProjectorAngles(theta, phi).wrapped())]
        for _ in range(2):
            theta, value = _golden_min(
                lambda t: entropy_at(t, phi), theta - dt, theta + dt, refine_iters
            )
            phi, value = _golden_min(
                lambda p: entropy_at(theta, p), phi - dp, phi + dp, refine_iters
            )
        entrants.append((value, ProjectorAngles(theta, phi).wrapped()))
        for value, wrapped in entrants:
            if value < best_value - 1e-12:
                best_value, best_angles = value, wrapped
            elif value <= best_value + 1e-12 and (wrapped.theta, wrapped.phi) < (
                best_angles.theta,
                best_angles.phi,
            ):
                best_value, best_angles = min(best_value, value), wrapped

    rho_a = np.einsum("imjm->ij", rho4)
    classical = von_neumann_entropy(rho_a) - best_value
    if -NEGATIVE_CLAMP <= classical < 0.0:
        classical = 0.0
    return classical, best_angles


def discord_numeric(
    rho: np.ndarray,
    grid_theta: int = 181,
    grid_phi: int = 360,
    refine_iters: int = 40,
) -> float:
    """Discord I - max C from the dense search, with tiny negatives clamped."""
    rho = np.asarray(rho, dtype=complex)
    rho4 = rho.reshape(2, 2, 2, 2)
    rho_a = np.einsum("imjm->ij", rho4)
    rho_b = np.einsum("mimj->ij", rho4)
    mutual = (
        von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b) - von_neumann_entropy(rho)
    )
    classical, _ = maximize_classical(rho, grid_theta, grid_phi, refine_iters)
    discord = mutual - classical
    if -NEGATIVE_CLAMP <= discord < 0.0:
        discord = 0.0
    return discord
