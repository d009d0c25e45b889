"""Truncated-Fock integration of the dissipative-cavity master equation.

Independent oracle for the closed-form channel: the dispersive Hamiltonian
is diagonal in the atomic basis, so for each atomic label pair (a, b) the
cavity density operator block obeys its own linear equation

    dX/dtau = -i (H_a X - X H_b) + kappa (2 a X a+ - a+a X - X a+a)

with H_e = n + 1 and H_g = -n in scaled units.  Both cavities start in the
same coherent state, so one set of four N x N blocks covers both, and the
two-qubit state is reassembled from the per-cavity block traces.  Time
stepping is classical fixed-step RK4; nothing here touches the analytic
decoherence factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .states import (
    ChannelParams,
    UnphysicalStateError,
    XStateParams,
    validate_physicality,
    x_state_density,
)

BLOCK_LABELS = (("e", "e"), ("e", "g"), ("g", "e"), ("g", "g"))

TAIL_TOL = 1e-12
MIN_DIMENSION = 20
TRACE_DRIFT_TOL = 1e-8


class TruncationError(ValueError):
    """The requested Fock dimension cannot hold the coherent state."""


class StepSizeError(RuntimeError):
    """Trace drift revealed an unstable or too-coarse RK4 step."""


@dataclass(frozen=True)
class FockTruncation:
    """Number of retained photon levels 0..dimension-1."""

    dimension: int

    def __post_init__(self) -> None:
        if self.dimension < 2:
            raise ValueError(f"Fock dimension must be at least 2, got {self.dimension}")


def coherent_tail(alpha: complex, dimension: int) -> float:
    """Photon-number weight of |alpha> at or above ``dimension``.

    This is the upper Poisson tail P(n >= dimension) at mean |alpha|^2,
    evaluated through the regularized incomplete gamma function.
    """
    return float(gammainc(dimension, abs(alpha) ** 2))


def default_dimension(alpha: complex, tail_tol: float = TAIL_TOL, minimum: int = MIN_DIMENSION) -> int:
    """Smallest dimension with coherent tail below ``tail_tol``, at least ``minimum``."""
    dim = minimum
    while coherent_tail(alpha, dim) >= tail_tol:
        dim += 1
    return dim


def coherent_amplitudes(alpha: complex, dimension: int) -> np.ndarray:
    """Fock amplitudes of |alpha> truncated to ``dimension`` levels, renormalized."""
    amps = np.empty(dimension, dtype=complex)
    amps[0] = 1.0
    for n in range(1, dimension):
        amps[n] = amps[n - 1] * alpha / np.sqrt(n)
    amps *= np.exp(-abs(alpha) ** 2 / 2.0)
    return amps / np.linalg.norm(amps)


@dataclass(frozen=True)
class BlockGenerators:
    """Right-hand side of the four conditional cavity-block equations.

    ``phase`` holds the elementwise multiplier for each label pair and
    ``jump`` the coupling into X[m, n] from X[m+1, n+1].
    """

    dimension: int
    kappa: float
    phase: np.ndarray
    jump: np.ndarray

    def derivative(self, blocks: np.ndarray) -> np.ndarray:
        out = self.phase * blocks
        out[:, :-1, :-1] += self.jump * blocks[:, 1:, 1:]
        return out


def build_superoperator_blocks(
    params: ChannelParams, truncation: FockTruncation | int | None = None
) -> BlockGenerators:
    """Assemble the blockwise evolution for the given channel.

    Parameters
    ----------
    params : ChannelParams
        Coherent amplitude and scaled decay rate.
    truncation : FockTruncation, int or None
        Photon levels to retain; ``None`` selects :func:`default_dimension`.

    Raises
    ------
    TruncationError
        If an explicitly requested dimension leaves a coherent tail of
        1e-6 or more.
    """
    if truncation is None:
        dim = default_dimension(params.alpha)
    else:
        dim = truncation.dimension if isinstance(truncation, FockTruncation) else int(truncation)
        FockTruncation(dim)
        tail = coherent_tail(params.alpha, dim)
        if tail >= 1e-6:
            raise TruncationError(
                f"dimension {dim} leaves coherent tail {tail:.3g} for alpha={params.alpha}"
            )
    n = np.arange(dim, dtype=float)
    levels = {"e": n + 1.0, "g": -n}
    kappa = params.kappa
    loss = kappa * (n[:, None] + n[None, :])
    phase = np.empty((4, dim, dim), dtype=complex)
    for idx, (a, b) in enumerate(BLOCK_LABELS):
        phase[idx] = -1j * (levels[a][:, None] - levels[b][None, :]) - loss
    jump = 2.0 * kappa * np.sqrt(np.outer(n[1:], n[1:]))
    return BlockGenerators(dimension=dim, kappa=kappa, phase=phase, jump=jump)


def initial_blocks(params: ChannelParams, dimension: int) -> np.ndarray:
    """|alpha><alpha| repeated for each of the four label pairs."""
    amps = coherent_amplitudes(params.alpha, dimension)
    block = np.outer(amps, amps.conj())
    return np.broadcast_to(block, (4, dimension, dimension)).copy()


@dataclass(frozen=True)
class Trajectory:
    """Sampled reduced two-qubit states with the per-cavity block traces.

    ``block_traces[s]`` is the 2x2 matrix T with T[a, b] = Tr X_ab at
    sample s (labels ordered e, g); ``states[s]`` is the reassembled 4x4
    density matrix.
    """

    taus: np.ndarray
    states: np.ndarray
    block_traces: np.ndarray


# label pair (a_i, b_i) of each two-qubit basis vector ee, eg, ge, gg
_ATOM_A = np.array([0, 0, 1, 1])
_ATOM_B = np.array([0, 1, 0, 1])


def _assemble(rho0: np.ndarray, traces: np.ndarray) -> np.ndarray:
    factor_a = traces[_ATOM_A[:, None], _ATOM_A[None, :]]
    factor_b = traces[_ATOM_B[:, None], _ATOM_B[None, :]]
    return rho0 * factor_a * factor_b


def _rk4_step(gen: BlockGenerators, blocks: np.ndarray, h: float) -> np.ndarray:
    k1 = gen.derivative(blocks)
    k2 = gen.derivative(blocks + 0.5 * h * k1)
    k3 = gen.derivative(blocks + 0.5 * h * k2)
    k4 = gen.derivative(blocks + h * k3)
    return blocks + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(
    c: XStateParams,
    params: ChannelParams,
    truncation: FockTruncation | int | None = None,
    tau_max: float = 10.0,
    step: float = 1e-3,
    sample_interval: float = 0.01,
) -> Trajectory:
    """Evolve the blockwise master equation and sample the reduced state.

    Parameters
    ----------
    c : XStateParams
        Initial atomic correlation coefficients (validated).
    params : ChannelParams
        Cavity amplitude and decay rate.
    truncation : FockTruncation, int or None
        Retained photon levels; ``None`` picks the default for ``alpha``.
    tau_max : float
        End of the integration window; samples land on multiples of
        ``sample_interval`` up to and including ``tau_max`` when it is one.
    step : float
        Nominal RK4 step; rounded so an integer number of steps spans each
        sample interval.

    Raises
    ------
    StepSizeError
        When any diagonal-label block trace drifts from 1 by more than
        1e-8, the fixed step is too coarse (or unstable).
    """
    report = validate_physicality(c)
    if not report.ok:
        raise UnphysicalStateError("; ".join(report.violations))
    if tau_max < 0.0:
        raise ValueError("tau_max must be nonnegative")
    if step <= 0.0 or sample_interval <= 0.0:
        raise ValueError("step and sample_interval must be positive")

    gen = build_superoperator_blocks(params, truncation)
    blocks = initial_blocks(params, gen.dimension)
    rho0 = x_state_density(c)

    n_samples = int(np.floor(tau_max / sample_interval + 1e-9)) + 1
    steps_per_sample = max(1, int(round(sample_interval / step)))
    h = sample_interval / steps_per_sample

    taus = np.empty(n_samples)
    states = np.empty((n_samples, 4, 4), dtype=complex)
    traces = np.empty((n_samples, 2, 2), dtype=complex)
    for s in range(n_samples):
        if s > 0:
            for _ in range(steps_per_sample):
                blocks = _rk4_step(gen, blocks, h)
        t = np.trace(blocks, axis1=1, axis2=2).reshape(2, 2)
        drift = max(abs(t[0, 0] - 1.0), abs(t[1, 1] - 1.0))
        if not np.isfinite(drift) or drift > TRACE_DRIFT_TOL:
            raise StepSizeError(
                f"block trace drift {drift:.3g} at tau={s * sample_interval:.6g} "
                f"with step {h:.3g}; reduce the step"
            )
        taus[s] = s * sample_interval
        traces[s] = t
        states[s] = _assemble(rho0, t)
    return Trajectory(taus=taus, states=states, block_traces=traces)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the sum of singular values of a - b.

    Both inputs are expected to be density matrices; the difference is
    hermitian, so the singular values are the absolute eigenvalues.
    """
    diff = np.asarray(a) - np.asarray(b)
    herm = np.max(np.abs(diff - diff.conj().T))
    if herm > 1e-8:
        raise ValueError(f"difference is not hermitian (defect {herm:.3g})")
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))
