"""Closed-form single-atom decoherence factor and the evolved two-qubit state.

Each atom dephases through its cavity; the coherence of the upper/lower
atomic pair is multiplied by F(tau) = f(tau) * chi(tau), where f collects
the deterministic phase and amplitude decay of the displaced cavity field
and chi is the overlap of the two conditionally displaced coherent states.
Time is measured in units of the inverse dispersive shift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import ChannelParams, UnphysicalStateError, XStateParams, x_state_density


@dataclass(frozen=True)
class CoherenceFactor:
    """Value of F(tau) together with its squared magnitude."""

    value: complex
    abs2: float

    @classmethod
    def from_value(cls, value: complex) -> "CoherenceFactor":
        value = complex(value)
        return cls(value=value, abs2=abs(value) ** 2)

    @property
    def squared_phase(self) -> float:
        """Argument of F^2, the phase applied to the outer coherence."""
        return float(np.angle(self.value**2))


def _check_tau(tau) -> np.ndarray:
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0.0):
        raise ValueError("tau must be nonnegative")
    return tau


def f_factor(tau, params: ChannelParams):
    """Deterministic part of the decoherence factor.

    f(tau) = exp(-i tau + |alpha|^2 (e^{-2 kappa tau} - 1))
             * exp(|alpha|^2 kappa / (kappa + i) * (1 - e^{-2 (kappa + i) tau}))

    Parameters
    ----------
    tau : array_like
        Scaled time, nonnegative.
    params : ChannelParams
        Amplitude and decay rate.

    Returns
    -------
    complex ndarray (or scalar for scalar input)
    """
    tau = _check_tau(tau)
    nbar = params.nbar
    kappa = params.kappa
    decay = np.expm1(-2.0 * kappa * tau)  # e^{-2 kappa tau} - 1, exact near 0
    first = np.exp(-1j * tau + nbar * decay)
    pole = kappa + 1j
    second = np.exp(nbar * kappa / pole * (1.0 - np.exp(-2.0 * pole * tau)))
    return first * second


def chi_overlap(tau, params: ChannelParams):
    """Overlap of the two conditionally displaced cavity states.

    chi(tau) = exp(|alpha|^2 e^{-2 kappa tau} (e^{-2 i tau} - 1)); this is
    <a_-|a_+> for a_{+/-} = alpha e^{-(kappa +/- i) tau} including the
    phase of the cross term.
    """
    tau = _check_tau(tau)
    nbar = params.nbar
    envelope = np.exp(-2.0 * params.kappa * tau)
    return np.exp(nbar * envelope * (np.exp(-2j * tau) - 1.0))


def coherence_factor(tau: float, params: ChannelParams) -> CoherenceFactor:
    """F(tau) = f(tau) chi(tau) for a single scaled time."""
    value = complex(f_factor(tau, params) * chi_overlap(tau, params))
    return CoherenceFactor.from_value(value)


def coherence_abs2(tau, params: ChannelParams):
    """|F(tau)|^2 for array input; convenience for sweeps and root finding."""
    return np.abs(f_factor(tau, params) * chi_overlap(tau, params)) ** 2


def apply_coherence(params: XStateParams, factor: CoherenceFactor) -> np.ndarray:
    """Evolved density matrix for a given coherence factor.

    Populations are untouched.  The outer anti-diagonal pair picks up F^2
    (both atoms contribute a factor F) and the inner pair |F|^2.
    """
    rho = x_state_density(params)
    f2 = factor.value**2
    rho[0, 3] *= f2
    rho[3, 0] *= np.conj(f2)
    rho[1, 2] *= factor.abs2
    rho[2, 1] *= factor.abs2
    return rho


def reduced_state(params: XStateParams, tau: float, channel: ChannelParams) -> np.ndarray:
    """Two-qubit density matrix at scaled time ``tau``."""
    return apply_coherence(params, coherence_factor(tau, channel))


def spectrum(params: XStateParams, abs2: float) -> np.ndarray:
    """Eigenvalues of the evolved state as a function of |F|^2.

    Returns the four values
    [(1 - c3) + |F|^2 |c1 + c2|] / 4, [(1 - c3) - |F|^2 |c1 + c2|] / 4,
    [(1 + c3) + |F|^2 |c1 - c2|] / 4, [(1 + c3) - |F|^2 |c1 - c2|] / 4
    in that order.
    """
    if not 0.0 <= abs2 <= 1.0 + 1e-12:
        raise ValueError(f"|F|^2 must lie in [0, 1], got {abs2}")
    c1, c2, c3 = params.as_tuple()
    inner = abs2 * abs(c1 + c2)
    outer = abs2 * abs(c1 - c2)
    return np.array(
        [
            (1.0 - c3 + inner) / 4.0,
            (1.0 - c3 - inner) / 4.0,
            (1.0 + c3 + outer) / 4.0,
            (1.0 + c3 - outer) / 4.0,
        ]
    )
