"""Closed-form mutual information, classical correlation and quantum discord.

All quantities are in bits.  For the states handled here both reduced
states stay maximally mixed, so the classical correlation reduces to
1 - H2((1 + m)/2) with m the larger of |c3| and |F|^2 max(|c1|, |c2|),
and the discord is the difference I - C.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import spectrum
from .states import UnphysicalStateError, XStateParams, validate_physicality, werner_params

NEGATIVE_CLAMP = 1e-10


@dataclass(frozen=True)
class CorrelationTriple:
    mutual_info: float
    classical: float
    discord: float


def _xlog2x(x):
    """x log2 x with the continuous extension 0 at x = 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    mask = x > 0.0
    out[mask] = x[mask] * np.log2(x[mask])
    return out


def binary_entropy(p: float) -> float:
    """Shannon entropy -p log2 p - (1-p) log2 (1-p) of a bit."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return float(-_xlog2x(p) - _xlog2x(1.0 - p))


def bloch_entropy(eta: float) -> float:
    """Entropy of a qubit whose Bloch vector has length ``eta``."""
    if not -1e-12 <= eta <= 1.0 + 1e-12:
        raise ValueError(f"Bloch length must lie in [0, 1], got {eta}")
    eta = min(max(eta, 0.0), 1.0)
    return binary_entropy((1.0 + eta) / 2.0)


def von_neumann_entropy(rho: np.ndarray, tol: float = 1e-10) -> float:
    """Entropy -Tr rho log2 rho of a density matrix, in bits."""
    eigs = np.linalg.eigvalsh(np.asarray(rho))
    if np.min(eigs) < -tol:
        raise UnphysicalStateError(f"negative eigenvalue {np.min(eigs):.3g} in entropy input")
    eigs = np.clip(eigs, 0.0, None)
    return float(-np.sum(_xlog2x(eigs)))


def _check_abs2(abs2: float) -> float:
    if not -1e-12 <= abs2 <= 1.0 + 1e-12:
        raise ValueError(f"|F|^2 must lie in [0, 1], got {abs2}")
    return min(max(float(abs2), 0.0), 1.0)


def _check_params(params: XStateParams) -> None:
    report = validate_physicality(params)
    if not report.ok:
        raise UnphysicalStateError("; ".join(report.violations))


def mutual_information(params: XStateParams, abs2: float) -> float:
    """Total correlation I = 2 + sum_k lambda_k log2 lambda_k.

    Both marginals are maximally mixed, so I is two bits plus the negative
    entropy of the joint spectrum at the given |F|^2.
    """
    _check_params(params)
    abs2 = _check_abs2(abs2)
    eigs = np.clip(spectrum(params, abs2), 0.0, None)
    return float(2.0 + np.sum(_xlog2x(eigs)))


def branch_parameter(params: XStateParams, abs2: float) -> float:
    """m = max(|c3|, |F|^2 max(|c1|, |c2|)), the optimal Bloch length.

    The first branch wins when the measurement that maximizes the classical
    correlation is the polar one (theta = 0), the second when it is
    equatorial (theta = pi/4).
    """
    abs2 = _check_abs2(abs2)
    return max(abs(params.c3), abs2 * max(abs(params.c1), abs(params.c2)))


def classical_correlation(params: XStateParams, abs2: float) -> float:
    """Maximal classical correlation C = 1 - H2((1 + m)/2)."""
    _check_params(params)
    return 1.0 - binary_entropy((1.0 + branch_parameter(params, abs2)) / 2.0)


def _clamp_small_negative(x: float) -> float:
    if -NEGATIVE_CLAMP <= x < 0.0:
        return 0.0
    return x


def correlation_triple(params: XStateParams, abs2: float) -> CorrelationTriple:
    """Mutual information, classical correlation and discord at one |F|^2."""
    mutual = _clamp_small_negative(mutual_information(params, abs2))
    classical = _clamp_small_negative(classical_correlation(params, abs2))
    discord = _clamp_small_negative(mutual - classical)
    return CorrelationTriple(mutual_info=mutual, classical=classical, discord=discord)


def frozen_family_correlations(c3: float, abs2: float) -> CorrelationTriple:
    """Correlations of the family c1 = 1, c2 = -c3, which freezes discord.

    For |F|^2 >= |c3| the discord stays at 1 - H2((1 + |c3|)/2) while the
    classical correlation decays; past that point the roles swap.
    Requires |c3| < 1.
    """
    if not abs(c3) < 1.0:
        raise ValueError(f"the frozen family needs |c3| < 1, got {c3}")
    abs2 = _check_abs2(abs2)
    half = (1.0 + c3) / 2.0
    mutual = (1.0 - binary_entropy(half)) + (1.0 - binary_entropy((1.0 + abs2) / 2.0))
    m = max(abs(c3), abs2)
    classical = 1.0 - binary_entropy((1.0 + m) / 2.0)
    discord = _clamp_small_negative(mutual - classical)
    return CorrelationTriple(
        mutual_info=_clamp_small_negative(mutual),
        classical=_clamp_small_negative(classical),
        discord=discord,
    )


def werner_correlations(r: float, abs2: float) -> CorrelationTriple:
    """Correlations of the Werner state with weight ``r``.

    The classical correlation is independent of |F|^2: the evolved
    coefficient n(tau) entering 1 - H2((1 + n)/2) equals r at all times.
    """
    params = werner_params(r)
    abs2 = _check_abs2(abs2)
    eigs = np.clip(
        np.array(
            [
                (1.0 - r) / 4.0,
                (1.0 - r) / 4.0,
                (1.0 + r + 2.0 * r * abs2) / 4.0,
                (1.0 + r - 2.0 * r * abs2) / 4.0,
            ]
        ),
        0.0,
        None,
    )
    mutual = _clamp_small_negative(float(2.0 + np.sum(_xlog2x(eigs))))
    classical = 1.0 - binary_entropy((1.0 + r) / 2.0)
    discord = _clamp_small_negative(mutual - classical)
    return CorrelationTriple(mutual_info=mutual, classical=classical, discord=discord)
