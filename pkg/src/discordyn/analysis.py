"""Transition times, stationary limits and trajectory tables.

These are the quantities the figures are made of: where |F(tau)|^2 crosses
the branch threshold (sudden transitions of the classical correlation /
discord), what survives at tau -> infinity, and full sweeps of the
correlation triple over a time grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channel
from .channel import apply_coherence, coherence_abs2, coherence_factor
from .correlations import (
    CorrelationTriple,
    binary_entropy,
    correlation_triple,
    frozen_family_correlations,
    werner_correlations,
)
from .measurement import discord_numeric
from .states import ChannelParams, WernerParams, XStateParams, werner_params

DEFAULT_SAMPLES = 10_000
BISECT_TOL = 1e-9
GRAZE_TOL = 1e-10
_GRAZE_TRIGGER = 1e-5
_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0

Family = XStateParams | WernerParams


class NoDissipationError(ValueError):
    """kappa = 0 has no long-time limit; |F| oscillates forever."""


@dataclass(frozen=True)
class TransitionReport:
    """Crossings of |F(tau)|^2 through the branch threshold.

    ``regimes`` has one label per interval between consecutive crossings
    (so one more entry than ``crossings``): "discord-frozen" where
    |F|^2 stays above the threshold, "classical-frozen" below.
    ``degenerate`` flags tangential touches reported as single crossings.
    """

    threshold: float
    crossings: tuple[float, ...]
    degenerate: tuple[bool, ...]
    regimes: tuple[str, ...]
    plateau_value: float


@dataclass(frozen=True)
class StationaryReport:
    limit_abs2: float
    triple: CorrelationTriple


def family_correlations(family: Family, abs2: float) -> CorrelationTriple:
    """Correlation triple for either parameter family at a given |F|^2."""
    if isinstance(family, WernerParams):
        return werner_correlations(family.r, abs2)
    return correlation_triple(family, abs2)


def frozen_family(c3: float) -> XStateParams:
    """Coefficients (1, -c3, c3) of the discord-freezing family."""
    if not abs(c3) < 1.0:
        raise ValueError(f"the frozen family needs |c3| < 1, got {c3}")
    return XStateParams(1.0, -c3, c3)


def _bisect(fn, lo: float, hi: float, tol: float = BISECT_TOL) -> float:
    flo = fn(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (fn(mid) > 0.0) == (flo > 0.0):
            lo, flo = mid, fn(mid)
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _golden_min(fn, lo: float, hi: float, iters: int = 60) -> tuple[float, float]:
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


def find_transitions(
    c3: float,
    params: ChannelParams,
    window: tuple[float, float] = (0.0, 50.0),
    samples: int = DEFAULT_SAMPLES,
    threshold: float | None = None,
) -> TransitionReport:
    """Locate every tau in ``window`` where |F(tau)|^2 equals the threshold.

    Parameters
    ----------
    c3 : float
        Frozen-family coefficient; the threshold defaults to |c3| and the
        plateau value to 1 - H2((1 + |c3|)/2).  Must satisfy 0 < |c3| < 1
        unless an explicit ``threshold`` is supplied.
    params : ChannelParams
        Channel settings.
    window : (float, float)
        Closed time interval to scan.
    samples : int
        Dense pre-sampling count; |F|^2 oscillates with period pi, so the
        grid must resolve every dip before bisection refines each sign
        change to within 1e-9.
    threshold : float, optional
        Override for the crossing level in (0, 1); used for families whose
        branch switch sits at |c3| / max(|c1|, |c2|).

    Returns
    -------
    TransitionReport
        Sorted crossings with degeneracy flags (tangential touches count
        once) and per-interval regime labels.
    """
    if threshold is None:
        if not 0.0 < abs(c3) < 1.0:
            raise ValueError(f"need 0 < |c3| < 1, got c3={c3}")
        threshold = abs(c3)
    elif not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    lo, hi = window
    if not (0.0 <= lo < hi):
        raise ValueError(f"window must satisfy 0 <= lo < hi, got {window}")
    if samples < 2:
        raise ValueError("need at least 2 samples")

    def gap(tau):
        return coherence_abs2(tau, params) - threshold

    taus = np.linspace(lo, hi, samples)
    g = gap(taus)

    crossings: list[float] = []
    degenerate: list[bool] = []
    sign_change = np.flatnonzero(np.signbit(g[:-1]) != np.signbit(g[1:]))
    for i in sign_change:
        crossings.append(_bisect(gap, float(taus[i]), float(taus[i + 1])))
        degenerate.append(False)

    # tangential touches: local minima of |gap| that get close without a
    # sign change on either side
    near = np.flatnonzero(np.abs(g) < _GRAZE_TRIGGER)
    for i in near:
        if i == 0 or i == samples - 1:
            continue
        if abs(g[i]) > abs(g[i - 1]) or abs(g[i]) > abs(g[i + 1]):
            continue
        if i - 1 in sign_change or i in sign_change:
            continue
        tau_touch, g2 = _golden_min(
            lambda t: gap(t) ** 2, float(taus[i - 1]), float(taus[i + 1])
        )
        if np.sqrt(g2) < GRAZE_TOL:
            crossings.append(tau_touch)
            degenerate.append(True)

    order = np.argsort(crossings)
    crossings = [crossings[k] for k in order]
    degenerate = [degenerate[k] for k in order]

    edges = [lo, *crossings, hi]
    regimes = []
    for a, b in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (a + b)
        regimes.append("discord-frozen" if gap(mid) > 0.0 else "classical-frozen")

    return TransitionReport(
        threshold=threshold,
        crossings=tuple(crossings),
        degenerate=tuple(degenerate),
        regimes=tuple(regimes),
        plateau_value=1.0 - binary_entropy((1.0 + abs(c3)) / 2.0),
    )


def limit_abs2(params: ChannelParams) -> float:
    """tau -> infinity limit of |F(tau)|^2, which is exp(-2|alpha|^2/(1+kappa^2)).

    Raises :class:`NoDissipationError` at kappa = 0, where the limit does
    not exist.
    """
    if params.kappa == 0.0:
        raise NoDissipationError("kappa = 0: |F| oscillates forever, no stationary limit")
    return float(np.exp(-2.0 * params.nbar / (1.0 + params.kappa**2)))


def stationary_values(family: Family, params: ChannelParams) -> StationaryReport:
    """Long-time correlation triple, from the |F|^2 limit and the closed forms."""
    limit = limit_abs2(params)
    return StationaryReport(limit_abs2=limit, triple=family_correlations(family, limit))


@dataclass(frozen=True)
class SweepTable:
    """Correlation trajectory on a tau grid.

    ``factors`` holds complex F(tau); ``numeric_discord`` is filled only
    when the sweep is asked to run the measurement search as well.
    """

    taus: np.ndarray
    factors: np.ndarray
    abs2: np.ndarray
    mutual_info: np.ndarray
    classical: np.ndarray
    discord: np.ndarray
    numeric_discord: np.ndarray | None = None


def sweep(
    family: Family,
    params: ChannelParams,
    taus: np.ndarray,
    include_numeric: bool = False,
    grid_theta: int = 181,
    grid_phi: int = 360,
    refine_iters: int = 40,
) -> SweepTable:
    """Evaluate F and the correlation triple on a time grid.

    ``taus`` must be nonnegative and strictly increasing.  With
    ``include_numeric`` the dense measurement search runs at every row,
    which is slow but provides the cross-check column.
    """
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise ValueError("taus must be a nonempty 1-D array")
    if np.any(np.diff(taus) <= 0.0):
        raise ValueError("taus must be strictly increasing")

    factors = np.atleast_1d(channel.f_factor(taus, params) * channel.chi_overlap(taus, params))
    abs2 = np.abs(factors) ** 2
    n = taus.size
    mutual = np.empty(n)
    classical = np.empty(n)
    discord = np.empty(n)
    for k in range(n):
        triple = family_correlations(family, min(abs2[k], 1.0))
        mutual[k] = triple.mutual_info
        classical[k] = triple.classical
        discord[k] = triple.discord

    numeric = None
    if include_numeric:
        c = family if isinstance(family, XStateParams) else werner_params(family.r)
        numeric = np.empty(n)
        for k in range(n):
            rho = apply_coherence(c, coherence_factor(float(taus[k]), params))
            numeric[k] = discord_numeric(rho, grid_theta, grid_phi, refine_iters)

    return SweepTable(
        taus=taus,
        factors=factors,
        abs2=abs2,
        mutual_info=mutual,
        classical=classical,
        discord=discord,
        numeric_discord=numeric,
    )
