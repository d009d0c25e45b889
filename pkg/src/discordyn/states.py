"""Bell-diagonal two-qubit states and density-matrix validation.

The computational basis is ordered ``{|ee>, |eg>, |ge>, |gg>}`` throughout
the package, with ``|e>`` the upper atomic level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BASIS_LABELS = ("ee", "eg", "ge", "gg")

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10

_EIGENVALUE_FORMS = (
    "(1 - c1 - c2 - c3)/4",
    "(1 - c1 + c2 + c3)/4",
    "(1 + c1 - c2 + c3)/4",
    "(1 + c1 + c2 - c3)/4",
)


class UnphysicalStateError(ValueError):
    """Parameters or a matrix violate the density-matrix requirements."""


@dataclass(frozen=True)
class XStateParams:
    """Correlation coefficients of a Bell-diagonal state.

    The state is (1/4)(I + sum_i c_i sigma_i x sigma_i); it is physical
    exactly when all four values of :meth:`bell_weights` are nonnegative.
    """

    c1: float
    c2: float
    c3: float

    def bell_weights(self) -> np.ndarray:
        """Eigenvalues of the state, one per Bell basis vector."""
        c1, c2, c3 = self.c1, self.c2, self.c3
        return np.array(
            [
                (1.0 - c1 - c2 - c3) / 4.0,
                (1.0 - c1 + c2 + c3) / 4.0,
                (1.0 + c1 - c2 + c3) / 4.0,
                (1.0 + c1 + c2 - c3) / 4.0,
            ]
        )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class WernerParams:
    """Mixing weight of a singlet-plus-identity (Werner) state."""

    r: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"Werner weight must lie in [0, 1], got {self.r}")


@dataclass(frozen=True)
class ChannelParams:
    """Cavity drive amplitude and dimensionless decay rate.

    ``alpha`` is the initial coherent amplitude shared by both cavities and
    ``kappa`` the photon decay rate in units of the dispersive shift.
    """

    alpha: complex
    kappa: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.alpha):
            raise ValueError(f"coherent amplitude must be finite, got {self.alpha}")
        if not np.isfinite(self.kappa) or self.kappa < 0.0:
            raise ValueError(f"decay rate must be finite and >= 0, got {self.kappa}")

    @property
    def nbar(self) -> float:
        """Mean photon number |alpha|^2 of the initial cavity state."""
        return abs(self.alpha) ** 2


@dataclass(frozen=True)
class PhysicalityReport:
    ok: bool
    violations: tuple[str, ...]


def validate_physicality(params: XStateParams, tol: float = 1e-12) -> PhysicalityReport:
    """Check that the correlation coefficients define a density matrix.

    Parameters
    ----------
    params : XStateParams
        Candidate coefficients.
    tol : float
        Slack permitted below zero before an eigenvalue counts as violated.

    Returns
    -------
    PhysicalityReport
        ``ok`` is True when every Bell weight is nonnegative within ``tol``.
        Each violation message names the offending eigenvalue.
    """
    violations = []
    for form, value in zip(_EIGENVALUE_FORMS, params.bell_weights()):
        if value < -tol:
            violations.append(f"eigenvalue {form} = {value:.6g} is negative")
    for label, c in zip(("c1", "c2", "c3"), params.as_tuple()):
        if abs(c) > 1.0 + tol:
            violations.append(f"|{label}| = {abs(c):.6g} exceeds 1")
    return PhysicalityReport(ok=not violations, violations=tuple(violations))


def x_state_density(params: XStateParams) -> np.ndarray:
    """Assemble the 4x4 density matrix for the given coefficients.

    Diagonal entries are (1 +/- c3)/4, the outer anti-diagonal pair is
    (c1 - c2)/4 and the inner pair (c1 + c2)/4.  Raises
    :class:`UnphysicalStateError` when the coefficients fail
    :func:`validate_physicality`.
    """
    report = validate_physicality(params)
    if not report.ok:
        raise UnphysicalStateError("; ".join(report.violations))
    c1, c2, c3 = params.as_tuple()
    plus = (1.0 + c3) / 4.0
    minus = (1.0 - c3) / 4.0
    outer = (c1 - c2) / 4.0
    inner = (c1 + c2) / 4.0
    return np.array(
        [
            [plus, 0.0, 0.0, outer],
            [0.0, minus, inner, 0.0],
            [0.0, inner, minus, 0.0],
            [outer, 0.0, 0.0, plus],
        ],
        dtype=complex,
    )


def werner_params(r: float) -> XStateParams:
    """Correlation coefficients (-r, -r, -r) of the Werner state.

    The state is r |psi-><psi-| + (1 - r) I/4 with |psi-> the singlet;
    ``r`` must lie in [0, 1].
    """
    WernerParams(r)  # range check
    return XStateParams(-r, -r, -r)


def validate_density_matrix(
    rho: np.ndarray,
    hermiticity_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    eigenvalue_floor: float = EIGENVALUE_FLOOR,
) -> None:
    """Raise :class:`UnphysicalStateError` unless ``rho`` is a density matrix.

    Checks square shape, hermiticity, unit trace and eigenvalues above
    ``eigenvalue_floor`` (slack for floating-point noise).
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise UnphysicalStateError(f"expected a square matrix, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > hermiticity_tol:
        raise UnphysicalStateError(f"hermiticity defect {herm:.3g} exceeds {hermiticity_tol:g}")
    trace_err = abs(np.trace(rho) - 1.0)
    if trace_err > trace_tol:
        raise UnphysicalStateError(f"trace deviates from 1 by {trace_err:.3g}")
    lowest = float(np.min(np.linalg.eigvalsh(rho)))
    if lowest < eigenvalue_floor:
        raise UnphysicalStateError(f"negative eigenvalue {lowest:.3g} below {eigenvalue_floor:g}")
