"""Exact correlation dynamics of two qubits dephasing in dissipative cavities.

The package computes the closed-form time evolution of quantum mutual
information, classical correlation and quantum discord for Bell-diagonal
two-qubit states whose atoms are dispersively coupled to independent lossy
cavities, and cross-checks it with a dense measurement search and a
truncated-Fock master-equation integrator.
"""

from .analysis import (
    NoDissipationError,
    StationaryReport,
    SweepTable,
    TransitionReport,
    family_correlations,
    find_transitions,
    frozen_family,
    limit_abs2,
    stationary_values,
    sweep,
)
from .channel import (
    CoherenceFactor,
    apply_coherence,
    chi_overlap,
    coherence_abs2,
    coherence_factor,
    f_factor,
    reduced_state,
    spectrum,
)
from .config import ConfigError, Scenario
from .correlations import (
    CorrelationTriple,
    binary_entropy,
    bloch_entropy,
    classical_correlation,
    correlation_triple,
    frozen_family_correlations,
    mutual_information,
    von_neumann_entropy,
    werner_correlations,
)
from .lindblad import (
    FockTruncation,
    StepSizeError,
    Trajectory,
    TruncationError,
    default_dimension,
    integrate,
    trace_distance,
)
from .measurement import (
    ProjectorAngles,
    conditional_states,
    discord_numeric,
    eta_value,
    maximize_classical,
)
from .states import (
    ChannelParams,
    PhysicalityReport,
    UnphysicalStateError,
    WernerParams,
    XStateParams,
    validate_density_matrix,
    validate_physicality,
    werner_params,
    x_state_density,
)

__version__ = "0.1.0"
