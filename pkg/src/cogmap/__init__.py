"""Pairwise influence analysis of directed weighted cognitive maps."""

from ._accel import USE_NUMBA, backend_name
from .circuit import CircuitGraph, CircuitSolution, build_circuit, export_circuit_dot, solve_circuit_nodal
from .graph import (
    ConceptNet,
    NetValidationReport,
    NetworkError,
    parse_edge_list,
    parse_matrix,
    read_net,
    render_edge_list,
    render_matrix,
    to_dense,
    validate,
)
from .impulse import (
    ImpulseResult,
    ImpulseTrajectory,
    impulse_closed_form,
    impulse_pressure_single,
    impulse_series,
    search_additive_reordering,
)
from .kmethod import KMatrix, k_matrix, k_pair
from .numerics import SingularMatrixError, SpectralEstimate, invert, solve_linear, spectral_radius
from .pathfinder import (
    BudgetExceeded,
    CancelToken,
    Cancelled,
    PairAccumulator,
    PathRecord,
    accumulate_pair,
    count_paths,
    enumerate_simple_paths,
)
from .ranking import (
    MeasureVector,
    RankVector,
    amplitude_influence,
    amplitude_pressure,
    element_ranking,
    influence,
    pressure,
    rank_correlation,
    rank_nodes,
)

__version__ = "0.1.0"
