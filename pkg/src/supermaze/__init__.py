"""Multi-time quantum evolution, speed-limited shortcuts and state-graph routing."""

from .config import conventions, get_hbar, set_hbar
from .descartes import CircleQuadruple, apollonian_generate, apollonian_layers, descartes_residual, fourth_curvature, reflect
from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .multitime import (
    ConsistencyReport,
    IntervalKind,
    MultiTimePath,
    TemporalMetric,
    TimeVector,
    TrajectorySegment,
    classify_interval,
    consistency_residual,
    evolve_path,
    interval,
    rectangle_defect,
)
from .quantum_core import (
    HADAMARD,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Generator,
    Propagator,
    QuantumState,
    energy_stats,
    fidelity,
    phase_aligned_difference,
    time_ordered_exponential,
    unitary_from_generator,
)
from .relaxation import (
    Level,
    MpembaVerdict,
    RateNetwork,
    RelaxationCurve,
    evolve_populations,
    golden_rule_rate,
    mpemba_compare,
    stationary_distribution,
    time_to_equilibrium,
    total_escape_rate,
)
from .routing import (
    EdgeKind,
    ParetoFrontier,
    Route,
    StateNode,
    SupermazeEdge,
    SupermazeGraph,
    build_graph,
    diameter,
    qsl_admissibility,
    route_pareto,
    to_dot,
)
from .shortcut import (
    QslReport,
    ShortcutSpec,
    SynthesizedShortcut,
    apply_shortcut,
    minimal_duration,
    qsl_check,
    synthesize_generator,
)
from .tc import TCReport, betti_numbers, tc_estimate

__version__ = "0.1.0"
