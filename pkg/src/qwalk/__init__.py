"""Quantum walks on regular graphs: connectivity decision, convergence and amplification."""

__version__ = "0.1.0"

from .amplification import (  # noqa: F401
    AmplificationPlan,
    amplified_probability,
    plan_repetitions,
    simulate_amplifier,
)
from .decider import (  # noqa: F401
    DeciderReport,
    classical_distribution,
    convergence_curve,
    convergence_distance,
    decide,
)
from .graphs import (  # noqa: F401
    ComponentMap,
    ProblemInstance,
    RegularGraph,
    components,
    format_instance,
    generate,
    parse_instance,
    regularize,
)
from .operators import (  # noqa: F401
    DiagonalState,
    PairState,
    apply_D,
    apply_F,
    apply_P,
    apply_Q,
    apply_X,
    reduced_walk_matrix,
    walk_power,
)
from .spectral import (  # noqa: F401
    SpectralReport,
    adjacency_spectrum,
    check_gap_bound,
    distance_bound,
    required_steps,
    walk_spectrum,
)
