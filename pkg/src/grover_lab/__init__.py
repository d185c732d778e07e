"""State-vector simulation of Grover search and its known-M single-iteration variant."""

from .bounded import BoundedConfig, BoundedReport, expected_queries, run_bounded
from .errors import GroverLabError
from .instance import (
    AngleParams,
    SearchInstance,
    angle_of,
    f_eval,
    make_instance,
    random_instance,
)
from .modified import (
    OperatorSet,
    ReducedState,
    apply_A_reduced,
    build_operators,
    lift_apply_A,
    mismatch_probability,
    run_modified_known_m,
)
from .standard import (
    IterationPlan,
    RunReport,
    conditional_phase,
    diffusion,
    grover_iteration,
    oracle_flip,
    plan_iterations,
    run_standard,
)
from .statevector import (
    StateVector,
    SubspaceCoords,
    basis_state,
    decompose,
    hadamard_all,
    measure,
    solution_probability,
    uniform_state,
)

__version__ = "0.1.0"
