# bispectral/solver/__init__.py
from bispectral.solver.ansatz import BAnsatz, LAnsatz, b_ansatz, l_ansatz
from bispectral.solver.families import (
    FAMILIES,
    ClosureResult,
    SpaceComparison,
    algebra_closure_check,
    compare_spaces,
    conjecture_family,
    family_membership,
    family_parameter_count,
)
from bispectral.solver.pool import WorkerPool
from bispectral.solver.spaces import (
    SolutionSpace,
    compose_pairs,
    escalate_b_for_theta,
    solve_b_for_theta,
    solve_f_space,
    solve_theta_space,
    verify_left_pair,
    verify_pair,
)

__all__ = [
    "BAnsatz",
    "LAnsatz",
    "b_ansatz",
    "l_ansatz",
    "FAMILIES",
    "ClosureResult",
    "SpaceComparison",
    "algebra_closure_check",
    "compare_spaces",
    "conjecture_family",
    "family_membership",
    "family_parameter_count",
    "WorkerPool",
    "SolutionSpace",
    "compose_pairs",
    "escalate_b_for_theta",
    "solve_b_for_theta",
    "solve_f_space",
    "solve_theta_space",
    "verify_left_pair",
    "verify_pair",
]
