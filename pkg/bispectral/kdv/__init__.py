# bispectral/kdv/__init__.py
from bispectral.kdv.scalar import (
    ConstraintResidual,
    CrosscheckResult,
    KdVConfig,
    admissible_basis,
    admissible_dim,
    check_constraints,
    crosscheck_scalar,
    is_kdv,
    potential,
    scalar_operator,
    single_pole_wavefunction,
    tau,
    tau_factors,
    theta_admissible,
    verify_log_identity,
)

__all__ = [
    "ConstraintResidual",
    "CrosscheckResult",
    "KdVConfig",
    "admissible_basis",
    "admissible_dim",
    "check_constraints",
    "crosscheck_scalar",
    "is_kdv",
    "potential",
    "scalar_operator",
    "single_pole_wavefunction",
    "tau",
    "tau_factors",
    "theta_admissible",
    "verify_log_identity",
]
