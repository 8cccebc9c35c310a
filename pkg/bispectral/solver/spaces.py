# bispectral/solver/spaces.py
"""
Solution spaces of the bispectral identities inside a finite ansatz.

solve_theta_space finds every (Theta, B) with Psi B = Theta Psi, Theta of
degree <= N and B inside the ansatz; solve_f_space does the same for
(F, L) with L Psi = Psi F. Each returns the nullspace basis as decoded pairs
together with a canonical basis of the eigenvalue projection.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging

from bispectral.algebra.bipoly import from_univariate
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.config import WorkbenchConfig
from bispectral.errors import BispectralError, DimensionMismatchError
from bispectral.kernel.expkernel import ExpKernel
from bispectral.kernel.verification import left_residual, right_residual
from bispectral.observability.metrics import metrics
from bispectral.operators.diffop import DiffOp, compose_right
from bispectral.solver.ansatz import BAnsatz, LAnsatz
from bispectral.solver.assembly import (
    ansatz_denominator,
    assemble_f_system,
    assemble_partner_system,
    assemble_theta_system,
)
from bispectral.solver.linear import nullspace, row_space_basis, solve_particular
from bispectral.solver.pool import WorkerPool

logger = logging.getLogger(__name__)

Ansatz = Union[BAnsatz, LAnsatz]


@dataclass
class SolutionSpace:
    kind: str  # "theta" | "f"
    ansatz: Ansatz
    eigen_degree: int
    pairs: List[Tuple[Matrix, DiffOp]] = field(default_factory=list)
    eigen_basis: List[Matrix] = field(default_factory=list)
    system_shape: Tuple[int, int] = (0, 0)

    @property
    def var(self) -> str:
        return "x" if self.kind == "theta" else "z"

    @property
    def dim(self) -> int:
        """Dimension of the full solution space (pairs)."""
        return len(self.pairs)

    @property
    def eigen_dim(self) -> int:
        """Dimension of the eigenvalue projection."""
        return len(self.eigen_basis)

    @property
    def theta_dim(self) -> int:
        if self.kind != "theta":
            raise AttributeError("theta_dim is defined for right-identity spaces only")
        return self.eigen_dim

    @property
    def f_dim(self) -> int:
        if self.kind != "f":
            raise AttributeError("f_dim is defined for left-identity spaces only")
        return self.eigen_dim


# ------------------------------
# Decoding
# ------------------------------

def _polynomial_matrix(psi: ExpKernel, values: Sequence, degree: int, var: str) -> Matrix:
    """Matrix sum_t var^t C_t from coefficients laid out (degree, row, col)."""
    n = psi.size
    ctx = psi.ctx
    entries = []
    for r in range(n):
        line = []
        for c in range(n):
            coeffs = {t: values[t * n * n + r * n + c] for t in range(degree + 1)}
            line.append(RatFunc.from_poly(ctx, from_univariate(ctx, coeffs, var)))
        entries.append(line)
    return Matrix(ctx, entries)


def _decode_b(psi: ExpKernel, values: Sequence, ansatz: BAnsatz) -> DiffOp:
    n = psi.size
    ctx = psi.ctx
    width = ansatz.laurent_high - ansatz.laurent_low + 1
    shift = max(0, -ansatz.laurent_low)
    zden = RatFunc.gen(ctx, "z") ** shift
    coeffs: Dict[int, Matrix] = {}
    for i in range(ansatz.max_order + 1):
        entries = []
        for r in range(n):
            line = []
            for c in range(n):
                poly = {}
                for w in range(width):
                    v = values[((i * width) + w) * n * n + r * n + c]
                    if v:
                        poly[ansatz.laurent_low + w + shift] = v
                line.append(RatFunc.from_poly(ctx, from_univariate(ctx, poly, "z")) / zden)
            entries.append(line)
        coeffs[i] = Matrix(ctx, entries)
    return DiffOp(ctx, "z", n, coeffs)


def _decode_l(psi: ExpKernel, values: Sequence, ansatz: LAnsatz) -> DiffOp:
    n = psi.size
    ctx = psi.ctx
    d = RatFunc.from_poly(ctx, ansatz_denominator(psi, ansatz))
    per_order = (ansatz.num_degree + 1) * n * n
    coeffs: Dict[int, Matrix] = {}
    for k in range(ansatz.max_order + 1):
        numer = _polynomial_matrix(psi, values[k * per_order:(k + 1) * per_order], ansatz.num_degree, "x")
        coeffs[k] = numer.map(lambda e: e / d)
    return DiffOp(ctx, "x", n, coeffs)


# ------------------------------
# Verification
# ------------------------------

def verify_pair(psi: ExpKernel, theta: Matrix | RatFunc, op: DiffOp) -> bool:
    """Psi B == Theta Psi exactly."""
    return right_residual(psi, op, theta).is_zero()


def verify_left_pair(psi: ExpKernel, f: Matrix | RatFunc, op: DiffOp) -> bool:
    """L Psi == Psi F exactly."""
    return left_residual(op, psi, f).is_zero()


def _pool(config: WorkbenchConfig, pool: Optional[WorkerPool]) -> Tuple[WorkerPool, bool]:
    if pool is not None:
        return pool, False
    return WorkerPool(config.thread_workers), True


# ------------------------------
# Right identity
# ------------------------------

def solve_theta_space(
    psi: ExpKernel,
    theta_degree: int,
    ansatz: BAnsatz,
    config: Optional[WorkbenchConfig] = None,
    pool: Optional[WorkerPool] = None,
) -> SolutionSpace:
    config = config or WorkbenchConfig()
    workers, owned = _pool(config, pool)
    try:
        system = assemble_theta_system(psi, theta_degree, ansatz, workers)
    finally:
        if owned:
            workers.shutdown()

    with metrics.timer("solver.nullspace") as t:
        basis = nullspace(system)
    n_theta = psi.size * psi.size * (theta_degree + 1)
    space = SolutionSpace("theta", ansatz, theta_degree, system_shape=system.shape)
    for vec in basis:
        theta = _polynomial_matrix(psi, vec[:n_theta], theta_degree, "x")
        space.pairs.append((theta, _decode_b(psi, vec[n_theta:], ansatz)))
    projected = [vec[:n_theta] for vec in basis]
    for row in row_space_basis(projected, n_theta, psi.ctx.domain):
        space.eigen_basis.append(_polynomial_matrix(psi, row, theta_degree, "x"))

    logger.info(
        "Solved right identity",
        extra={
            "stage": "theta_space",
            "equations": system.shape[0],
            "unknowns": system.shape[1],
            "dimension": space.eigen_dim,
            "elapsed_ms": t.elapsed_ms,
        },
    )
    if config.verify_solutions:
        for theta, op in space.pairs:
            if not verify_pair(psi, theta, op):
                raise BispectralError("solver produced a pair that fails Psi B = Theta Psi")
            metrics.counter("solver.verified_pairs").inc()
    return space


def solve_b_for_theta(
    psi: ExpKernel,
    theta: Matrix | RatFunc,
    ansatz: BAnsatz,
    config: Optional[WorkbenchConfig] = None,
    pool: Optional[WorkerPool] = None,
) -> Optional[DiffOp]:
    """Some B in the ansatz with Psi B = Theta Psi, or None when none exists there."""
    config = config or WorkbenchConfig()
    theta_m = Matrix.scalar(psi.ctx, psi.size, theta) if isinstance(theta, RatFunc) else theta
    if theta_m.shape != (psi.size, psi.size):
        raise DimensionMismatchError(f"Theta is {theta_m.shape}, kernel is {psi.size}x{psi.size}")
    workers, owned = _pool(config, pool)
    try:
        system = assemble_partner_system(psi, theta_m, ansatz, workers)
    finally:
        if owned:
            workers.shutdown()
    solution = solve_particular(system)
    if solution is None:
        logger.info("No partner operator inside the ansatz", extra={"stage": "partner", "equations": system.shape[0], "unknowns": system.shape[1]})
        return None
    op = _decode_b(psi, solution, ansatz)
    if config.verify_solutions and not verify_pair(psi, theta_m, op):
        raise BispectralError("solver produced an operator that fails Psi B = Theta Psi")
    return op


def escalate_b_for_theta(
    psi: ExpKernel,
    theta: Matrix | RatFunc,
    ansatz: BAnsatz,
    config: Optional[WorkbenchConfig] = None,
) -> Tuple[Optional[DiffOp], BAnsatz]:
    """Retry solve_b_for_theta with doubled bounds; returns (B or None, last ansatz tried)."""
    config = config or WorkbenchConfig()
    current = ansatz
    for round_no in range(config.escalate_rounds + 1):
        op = solve_b_for_theta(psi, theta, current, config)
        if op is not None:
            return op, current
        if round_no < config.escalate_rounds:
            current = current.doubled()
            logger.info(
                "Escalating ansatz bounds",
                extra={"stage": "escalate", "round": round_no + 1, "ansatz": current, "unknowns": current.unknowns},
            )
    return None, current


# ------------------------------
# Left identity
# ------------------------------

def solve_f_space(
    psi: ExpKernel,
    f_degree: int,
    ansatz: LAnsatz,
    config: Optional[WorkbenchConfig] = None,
    pool: Optional[WorkerPool] = None,
) -> SolutionSpace:
    config = config or WorkbenchConfig()
    workers, owned = _pool(config, pool)
    try:
        system = assemble_f_system(psi, f_degree, ansatz, workers)
    finally:
        if owned:
            workers.shutdown()

    with metrics.timer("solver.nullspace") as t:
        basis = nullspace(system)
    n_f = psi.size * psi.size * (f_degree + 1)
    space = SolutionSpace("f", ansatz, f_degree, system_shape=system.shape)
    for vec in basis:
        f = _polynomial_matrix(psi, vec[:n_f], f_degree, "z")
        space.pairs.append((f, _decode_l(psi, vec[n_f:], ansatz)))
    projected = [vec[:n_f] for vec in basis]
    for row in row_space_basis(projected, n_f, psi.ctx.domain):
        space.eigen_basis.append(_polynomial_matrix(psi, row, f_degree, "z"))

    logger.info(
        "Solved left identity",
        extra={
            "stage": "f_space",
            "equations": system.shape[0],
            "unknowns": system.shape[1],
            "dimension": space.eigen_dim,
            "elapsed_ms": t.elapsed_ms,
        },
    )
    if config.verify_solutions:
        for f, op in space.pairs:
            if not verify_left_pair(psi, f, op):
                raise BispectralError("solver produced a pair that fails L Psi = Psi F")
            metrics.counter("solver.verified_pairs").inc()
    return space


# ------------------------------
# Algebra structure
# ------------------------------

def compose_pairs(first: Tuple[Matrix, DiffOp], second: Tuple[Matrix, DiffOp]) -> Tuple[Matrix, DiffOp]:
    """
    (Theta1, B1), (Theta2, B2) -> (Theta1 Theta2, B1 B2) where B1 B2 acts as
    (Psi B1) B2; the product is again a bispectral pair for the same Psi.
    """
    theta1, b1 = first
    theta2, b2 = second
    return theta1 * theta2, compose_right(b1, b2)
