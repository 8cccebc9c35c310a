# bispectral/kdv/scalar.py
"""
Rational KdV potentials V(x) = sum_p nu_p (nu_p + 1) / (x - p)^2.

A pole configuration belongs to the KdV family when, for every pole p and
1 <= j <= nu_p,
    sum_{q != p} nu_q (nu_q + 1) / (q - p)^(2j + 1) = 0.
Poles live in the context field (QQ or one algebraic extension), so the
constraints are checked exactly.
"""

from __future__ import annotations
from dataclasses import dataclass
from math import factorial
from typing import Any, List, NamedTuple, Optional, Sequence, Tuple
import logging

from bispectral.algebra.bipoly import BiPoly, eval_univariate, from_univariate, poly_derivative
from bispectral.algebra.context import QQ_CONTEXT, AlgebraContext, Scalar, extension_inverse
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.config import WorkbenchConfig
from bispectral.errors import KdVConfigError
from bispectral.kernel.expkernel import ExpKernel
from bispectral.operators.diffop import DiffOp
from bispectral.solver.ansatz import BAnsatz
from bispectral.solver.families import compare_spaces
from bispectral.solver.linear import LinearSystem, nullspace, rank
from bispectral.solver.spaces import solve_theta_space

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KdVConfig:
    poles: Tuple[Tuple[Scalar, int], ...]
    ctx: AlgebraContext = QQ_CONTEXT

    def __post_init__(self):
        seen = []
        for p, nu in self.poles:
            if nu < 1:
                raise KdVConfigError(f"pole multiplicity must be >= 1, got {nu}")
            if any(p == q for q in seen):
                raise KdVConfigError(f"duplicate pole {self.ctx.scalar_text(p)}")
            seen.append(p)

    @classmethod
    def from_pairs(cls, poles: Sequence[Tuple[Any, int]], ctx: AlgebraContext = QQ_CONTEXT) -> "KdVConfig":
        return cls(tuple((ctx.scalar(p), int(nu)) for p, nu in poles), ctx)


class ConstraintResidual(NamedTuple):
    pole: Scalar
    j: int
    residual: Scalar


# ------------------------------
# Constraints, tau, potential
# ------------------------------

def check_constraints(cfg: KdVConfig) -> List[ConstraintResidual]:
    K = cfg.ctx.domain
    out = []
    for p, nu_p in cfg.poles:
        for j in range(1, nu_p + 1):
            acc = K.zero
            for q, nu_q in cfg.poles:
                if q == p:
                    continue
                inv = extension_inverse(q - p, cfg.ctx)
                acc = acc + K.convert(nu_q * (nu_q + 1)) * inv ** (2 * j + 1)
            out.append(ConstraintResidual(p, j, acc))
    return out


def is_kdv(cfg: KdVConfig) -> bool:
    return all(not r.residual for r in check_constraints(cfg))


def tau_factors(cfg: KdVConfig) -> List[Tuple[Scalar, int]]:
    """(p, nu_p (nu_p + 1) / 2) for every pole."""
    return [(p, nu * (nu + 1) // 2) for p, nu in cfg.poles]


def tau(cfg: KdVConfig) -> BiPoly:
    """theta(x) = prod_p (x - p)^(nu_p (nu_p + 1) / 2), expanded."""
    ctx = cfg.ctx
    out = ctx.ring.one
    for p, e in tau_factors(cfg):
        out = out * (ctx.x - ctx.ring.ground_new(p)) ** e
    return out


def potential(cfg: KdVConfig) -> RatFunc:
    ctx = cfg.ctx
    x = RatFunc.gen(ctx, "x")
    out = RatFunc.zero(ctx)
    for p, nu in cfg.poles:
        out = out + RatFunc.const(ctx, nu * (nu + 1)) / (x - RatFunc.const(ctx, p)) ** 2
    return out


def verify_log_identity(cfg: KdVConfig) -> bool:
    """V == -2 (theta'/theta)'."""
    theta = RatFunc.from_poly(cfg.ctx, tau(cfg))
    log_derivative = theta.derivative("x") / theta
    return potential(cfg) == log_derivative.derivative("x") * (-2)


def scalar_operator(cfg: KdVConfig) -> DiffOp:
    """-d_x^2 + V(x) as a 1x1 left operator."""
    ctx = cfg.ctx
    return DiffOp(
        ctx,
        "x",
        1,
        {2: Matrix(ctx, [[-1]]), 0: Matrix(ctx, [[potential(cfg)]])},
    )


# ------------------------------
# Admissible eigenvalues
# ------------------------------

def theta_admissible(theta: BiPoly | RatFunc, cfg: KdVConfig) -> bool:
    """theta^(2j-1)(p) = 0 for every pole p and 1 <= j <= nu_p."""
    poly = theta.num if isinstance(theta, RatFunc) else theta
    if isinstance(theta, RatFunc) and not theta.is_polynomial():
        raise KdVConfigError("admissibility is defined for polynomial theta only")
    for p, nu in cfg.poles:
        d = poly
        for k in range(1, 2 * nu):
            d = poly_derivative(d, "x")
            if k % 2 == 1 and eval_univariate(d, p, "x"):
                return False
    return True


def _falling(k: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= k - i
    return out


def admissible_conditions(cfg: KdVConfig, degree: int) -> List[List[Scalar]]:
    """
    One row per (p, j): the linear functional theta -> theta^(2j-1)(p) on
    coefficient vectors (c_0, ..., c_N).
    """
    K = cfg.ctx.domain
    rows = []
    for p, nu in cfg.poles:
        for j in range(1, nu + 1):
            m = 2 * j - 1
            row = []
            for k in range(degree + 1):
                if k < m:
                    row.append(K.zero)
                else:
                    row.append(K.convert(_falling(k, m)) * p ** (k - m))
            rows.append(row)
    return rows


def admissible_dim(cfg: KdVConfig, degree: int) -> int:
    conditions = admissible_conditions(cfg, degree)
    return degree + 1 - rank(conditions, degree + 1, cfg.ctx.domain)


def admissible_basis(cfg: KdVConfig, degree: int) -> List[BiPoly]:
    """Canonical basis of admissible polynomials of degree <= N."""
    K = cfg.ctx.domain
    conditions = admissible_conditions(cfg, degree)
    columns = [{(i,): row[k] for i, row in enumerate(conditions) if row[k]} for k in range(degree + 1)]
    system = LinearSystem.from_columns(K, list(range(degree + 1)), columns)
    return [from_univariate(cfg.ctx, vec, "x") for vec in nullspace(system)]


# ------------------------------
# Matrix-solver crosscheck
# ------------------------------

def single_pole_wavefunction(nu: int, ctx: AlgebraContext = QQ_CONTEXT) -> ExpKernel:
    """
    psi_nu = exp(xz) sum_{k=0}^{nu} (nu+k)! / (k! (nu-k)!) (-1/(2x))^k z^(nu-k),
    the eigenfunction of -d^2 + nu(nu+1)/x^2 with eigenvalue -z^2.
    """
    if nu < 1:
        raise KdVConfigError("nu must be >= 1")
    x = RatFunc.gen(ctx, "x")
    z = RatFunc.gen(ctx, "z")
    acc = RatFunc.zero(ctx)
    for k in range(nu + 1):
        coeff = RatFunc.const(ctx, (factorial(nu + k) // (factorial(k) * factorial(nu - k)), 1))
        acc = acc + coeff * (RatFunc.const(ctx, (-1, 2)) / x) ** k * z ** (nu - k)
    return ExpKernel(Matrix(ctx, [[acc]]))


@dataclass
class CrosscheckResult:
    ok: bool
    characterized_dim: int
    solver_dim: int
    relation: str
    ansatz: BAnsatz


def crosscheck_scalar(cfg: KdVConfig, degree: int, config: Optional[WorkbenchConfig] = None) -> CrosscheckResult:
    """
    Compare the admissible polynomials of degree <= N with the Theta
    projection the matrix solver finds for psi_nu, doubling the ansatz until
    the spans agree or the escalation rounds run out.
    """
    if len(cfg.poles) != 1 or cfg.poles[0][0]:
        raise KdVConfigError("the crosscheck needs a single pole at 0")
    config = config or WorkbenchConfig()
    nu = cfg.poles[0][1]
    ctx = cfg.ctx
    psi = single_pole_wavefunction(nu, ctx)
    characterized = [Matrix(ctx, [[RatFunc.from_poly(ctx, p)]]) for p in admissible_basis(cfg, degree)]

    bound = max(degree, 1)
    ansatz = BAnsatz(max_order=bound, laurent_low=-bound, laurent_high=0, size=1)
    comparison = None
    for round_no in range(config.escalate_rounds + 1):
        space = solve_theta_space(psi, degree, ansatz, config)
        comparison = compare_spaces(space, characterized)
        logger.info(
            "Crosscheck round %d: %s",
            round_no,
            comparison.relation,
            extra={
                "stage": "kdv_crosscheck",
                "round": round_no,
                "relation": comparison.relation,
                "ansatz": ansatz,
                "dims": {"characterized": comparison.conjectured_dim, "solver": comparison.computed_dim},
            },
        )
        if comparison.equal or comparison.relation != "computed_subset":
            break
        ansatz = ansatz.doubled()
    return CrosscheckResult(
        ok=comparison.equal,
        characterized_dim=comparison.conjectured_dim,
        solver_dim=comparison.computed_dim,
        relation=comparison.relation,
        ansatz=ansatz,
    )
