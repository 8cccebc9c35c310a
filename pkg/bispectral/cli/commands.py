# bispectral/cli/commands.py
"""
One function per subcommand. Each takes the parsed arguments and the
workbench config and returns a Report; exceptions are left to main().
"""

from __future__ import annotations
from argparse import Namespace
from pathlib import Path
from typing import Callable, Dict, List, Tuple
import logging

from bispectral.algebra.bipoly import poly_text, univariate_coefficients
from bispectral.algebra.context import QQ_CONTEXT, AlgebraContext
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.config import WorkbenchConfig
from bispectral.dsl import ProblemFile, evaluate_expression, evaluate_scalar, extension_context, parse, render_problem
from bispectral.fixtures import load_example
from bispectral.kdv import (
    KdVConfig,
    admissible_basis,
    admissible_dim,
    check_constraints,
    crosscheck_scalar,
    potential,
    tau,
    tau_factors,
    verify_log_identity,
)
from bispectral.kernel.verification import Residual, verify_left, verify_right
from bispectral.operators.adjoint import minimal_ad_order
from bispectral.schemas.report import ComparisonSummary, Report, ReportStatus, ResidualEntry
from bispectral.solver import (
    SolutionSpace,
    b_ansatz,
    compare_spaces,
    conjecture_family,
    escalate_b_for_theta,
    l_ansatz,
    solve_b_for_theta,
    solve_f_space,
    solve_theta_space,
)
from bispectral.solver.families import SpaceComparison, matrix_to_vector

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """Bad or missing command-line input; reported with exit code 2."""


# ------------------------------
# Helpers
# ------------------------------

def load_problem(args: Namespace) -> ProblemFile:
    example = getattr(args, "example", None)
    path = getattr(args, "input", None)
    if example is not None and path is not None:
        raise UsageError("give either --example or --input, not both")
    if example is not None:
        return load_example(example)
    if path is None:
        raise UsageError("an --input FILE or --example N is required")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse(text)


def _residual_entries(residuals: List[Residual]) -> List[ResidualEntry]:
    return [ResidualEntry(check=r.check, row=r.row, col=r.col, value=r.to_text()) for r in residuals]


def _vector_text(ctx: AlgebraContext, vec) -> List[str]:
    return [ctx.scalar_text(v) for v in vec]


def _basis(space: SolutionSpace) -> List[List[str]]:
    ctx = space.eigen_basis[0].ctx if space.eigen_basis else QQ_CONTEXT
    return [_vector_text(ctx, matrix_to_vector(m, space.var, space.eigen_degree)) for m in space.eigen_basis]


def _comparison(family: str, cmp: SpaceComparison) -> ComparisonSummary:
    return ComparisonSummary(
        family=family,
        relation=cmp.relation,
        computed_dim=cmp.computed_dim,
        conjectured_dim=cmp.conjectured_dim,
        joint_rank=cmp.joint_rank,
        computed_outside=[m.to_text() for m in cmp.computed_outside],
        conjectured_outside=[m.to_text() for m in cmp.conjectured_outside],
    )


def _eigen_target(problem: ProblemFile, psi_size: int, name: str) -> Matrix:
    value = problem.eigenvalue(name)
    if isinstance(value, RatFunc):
        return Matrix.scalar(value.ctx, psi_size, value)
    return value


# ------------------------------
# verify
# ------------------------------

def run_verify(args: Namespace, config: WorkbenchConfig) -> Report:
    problem = load_problem(args)
    psi = problem.function("Psi")
    residuals: List[Residual] = []
    checks: List[str] = []

    if problem.has("L"):
        eigen_name = "F" if problem.has("F") else "p"
        if not problem.has(eigen_name):
            raise UsageError("L is bound but neither F nor p gives its eigenvalue")
        residuals += verify_left(problem.operator("L"), psi, problem.eigenvalue(eigen_name))
        checks.append(f"L Psi = Psi {eigen_name}" if eigen_name == "F" else "L Psi = p Psi")
    if problem.has("B"):
        if not problem.has("Theta"):
            raise UsageError("B is bound but Theta is not")
        residuals += verify_right(psi, problem.operator("B"), problem.eigenvalue("Theta"))
        checks.append("Psi B = Theta Psi")
    if not checks:
        raise UsageError("nothing to verify: bind L with p or F, and/or B with Theta")

    status = ReportStatus.VERIFIED if not residuals else ReportStatus.FAILED
    logger.info(
        "Checked %d identities",
        len(checks),
        extra={"command": "verify", "stage": "verify", "residuals": len(residuals), "dims": {"size": psi.size}},
    )
    return Report(
        command="verify",
        status=status,
        residuals=_residual_entries(residuals),
        dims={"checks": len(checks), "size": psi.size},
        values={"identities": "; ".join(checks)},
    )


# ------------------------------
# solve-theta
# ------------------------------

def run_solve_theta(args: Namespace, config: WorkbenchConfig) -> Report:
    problem = load_problem(args)
    psi = problem.function("Psi")
    ansatz = b_ansatz(args.b_order, args.z_low, args.z_high, psi.size)

    if args.theta:
        theta = problem.eigenvalue(args.theta)
        if args.escalate:
            op, used = escalate_b_for_theta(psi, theta, ansatz, config)
        else:
            op, used = solve_b_for_theta(psi, theta, ansatz, config), ansatz
        if op is None:
            return Report(command="solve-theta", status=ReportStatus.ABSENT, bounds_used=used.to_summary())
        return Report(
            command="solve-theta",
            status=ReportStatus.SOLVED,
            bounds_used=used.to_summary(),
            dims={"b_order": op.order},
            values={"B": op.to_text()},
        )

    if args.deg is None:
        raise UsageError("solve-theta needs --deg N (or --theta NAME)")
    if args.escalate and not args.compare:
        raise UsageError("--escalate needs --compare FAMILY or --theta NAME")
    conjectured = conjecture_family(args.compare, args.deg, psi.ctx) if args.compare else None
    rounds = config.escalate_rounds if args.escalate else 0
    space, cmp = None, None
    for round_no in range(rounds + 1):
        space = solve_theta_space(psi, args.deg, ansatz, config)
        if conjectured is None:
            break
        cmp = compare_spaces(space, conjectured)
        if cmp.equal or cmp.relation != "computed_subset" or round_no == rounds:
            break
        ansatz = ansatz.doubled()
        logger.info(
            "Escalating ansatz bounds",
            extra={"command": "solve-theta", "round": round_no + 1, "family": args.compare, "relation": cmp.relation, "ansatz": ansatz},
        )

    report = Report(
        command="solve-theta",
        status=ReportStatus.SOLVED,
        dims={
            "theta_dim": space.theta_dim,
            "pairs": space.dim,
            "equations": space.system_shape[0],
            "unknowns": space.system_shape[1],
        },
        basis=_basis(space),
        bounds_used=ansatz.to_summary(),
    )
    if cmp is not None:
        report.comparison = _comparison(args.compare, cmp)
        report.dims["conjectured_dim"] = cmp.conjectured_dim
        if not cmp.equal:
            report.status = ReportStatus.FAILED
    return report


# ------------------------------
# solve-f
# ------------------------------

def _denominator(text: str, ctx: AlgebraContext) -> Tuple:
    value = evaluate_expression(text, ctx)
    if not isinstance(value, RatFunc) or not value.is_polynomial() or value.depends_on("z") or value.is_zero():
        raise UsageError(f"--den must be a nonzero polynomial in x, got '{text}'")
    coeffs = univariate_coefficients(value.num, "x")
    return tuple(coeffs.get(k, ctx.zero) for k in range(max(coeffs) + 1))


def run_solve_f(args: Namespace, config: WorkbenchConfig) -> Report:
    problem = load_problem(args)
    psi = problem.function("Psi")
    ansatz = l_ansatz(args.l_order, args.num_deg, _denominator(args.den, psi.ctx), psi.size)
    space = solve_f_space(psi, args.deg, ansatz, config)
    report = Report(
        command="solve-f",
        status=ReportStatus.SOLVED,
        dims={
            "f_dim": space.f_dim,
            "pairs": space.dim,
            "equations": space.system_shape[0],
            "unknowns": space.system_shape[1],
        },
        basis=_basis(space),
        bounds_used=ansatz.to_summary(),
    )
    if args.compare:
        cmp = compare_spaces(space, conjecture_family(args.compare, args.deg, psi.ctx))
        report.comparison = _comparison(args.compare, cmp)
        report.dims["conjectured_dim"] = cmp.conjectured_dim
        if not cmp.equal:
            report.status = ReportStatus.FAILED
    return report


# ------------------------------
# ad-order
# ------------------------------

def run_ad_order(args: Namespace, config: WorkbenchConfig) -> Report:
    problem = load_problem(args)
    op = problem.operator("L")
    name = "T" if problem.has("T") else "Theta"
    target = _eigen_target(problem, op.size, name)
    m = minimal_ad_order(op, target, args.max_m)
    if m is None:
        return Report(command="ad-order", status=ReportStatus.ABSENT, values={"target": name}, dims={"max_m": args.max_m})
    return Report(
        command="ad-order",
        status=ReportStatus.SOLVED,
        dims={"ad_order": m},
        values={"target": name, "ad_order": str(m)},
    )


# ------------------------------
# kdv
# ------------------------------

def parse_poles(text: str, ctx: AlgebraContext) -> KdVConfig:
    """'0:1' or '-1:1,a:1,1-a:1' -> KdVConfig; pole values are DSL scalar expressions."""
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if ":" not in item:
            raise UsageError(f"pole '{item}' is not of the form p:nu")
        value, nu = item.rsplit(":", 1)
        try:
            multiplicity = int(nu)
        except ValueError:
            raise UsageError(f"pole multiplicity '{nu}' is not an integer") from None
        pairs.append((evaluate_scalar(value.strip(), ctx), multiplicity))
    try:
        return KdVConfig.from_pairs(pairs, ctx)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def run_kdv(args: Namespace, config: WorkbenchConfig) -> Report:
    ctx = extension_context(args.modulus, args.generator) if args.modulus else QQ_CONTEXT
    cfg = parse_poles(args.poles, ctx)

    if args.check:
        residuals = check_constraints(cfg)
        nonzero = [
            ResidualEntry(check=f"pole {ctx.scalar_text(r.pole)}", row=0, col=r.j, value=ctx.scalar_text(r.residual))
            for r in residuals
            if r.residual
        ]
        return Report(
            command="kdv --check",
            status=ReportStatus.VERIFIED if not nonzero else ReportStatus.FAILED,
            residuals=nonzero,
            dims={"constraints": len(residuals)},
            values={"log_identity": str(verify_log_identity(cfg)).lower()},
        )
    if args.tau:
        factors = " * ".join(f"(x - {ctx.scalar_text(p)})^{e}" for p, e in tau_factors(cfg))
        return Report(
            command="kdv --tau",
            status=ReportStatus.SOLVED,
            values={"tau": poly_text(tau(cfg), ctx), "factors": factors, "potential": potential(cfg).to_text()},
        )
    if args.dim is not None:
        basis = admissible_basis(cfg, args.dim)
        vectors = []
        for p in basis:
            coeffs = univariate_coefficients(p, "x")
            vectors.append([ctx.scalar_text(coeffs.get(k, ctx.zero)) for k in range(args.dim + 1)])
        return Report(
            command="kdv --dim",
            status=ReportStatus.SOLVED,
            dims={"admissible_dim": admissible_dim(cfg, args.dim), "degree": args.dim},
            basis=vectors,
        )
    result = crosscheck_scalar(cfg, args.crosscheck, config)
    return Report(
        command="kdv --crosscheck",
        status=ReportStatus.VERIFIED if result.ok else ReportStatus.FAILED,
        dims={"characterized_dim": result.characterized_dim, "solver_dim": result.solver_dim},
        bounds_used=result.ansatz.to_summary(),
        values={"relation": result.relation},
    )


# ------------------------------
# format
# ------------------------------

def run_format(args: Namespace, config: WorkbenchConfig) -> Report:
    problem = load_problem(args)
    return Report(
        command="format",
        status=ReportStatus.SOLVED,
        dims={"bindings": len(problem.bindings)},
        values={"text": render_problem(problem)},
    )


COMMANDS: Dict[str, Callable[[Namespace, WorkbenchConfig], Report]] = {
    "verify": run_verify,
    "solve-theta": run_solve_theta,
    "solve-f": run_solve_f,
    "ad-order": run_ad_order,
    "kdv": run_kdv,
    "format": run_format,
}
