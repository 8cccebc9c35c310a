# bispectral/solver/assembly.py
"""
Turn a bispectral identity with unknown coefficients into a sparse linear
system over the context field.

Right identity  Psi B = Theta Psi:
    sum_i M_i b_i(z) - Theta(x) M = 0,  M_i the rational factor of d_z^i Psi.
Left identity   L Psi = Psi F:
    sum_k (N_k(x)/d(x)) X_k - M F(z) = 0,  X_k the rational factor of d_x^k Psi.

Both sides are multiplied by one common polynomial denominator (and a power
of z for negative Laurent exponents) so every unknown contributes a
polynomial column; equations are the (row, col, x-exponent, z-exponent)
coefficients of the cleared identity, in sorted order.
"""

from __future__ import annotations
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple
import logging

from bispectral.algebra.bipoly import BiPoly, from_univariate, poly_lcm
from bispectral.algebra.matrix import Matrix
from bispectral.errors import AnsatzError, DimensionMismatchError, OperatorMismatchError
from bispectral.kernel.expkernel import ExpKernel, x_derivatives, z_derivatives
from bispectral.observability.metrics import metrics
from bispectral.solver.ansatz import BAnsatz, LAnsatz
from bispectral.solver.linear import LinearSystem
from bispectral.solver.pool import WorkerPool

logger = logging.getLogger(__name__)

EquationKey = Tuple[int, int, int, int]
Column = Dict[EquationKey, object]


class ThetaUnknown(NamedTuple):
    degree: int
    row: int
    col: int


class BUnknown(NamedTuple):
    order: int
    exponent: int
    row: int
    col: int


class FUnknown(NamedTuple):
    degree: int
    row: int
    col: int


class LUnknown(NamedTuple):
    order: int
    degree: int
    row: int
    col: int


PolyGrid = List[List[BiPoly]]


# ------------------------------
# Denominator clearing
# ------------------------------

def _common_denominator(mats: Sequence[Matrix], factor: Optional[BiPoly] = None) -> BiPoly:
    den = mats[0].ctx.ring.one
    for m in mats:
        for _, _, e in m.cells():
            den = poly_lcm(den, e.den * factor if factor is not None else e.den)
    return den


def _cleared(m: Matrix, den: BiPoly, factor: Optional[BiPoly] = None) -> PolyGrid:
    """Entries of den * m / factor as polynomials."""
    out = []
    for row in m.entries:
        line = []
        for e in row:
            d = e.den * factor if factor is not None else e.den
            line.append(e.num * den.exquo(d) if e.num else e.num)
        out.append(line)
    return out


def _check_size(psi: ExpKernel, size: int) -> None:
    if psi.size != size:
        raise DimensionMismatchError(f"ansatz size {size} does not match kernel size {psi.size}")


def _build(
    psi: ExpKernel,
    unknowns: Sequence[object],
    column: Callable[[object], Column],
    pool: Optional[WorkerPool],
    rhs: Optional[Column] = None,
    stage: str = "assembly",
) -> LinearSystem:
    with metrics.timer(f"solver.{stage}") as t:
        columns = pool.map(column, unknowns) if pool is not None else [column(u) for u in unknowns]
        system = LinearSystem.from_columns(psi.ctx.domain, unknowns, columns, rhs)
    metrics.counter("solver.systems").inc()
    metrics.counter("solver.unknowns").inc(len(unknowns))
    logger.info(
        "Assembled linear system",
        extra={"stage": stage, "equations": system.shape[0], "unknowns": system.shape[1], "elapsed_ms": t.elapsed_ms},
    )
    return system


# ------------------------------
# Right identity
# ------------------------------

def theta_unknowns(size: int, theta_degree: int) -> List[ThetaUnknown]:
    return [ThetaUnknown(d, r, c) for d in range(theta_degree + 1) for r in range(size) for c in range(size)]


def b_unknowns(ansatz: BAnsatz) -> List[BUnknown]:
    n = ansatz.size
    return [
        BUnknown(i, e, r, c)
        for i in range(ansatz.max_order + 1)
        for e in range(ansatz.laurent_low, ansatz.laurent_high + 1)
        for r in range(n)
        for c in range(n)
    ]


class _RightFactors:
    """Cleared factors z^shift * D * M_i shared by every right-identity column."""

    def __init__(self, psi: ExpKernel, ansatz: BAnsatz):
        derivs = z_derivatives(psi, ansatz.max_order)
        self.den = _common_denominator(derivs)
        self.shift = max(0, -ansatz.laurent_low)
        self.grids = [_cleared(m, self.den) for m in derivs]
        self.size = psi.size

    def b_column(self, u: BUnknown) -> Column:
        # M_i (z^e E_{row,col}): column `col` receives z^e * column `row` of M_i
        col: Column = {}
        grid = self.grids[u.order]
        for a in range(self.size):
            for (i, j), v in grid[a][u.row].iterterms():
                col[(a, u.col, i, j + u.exponent + self.shift)] = v
        return col

    def theta_column(self, u: ThetaUnknown) -> Column:
        # -(x^d E_{row,col}) M: row `row` receives -x^d * row `col` of M
        col: Column = {}
        grid = self.grids[0]
        for b in range(self.size):
            for (i, j), v in grid[u.col][b].iterterms():
                col[(u.row, b, i + u.degree, j + self.shift)] = -v
        return col

    def theta_rhs(self, theta: Matrix) -> Column:
        rhs: Column = {}
        grid = self.grids[0]
        for r in range(self.size):
            for b in range(self.size):
                acc = None
                for c in range(self.size):
                    t = theta[r, c]
                    if t.is_zero():
                        continue
                    term = t.num * grid[c][b]
                    acc = term if acc is None else acc + term
                if acc is None:
                    continue
                for (i, j), v in acc.iterterms():
                    rhs[(r, b, i, j + self.shift)] = v
        return rhs


def assemble_theta_system(
    psi: ExpKernel,
    theta_degree: int,
    ansatz: BAnsatz,
    pool: Optional[WorkerPool] = None,
) -> LinearSystem:
    """Unknowns: Theta coefficients (degree, row, col) first, then B coefficients (order, exponent, row, col)."""
    _check_size(psi, ansatz.size)
    if theta_degree < 0:
        raise AnsatzError("eigenvalue degree must be nonnegative")
    factors = _RightFactors(psi, ansatz)
    unknowns: List[object] = [*theta_unknowns(psi.size, theta_degree), *b_unknowns(ansatz)]

    def column(u: object) -> Column:
        return factors.theta_column(u) if isinstance(u, ThetaUnknown) else factors.b_column(u)

    return _build(psi, unknowns, column, pool, stage="theta_assembly")


def assemble_partner_system(
    psi: ExpKernel,
    theta: Matrix,
    ansatz: BAnsatz,
    pool: Optional[WorkerPool] = None,
) -> LinearSystem:
    """B unknowns only, with Theta(x) fixed on the right-hand side."""
    _check_size(psi, ansatz.size)
    if theta.shape != (psi.size, psi.size):
        raise DimensionMismatchError(f"Theta is {theta.shape}, kernel is {psi.size}x{psi.size}")
    if theta.depends_on("z") or any(not e.is_polynomial() for _, _, e in theta.cells()):
        raise OperatorMismatchError("Theta must be a polynomial matrix in x")
    factors = _RightFactors(psi, ansatz)
    return _build(psi, b_unknowns(ansatz), factors.b_column, pool, rhs=factors.theta_rhs(theta), stage="partner_assembly")


# ------------------------------
# Left identity
# ------------------------------

def f_unknowns(size: int, f_degree: int) -> List[FUnknown]:
    return [FUnknown(t, r, c) for t in range(f_degree + 1) for r in range(size) for c in range(size)]


def l_unknowns(ansatz: LAnsatz) -> List[LUnknown]:
    n = ansatz.size
    return [
        LUnknown(k, t, r, c)
        for k in range(ansatz.max_order + 1)
        for t in range(ansatz.num_degree + 1)
        for r in range(n)
        for c in range(n)
    ]


def ansatz_denominator(psi: ExpKernel, ansatz: LAnsatz) -> BiPoly:
    d = from_univariate(psi.ctx, list(ansatz.denominator), "x")
    if not d:
        raise AnsatzError("left-operator denominator must be a nonzero polynomial")
    return d


def assemble_f_system(
    psi: ExpKernel,
    f_degree: int,
    ansatz: LAnsatz,
    pool: Optional[WorkerPool] = None,
) -> LinearSystem:
    """Unknowns: F coefficients (degree, row, col) first, then L numerators (order, degree, row, col)."""
    _check_size(psi, ansatz.size)
    if f_degree < 0:
        raise AnsatzError("eigenvalue degree must be nonnegative")
    d = ansatz_denominator(psi, ansatz)
    derivs = x_derivatives(psi, ansatz.max_order)
    den = _common_denominator(derivs, d)
    x_grids = [_cleared(m, den, d) for m in derivs]
    m_grid = _cleared(psi.m, den)
    n = psi.size

    def column(u: object) -> Column:
        col: Column = {}
        if isinstance(u, FUnknown):
            # -M (z^t E_{row,col}): column `col` receives -z^t * column `row` of M
            for a in range(n):
                for (i, j), v in m_grid[a][u.row].iterterms():
                    col[(a, u.col, i, j + u.degree)] = -v
        else:
            # (x^t/d) E_{row,col} X_k: row `row` receives x^t/d * row `col` of X_k
            grid = x_grids[u.order]
            for b in range(n):
                for (i, j), v in grid[u.col][b].iterterms():
                    col[(u.row, b, i + u.degree, j)] = v
        return col

    unknowns: List[object] = [*f_unknowns(n, f_degree), *l_unknowns(ansatz)]
    return _build(psi, unknowns, column, pool, stage="f_assembly")
