# bispectral/kernel/expkernel.py
"""
Exponential kernels Psi(x, z) = exp(x z) * M(x, z).

Only the rational factor M is stored. Derivatives are taken on the product:
    d_x Psi = exp(xz) (z M + d_x M)
    d_z Psi = exp(xz) (x M + d_z M)
so every operator application reduces to rational matrix arithmetic.
"""

from __future__ import annotations
from typing import List

from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.errors import ContextMismatchError, DimensionMismatchError, OperatorMismatchError
from bispectral.operators.diffop import DiffOp


class ExpKernel:
    __slots__ = ("m",)

    def __init__(self, m: Matrix):
        if not m.is_square:
            raise DimensionMismatchError(f"kernel factor must be square, got {m.shape}")
        self.m = m

    @property
    def size(self) -> int:
        return self.m.rows

    @property
    def ctx(self):
        return self.m.ctx

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExpKernel):
            return NotImplemented
        return self.m == other.m

    def __hash__(self) -> int:
        return hash(self.m)

    def __repr__(self) -> str:
        return f"ExpKernel(exp(x*z) * {self.m.to_text()})"


def dx(psi: ExpKernel) -> ExpKernel:
    z = RatFunc.gen(psi.ctx, "z")
    return ExpKernel(psi.m.scale(z) + psi.m.derivative("x"))


def dz(psi: ExpKernel) -> ExpKernel:
    x = RatFunc.gen(psi.ctx, "x")
    return ExpKernel(psi.m.scale(x) + psi.m.derivative("z"))


def x_derivatives(psi: ExpKernel, order: int) -> List[Matrix]:
    """Rational factors of d_x^i Psi for i = 0..order."""
    out = [psi.m]
    current = psi
    for _ in range(order):
        current = dx(current)
        out.append(current.m)
    return out


def z_derivatives(psi: ExpKernel, order: int) -> List[Matrix]:
    """Rational factors of d_z^i Psi for i = 0..order."""
    out = [psi.m]
    current = psi
    for _ in range(order):
        current = dz(current)
        out.append(current.m)
    return out


# ------------------------------
# Actions
# ------------------------------

def _check_size(psi: ExpKernel, n: int) -> None:
    if psi.size != n:
        raise DimensionMismatchError(f"kernel is {psi.size}x{psi.size}, operator is {n}x{n}")


def apply_left(op: DiffOp, psi: ExpKernel) -> ExpKernel:
    """L Psi = exp(xz) sum_i A_i X_i with X_i the factor of d_x^i Psi."""
    if op.side != "left":
        raise OperatorMismatchError("apply_left needs a left (x) operator")
    if op.ctx is not psi.ctx:
        raise ContextMismatchError("operator and kernel belong to different contexts")
    _check_size(psi, op.size)
    derivs = x_derivatives(psi, max(op.order, 0))
    acc = Matrix.zeros(psi.ctx, psi.size)
    for i, a in op.coeffs.items():
        acc = acc + a * derivs[i]
    return ExpKernel(acc)


def apply_right(psi: ExpKernel, op: DiffOp) -> ExpKernel:
    """Psi B = exp(xz) sum_i M_i b_i with M_i the factor of d_z^i Psi."""
    if op.side != "right":
        raise OperatorMismatchError("apply_right needs a right (z) operator")
    if op.ctx is not psi.ctx:
        raise ContextMismatchError("operator and kernel belong to different contexts")
    _check_size(psi, op.size)
    derivs = z_derivatives(psi, max(op.order, 0))
    acc = Matrix.zeros(psi.ctx, psi.size)
    for i, b in op.coeffs.items():
        acc = acc + derivs[i] * b
    return ExpKernel(acc)


def _as_matrix(value: Matrix | RatFunc, psi: ExpKernel) -> Matrix:
    if isinstance(value, RatFunc):
        return Matrix.scalar(psi.ctx, psi.size, value)
    if value.shape != (psi.size, psi.size):
        raise DimensionMismatchError(f"multiplier is {value.shape}, kernel is {psi.size}x{psi.size}")
    return value


def mult_left(theta: Matrix | RatFunc, psi: ExpKernel) -> ExpKernel:
    """Theta(x) Psi; Theta must not involve z."""
    m = _as_matrix(theta, psi)
    if m.depends_on("z"):
        raise OperatorMismatchError("left multiplier must be a function of x only")
    return ExpKernel(m * psi.m)


def mult_right(psi: ExpKernel, f: Matrix | RatFunc) -> ExpKernel:
    """Psi F(z); F must not involve x."""
    m = _as_matrix(f, psi)
    if m.depends_on("x"):
        raise OperatorMismatchError("right multiplier must be a function of z only")
    return ExpKernel(psi.m * m)
