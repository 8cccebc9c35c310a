# bispectral/kernel/verification.py
"""Residuals of the two bispectral identities, entry by entry."""

from __future__ import annotations
from dataclasses import dataclass
from typing import List

from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.kernel.expkernel import ExpKernel, apply_left, apply_right, mult_left, mult_right
from bispectral.operators.diffop import DiffOp


@dataclass
class Residual:
    check: str  # "left" | "right"
    row: int
    col: int
    value: RatFunc

    def to_text(self) -> str:
        return self.value.to_text()


def left_residual(op: DiffOp, psi: ExpKernel, eigen: Matrix | RatFunc) -> Matrix:
    """L Psi - Psi F; F (or the scalar p) must be a function of z only."""
    return apply_left(op, psi).m - mult_right(psi, eigen).m


def right_residual(psi: ExpKernel, op: DiffOp, theta: Matrix | RatFunc) -> Matrix:
    """Psi B - Theta Psi; Theta must be a function of x only."""
    return apply_right(psi, op).m - mult_left(theta, psi).m


def nonzero_entries(residual: Matrix, check: str) -> List[Residual]:
    return [Residual(check, r, c, e) for r, c, e in residual.cells() if not e.is_zero()]


def verify_left(op: DiffOp, psi: ExpKernel, eigen: Matrix | RatFunc) -> List[Residual]:
    return nonzero_entries(left_residual(op, psi, eigen), "left")


def verify_right(psi: ExpKernel, op: DiffOp, theta: Matrix | RatFunc) -> List[Residual]:
    return nonzero_entries(right_residual(psi, op, theta), "right")
