# bispectral/operators/diffop.py
"""
Matrix differential operators in one variable.

A left operator L = sum_i A_i(x) d_x^i acts on functions of x from the left.
A right operator B = sum_i d_z^i b_i(z) acts from the right; its coefficients
sit to the right of the derivatives, so (f)B = sum_i (d_z^i f) b_i.
"""

from __future__ import annotations
from math import comb
from typing import Any, Dict, List, Mapping, Optional

from bispectral.algebra.context import AlgebraContext
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.errors import ContextMismatchError, OperatorMismatchError

SIDE_FOR_VAR = {"x": "left", "z": "right"}
OTHER_VAR = {"x": "z", "z": "x"}


class DiffOp:
    __slots__ = ("ctx", "var", "side", "size", "coeffs")

    def __init__(
        self,
        ctx: AlgebraContext,
        var: str,
        size: int,
        coeffs: Mapping[int, Matrix],
        side: Optional[str] = None,
    ):
        if var not in SIDE_FOR_VAR:
            raise OperatorMismatchError(f"unknown operator variable '{var}'")
        if side is not None and side != SIDE_FOR_VAR[var]:
            raise OperatorMismatchError(f"a {var}-operator acts on the {SIDE_FOR_VAR[var]}, not the {side}")
        stored: Dict[int, Matrix] = {}
        for order in sorted(coeffs):
            m = coeffs[order]
            if order < 0:
                raise OperatorMismatchError("operator orders must be nonnegative")
            if m.ctx is not ctx:
                raise ContextMismatchError("operator coefficient belongs to a different context")
            if m.shape != (size, size):
                raise OperatorMismatchError(f"coefficient of order {order} is {m.shape}, expected {(size, size)}")
            if m.depends_on(OTHER_VAR[var]):
                raise OperatorMismatchError(
                    f"coefficient of order {order} depends on {OTHER_VAR[var]}; a {var}-operator needs coefficients in {var} only"
                )
            if not m.is_zero():
                stored[order] = m
        self.ctx = ctx
        self.var = var
        self.side = SIDE_FOR_VAR[var]
        self.size = size
        self.coeffs = stored

    # ------------------------------
    # Constructors
    # ------------------------------
    @classmethod
    def zero(cls, ctx: AlgebraContext, size: int, var: str) -> "DiffOp":
        return cls(ctx, var, size, {})

    @classmethod
    def multiplication(cls, m: Matrix, var: str) -> "DiffOp":
        if not m.is_square:
            raise OperatorMismatchError("multiplication operators need a square matrix")
        return cls(m.ctx, var, m.rows, {0: m})

    @classmethod
    def identity(cls, ctx: AlgebraContext, size: int, var: str) -> "DiffOp":
        return cls.multiplication(Matrix.identity(ctx, size), var)

    @classmethod
    def derivation(cls, ctx: AlgebraContext, size: int, var: str) -> "DiffOp":
        return cls(ctx, var, size, {1: Matrix.identity(ctx, size)})

    # ------------------------------
    # Structure
    # ------------------------------
    @property
    def order(self) -> int:
        """Highest order with a nonzero coefficient; -1 for the zero operator."""
        return max(self.coeffs) if self.coeffs else -1

    def coefficient(self, i: int) -> Matrix:
        return self.coeffs.get(i) or Matrix.zeros(self.ctx, self.size)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "DiffOp") -> None:
        if other.ctx is not self.ctx:
            raise ContextMismatchError("operators belong to different contexts")
        if other.var != self.var:
            raise OperatorMismatchError(f"cannot combine a {self.side} operator with a {other.side} operator")
        if other.size != self.size:
            raise OperatorMismatchError(f"operator sizes differ: {self.size} vs {other.size}")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        out = dict(self.coeffs)
        for i, m in other.coeffs.items():
            out[i] = out[i] + m if i in out else m
        return DiffOp(self.ctx, self.var, self.size, out)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.ctx, self.var, self.size, {i: -m for i, m in self.coeffs.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, factor: Any) -> "DiffOp":
        """Multiply every coefficient by a constant."""
        return DiffOp(self.ctx, self.var, self.size, {i: m.scale(factor) for i, m in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (
            other.ctx is self.ctx
            and other.var == self.var
            and other.size == self.size
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.var, self.size, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        d = "Dx" if self.var == "x" else "Dz"
        parts: List[str] = []
        for i in sorted(self.coeffs, reverse=True):
            m = self.coeffs[i].to_text()
            parts.append(f"{m}*{d}^{i}" if self.side == "left" else f"{d}^{i}*{m}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiffOp[{self.side}, n={self.size}]({self.to_text()})"


# ------------------------------
# Composition
# ------------------------------

def _derivatives(m: Matrix, var: str, count: int) -> List[Matrix]:
    """[m, m', ..., m^(count)], stopping early once a derivative vanishes."""
    out = [m]
    while len(out) <= count and not out[-1].is_zero():
        out.append(out[-1].derivative(var))
    return out


def _accumulate(out: Dict[int, Matrix], n: int, term: Matrix) -> None:
    out[n] = out[n] + term if n in out else term


def compose_left(a: DiffOp, b: DiffOp) -> DiffOp:
    """
    (A B) for left operators in x:
        (A_i d^i)(B_j d^j) = sum_k C(i,k) A_i B_j^(k) d^(i-k+j)
    """
    if a.side != "left":
        raise OperatorMismatchError("compose_left expects left (x) operators")
    a._check(b)
    out: Dict[int, Matrix] = {}
    max_i = a.order
    for j, bj in b.coeffs.items():
        derivs = _derivatives(bj, "x", max_i)
        for i, ai in a.coeffs.items():
            for k in range(min(i, len(derivs) - 1) + 1):
                if derivs[k].is_zero():
                    break
                _accumulate(out, i - k + j, (ai * derivs[k]).scale(comb(i, k)))
    return DiffOp(a.ctx, a.var, a.size, out)


def compose_right(b1: DiffOp, b2: DiffOp) -> DiffOp:
    """
    (B1 B2) for right operators in z, acting as f -> (f B1) B2:
        (d^i b1_i)(d^j b2_j) = sum_k C(j,k) d^(i+j-k) b1_i^(k) b2_j
    """
    if b1.side != "right":
        raise OperatorMismatchError("compose_right expects right (z) operators")
    b1._check(b2)
    out: Dict[int, Matrix] = {}
    max_j = b2.order
    for i, c1 in b1.coeffs.items():
        derivs = _derivatives(c1, "z", max_j)
        for j, c2 in b2.coeffs.items():
            for k in range(min(j, len(derivs) - 1) + 1):
                if derivs[k].is_zero():
                    break
                _accumulate(out, i + j - k, (derivs[k] * c2).scale(comb(j, k)))
    return DiffOp(b1.ctx, b1.var, b1.size, out)


def compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """Composition in the ring the operators live in."""
    return compose_left(a, b) if a.side == "left" else compose_right(a, b)


def as_operator(value: Any, like: DiffOp) -> DiffOp:
    """Promote a scalar RatFunc or square Matrix to an order-0 operator shaped like `like`."""
    if isinstance(value, DiffOp):
        return value
    if isinstance(value, RatFunc):
        value = Matrix.scalar(like.ctx, like.size, value)
    if isinstance(value, Matrix):
        return DiffOp.multiplication(value, like.var)
    raise OperatorMismatchError(f"cannot use {type(value).__name__} as an operator")
