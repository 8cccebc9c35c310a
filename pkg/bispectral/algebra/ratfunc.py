# bispectral/algebra/ratfunc.py
"""
Rational functions num/den in (x, z) kept in normal form.

Normal form: gcd(num, den) = 1, den monic under graded-lex order, and the zero
function is stored as 0/1. Two RatFuncs are equal iff their normal forms are
identical, so structural equality is semantic equality.
"""

from __future__ import annotations
from fractions import Fraction
from typing import Any, Optional, Tuple

from sympy.polys.domains import QQ

from bispectral.algebra.bipoly import BiPoly, check_same_ring, degree_in, poly_derivative, poly_text
from bispectral.algebra.context import AlgebraContext, Scalar
from bispectral.errors import ContextMismatchError, ZeroDivisionInField


def _scalar_like(ctx: AlgebraContext, value: Any) -> bool:
    if isinstance(value, (RatFunc, int, Fraction)):
        return not isinstance(value, bool)
    return ctx.domain.of_type(value) or QQ.of_type(value)


def _normalize(num: BiPoly, den: BiPoly) -> Tuple[BiPoly, BiPoly]:
    R = num.ring
    if not den:
        raise ZeroDivisionInField("rational function with zero denominator")
    if not num:
        return R.zero, R.one
    if not den.is_one and not num.is_ground:
        g = num.gcd(den)
        if not g.is_one:
            num = num.exquo(g)
            den = den.exquo(g)
    lc = den.LC
    if not R.domain.is_one(lc):
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return num, den


class RatFunc:
    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: AlgebraContext, num: BiPoly, den: Optional[BiPoly] = None, *, normalized: bool = False):
        if den is None:
            den = ctx.ring.one
        if num.ring is not ctx.ring or den.ring is not ctx.ring:
            raise ContextMismatchError("numerator/denominator not in the given context")
        if not normalized:
            num, den = _normalize(num, den)
        self.ctx = ctx
        self.num = num
        self.den = den

    # ------------------------------
    # Constructors
    # ------------------------------
    @classmethod
    def const(cls, ctx: AlgebraContext, value: Any) -> "RatFunc":
        return cls(ctx, ctx.ring.ground_new(ctx.scalar(value)), normalized=True)

    @classmethod
    def zero(cls, ctx: AlgebraContext) -> "RatFunc":
        return cls(ctx, ctx.ring.zero, normalized=True)

    @classmethod
    def one(cls, ctx: AlgebraContext) -> "RatFunc":
        return cls(ctx, ctx.ring.one, normalized=True)

    @classmethod
    def gen(cls, ctx: AlgebraContext, var: str) -> "RatFunc":
        return cls(ctx, ctx.x if var == "x" else ctx.z, normalized=True)

    @classmethod
    def from_poly(cls, ctx: AlgebraContext, p: BiPoly) -> "RatFunc":
        return cls(ctx, p, normalized=True) if p.ring is ctx.ring else cls(ctx, p)

    # ------------------------------
    # Predicates
    # ------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_one

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_one

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.LC if self.num else self.ctx.zero

    def depends_on(self, var: str) -> bool:
        return degree_in(self.num, var) > 0 or degree_in(self.den, var) > 0

    # ------------------------------
    # Arithmetic
    # ------------------------------
    def _coerce(self, other: Any) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.ctx is not self.ctx:
                raise ContextMismatchError("rational functions belong to different contexts")
            return other
        return RatFunc.const(self.ctx, other)

    def __add__(self, other: Any) -> "RatFunc":
        if not _scalar_like(self.ctx, other):
            return NotImplemented
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.ctx, self.num + o.num, self.den)
        return RatFunc(self.ctx, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(self.ctx, -self.num, self.den, normalized=True)

    def __sub__(self, other: Any) -> "RatFunc":
        if not _scalar_like(self.ctx, other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "RatFunc":
        if not _scalar_like(self.ctx, other):
            return NotImplemented
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return RatFunc.zero(self.ctx)
        return RatFunc(self.ctx, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionInField("division by the zero rational function")
        return RatFunc(self.ctx, self.den, self.num)

    def __truediv__(self, other: Any) -> "RatFunc":
        if not _scalar_like(self.ctx, other):
            return NotImplemented
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> "RatFunc":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RatFunc.one(self.ctx)
        # powers of coprime polynomials stay coprime; LC is multiplicative
        return RatFunc(self.ctx, self.num ** k, self.den ** k, normalized=True)

    def derivative(self, var: str) -> "RatFunc":
        dn = poly_derivative(self.num, var)
        dd = poly_derivative(self.den, var)
        if not dd:
            return RatFunc(self.ctx, dn, self.den)
        return RatFunc(self.ctx, dn * self.den - self.num * dd, self.den * self.den)

    # ------------------------------
    # Comparison / rendering
    # ------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFunc):
            if isinstance(other, int):
                return self == RatFunc.const(self.ctx, other)
            return NotImplemented
        return other.ctx is self.ctx and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    def to_text(self) -> str:
        num = poly_text(self.num, self.ctx)
        if self.den.is_one:
            return num
        return f"({num})/({poly_text(self.den, self.ctx)})"

    def __repr__(self) -> str:
        return f"RatFunc({self.to_text()})"


def ratfunc_arith(a: RatFunc, b: RatFunc, kind: str) -> RatFunc:
    if a.ctx is not b.ctx:
        raise ContextMismatchError("rational functions belong to different contexts")
    check_same_ring(a.num, b.num)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown rational function operation '{kind}'")


def ratfunc_derivative(f: RatFunc, var: str) -> RatFunc:
    return f.derivative(var)
