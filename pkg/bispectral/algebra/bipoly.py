# bispectral/algebra/bipoly.py
"""
Sparse bivariate polynomials in (x, z) over an AlgebraContext domain.

BiPoly is sympy's PolyElement: a dict from exponent pairs (i, j) to nonzero
coefficients, under graded-lex order. This module adds the handful of
operations the workbench needs on top of it with exact, context-checked
semantics.
"""

from __future__ import annotations
from typing import Dict, List, Sequence

from sympy.polys.rings import PolyElement

from bispectral.algebra.context import AlgebraContext, Scalar
from bispectral.errors import ContextMismatchError, GcdOfZerosError

BiPoly = PolyElement

_VAR_INDEX = {"x": 0, "z": 1}


def var_index(var: str) -> int:
    try:
        return _VAR_INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable '{var}' (expected 'x' or 'z')") from None


def check_same_ring(a: BiPoly, b: BiPoly) -> None:
    if a.ring is not b.ring:
        raise ContextMismatchError("polynomials belong to different contexts")


def poly_arith(a: BiPoly, b: BiPoly, kind: str) -> BiPoly:
    check_same_ring(a, b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation '{kind}'")


def poly_derivative(p: BiPoly, var: str) -> BiPoly:
    return p.diff(var_index(var))


def poly_gcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """Monic gcd; gcd(0, 0) is undefined."""
    check_same_ring(a, b)
    if not a and not b:
        raise GcdOfZerosError("gcd(0, 0) is undefined")
    return a.gcd(b).monic()


def poly_lcm(a: BiPoly, b: BiPoly) -> BiPoly:
    check_same_ring(a, b)
    if not a or not b:
        return a.ring.zero
    return (a * b).exquo(poly_gcd(a, b)).monic()


def degree_in(p: BiPoly, var: str) -> int:
    """Degree in one variable; -1 for the zero polynomial."""
    if not p:
        return -1
    i = var_index(var)
    return max(monom[i] for monom in p.itermonoms())


def depends_on(p: BiPoly, var: str) -> bool:
    return degree_in(p, var) > 0


def univariate_coefficients(p: BiPoly, var: str) -> Dict[int, Scalar]:
    """Coefficients by power of `var`; p must not involve the other variable."""
    other = 1 - var_index(var)
    out: Dict[int, Scalar] = {}
    for monom, coeff in p.iterterms():
        if monom[other]:
            raise ValueError(f"polynomial depends on the variable other than '{var}'")
        out[monom[var_index(var)]] = coeff
    return out


def from_univariate(ctx: AlgebraContext, coeffs: Dict[int, Scalar] | Sequence[Scalar], var: str) -> BiPoly:
    """Build sum c_k var^k; `coeffs` maps power to coefficient (or is a list indexed by power)."""
    items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
    i = var_index(var)
    terms = {}
    for k, c in items:
        c = ctx.scalar(c)
        if not c:
            continue
        monom = (k, 0) if i == 0 else (0, k)
        terms[monom] = c
    return ctx.ring.from_dict(terms) if terms else ctx.ring.zero


def eval_univariate(p: BiPoly, value: Scalar, var: str = "x") -> Scalar:
    """Evaluate a polynomial in one variable at a domain element (Horner)."""
    coeffs = univariate_coefficients(p, var)
    K = p.ring.domain
    if not coeffs:
        return K.zero
    acc = K.zero
    for k in range(max(coeffs), -1, -1):
        acc = acc * value + coeffs.get(k, K.zero)
    return acc


def poly_text(p: BiPoly, ctx: AlgebraContext) -> str:
    """Human and DSL readable rendering with exact integer-ratio coefficients."""
    if not p:
        return "0"
    parts: List[str] = []
    for (i, j), c in p.terms():
        factors = [ctx.scalar_text(c)]
        if i:
            factors.append("x" if i == 1 else f"x^{i}")
        if j:
            factors.append("z" if j == 1 else f"z^{j}")
        parts.append("*".join(factors))
    return " + ".join(parts)
