# bispectral/algebra/context.py
"""
Exact base fields.

An AlgebraContext fixes the coefficient domain (QQ, or QQ[a]/(m) for a
user-supplied monic modulus m that is trusted to be irreducible) together with
the sparse polynomial ring in the generators (x, z) under graded-lex order.
Every polynomial, rational function, matrix and operator carries the context
it was built in; values from different contexts never mix.
"""

from __future__ import annotations
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Sequence, Tuple
import logging

from sympy import CRootOf, Poly, Symbol
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import NotInvertible
from sympy.polys.rings import ring

from bispectral.errors import NotInvertibleError, ZeroDivisionInField

logger = logging.getLogger(__name__)

# element of QQ or of an algebraic field (sympy ANP)
Scalar = Any

VARIABLES = ("x", "z")


def ratio_text(q: Any) -> str:
    """Integer-ratio rendering of a rational, always with a denominator."""
    return f"{int(q.numerator)}/{int(q.denominator)}"


def _polynomial_text(coeffs: Sequence[Any], name: str) -> str:
    # coeffs are rationals, highest degree first
    deg = len(coeffs) - 1
    terms = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        power = deg - k
        if power == 0:
            terms.append(ratio_text(c))
        elif power == 1:
            terms.append(f"{ratio_text(c)}*{name}")
        else:
            terms.append(f"{ratio_text(c)}*{name}^{power}")
    return " + ".join(terms) if terms else "0/1"


class AlgebraContext:
    __slots__ = ("domain", "ring", "x", "z", "generator_name", "modulus")

    def __init__(self, domain: Any, generator_name: Optional[str] = None, modulus: Optional[Tuple[Any, ...]] = None):
        self.domain = domain
        self.ring, self.x, self.z = ring("x,z", domain, grlex)
        self.generator_name = generator_name
        self.modulus = modulus

    # ------------------------------
    # Construction
    # ------------------------------
    @classmethod
    def rational(cls) -> "AlgebraContext":
        return _rational_context()

    @classmethod
    def extension(cls, coefficients: Sequence[Any], name: str = "a") -> "AlgebraContext":
        """
        QQ[name]/(m) where m has the given rational coefficients (highest
        degree first). The modulus is made monic and is never tested for
        irreducibility: a reducible modulus shows up later as a
        NotInvertibleError on some residue.
        """
        coeffs = tuple(to_rational(c) for c in coefficients)
        while coeffs and not coeffs[0]:
            coeffs = coeffs[1:]
        if len(coeffs) < 2:
            raise ValueError("extension modulus must have degree >= 1")
        lead = coeffs[0]
        monic = tuple(c / lead for c in coeffs)
        return _extension_context(monic, name)

    @property
    def is_extension(self) -> bool:
        return self.generator_name is not None

    # ------------------------------
    # Scalars
    # ------------------------------
    def scalar(self, value: Any) -> Scalar:
        """Coerce an int, Fraction, rational or domain element into the domain."""
        K = self.domain
        if K.of_type(value):
            return value
        return K.convert_from(to_rational(value), QQ)

    def generator(self) -> Scalar:
        if not self.is_extension:
            raise ValueError("the rational field has no extension generator")
        return self.domain([QQ(1), QQ(0)])

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def scalar_text(self, s: Scalar) -> str:
        if not self.is_extension:
            return ratio_text(s)
        return "(" + _polynomial_text(list(s.to_list()), self.generator_name) + ")"

    def modulus_text(self) -> str:
        if not self.is_extension:
            return ""
        return _polynomial_text(list(self.modulus), self.generator_name)

    def __repr__(self) -> str:
        if not self.is_extension:
            return "AlgebraContext(QQ)"
        return f"AlgebraContext(QQ[{self.generator_name}]/({self.modulus_text()}))"


def to_rational(value: Any) -> Any:
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, tuple) and len(value) == 2:
        return QQ(int(value[0]), int(value[1]))
    if QQ.of_type(value):
        return value
    raise TypeError(f"cannot interpret {value!r} as a rational")


@lru_cache(maxsize=None)
def _rational_context() -> AlgebraContext:
    return AlgebraContext(QQ)


@lru_cache(maxsize=None)
def _extension_context(monic: Tuple[Any, ...], name: str) -> AlgebraContext:
    gen = Symbol(name)
    minpoly = Poly([QQ.to_sympy(c) for c in monic], gen, domain=QQ)
    _, integral = minpoly.clear_denoms(convert=True)
    # the root only labels the field; arithmetic is carried out mod `minpoly`
    root = CRootOf(integral, 0)
    domain = QQ.algebraic_field((minpoly, root))
    logger.debug("Built extension field QQ[%s]/(%s)", name, minpoly.as_expr())
    return AlgebraContext(domain, name, monic)


QQ_CONTEXT = AlgebraContext.rational()


def extension_inverse(s: Scalar, ctx: AlgebraContext = QQ_CONTEXT) -> Scalar:
    """Exact inverse; in an extension field this is the extended-Euclid inverse mod m."""
    K = ctx.domain
    if not s:
        raise ZeroDivisionInField("zero is not invertible")
    try:
        return K.quo(K.one, s)
    except NotInvertible as exc:
        raise NotInvertibleError(ctx.scalar_text(s)) from exc
