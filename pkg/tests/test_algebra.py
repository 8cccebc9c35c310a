# tests/test_algebra.py
from __future__ import annotations

import pytest

from bispectral.algebra.bipoly import (
    eval_univariate,
    from_univariate,
    poly_arith,
    poly_derivative,
    poly_gcd,
    poly_lcm,
    poly_text,
)
from bispectral.algebra.context import AlgebraContext, extension_inverse
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.errors import (
    ContextMismatchError,
    DimensionMismatchError,
    GcdOfZerosError,
    NotInvertibleError,
    ZeroDivisionInField,
)

from conftest import CASES, rand_matrix, rand_ratfunc


# ------------------------------
# Rational functions
# ------------------------------

def test_normal_form_cancels_common_factor(qq):
    x = RatFunc.gen(qq, "x")
    f = (x * x - 1) / (2 * x - 2)
    assert f == (x + 1) / 2
    assert f.den.is_one
    assert f.to_text() == "1/2*x + 1/2"


def test_zero_is_stored_canonically(qq):
    x = RatFunc.gen(qq, "x")
    z = RatFunc.gen(qq, "z")
    f = x / z - x / z
    assert f.is_zero()
    assert f.den.is_one
    assert f == RatFunc.zero(qq)


def test_denominator_is_monic(qq):
    x = RatFunc.gen(qq, "x")
    f = RatFunc.one(qq) / (3 * x + 6)
    assert f.den.LC == qq.one
    assert f == RatFunc.const(qq, (1, 3)) / (x + 2)


def test_field_axioms_hold_on_random_elements(qq, rng):
    for _ in range(CASES):
        a = rand_ratfunc(qq, rng)
        b = rand_ratfunc(qq, rng)
        c = rand_ratfunc(qq, rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == RatFunc.zero(qq)
        if not a.is_zero():
            assert a * a.inverse() == RatFunc.one(qq)


def test_normalization_is_idempotent(qq, rng):
    for _ in range(CASES):
        f = rand_ratfunc(qq, rng)
        again = RatFunc(qq, f.num, f.den)
        assert again == f
        assert again.num == f.num and again.den == f.den


def test_derivative_quotient_rule(qq, rng):
    for _ in range(CASES):
        f = rand_ratfunc(qq, rng)
        g = rand_ratfunc(qq, rng, nonzero=True)
        for var in ("x", "z"):
            lhs = (f / g).derivative(var)
            rhs = (f.derivative(var) * g - f * g.derivative(var)) / (g * g)
            assert lhs == rhs


def test_division_by_zero_raises(qq):
    x = RatFunc.gen(qq, "x")
    with pytest.raises(ZeroDivisionInField):
        x / RatFunc.zero(qq)
    with pytest.raises(ZeroDivisionError):
        RatFunc.zero(qq).inverse()


def test_negative_power_is_reciprocal(qq):
    x = RatFunc.gen(qq, "x")
    assert x ** -3 == RatFunc.one(qq) / (x * x * x)
    assert (x - 1) ** 0 == RatFunc.one(qq)


def test_dependency_tracking(qq):
    x = RatFunc.gen(qq, "x")
    z = RatFunc.gen(qq, "z")
    f = x / (z + 1)
    assert f.depends_on("x") and f.depends_on("z")
    assert not (x ** 2).depends_on("z")
    assert RatFunc.const(qq, 5).is_constant()


# ------------------------------
# Polynomials
# ------------------------------

def test_polynomial_arithmetic_and_derivatives(qq, eisenstein):
    x, z = qq.x, qq.z
    p = x ** 3 * z + 2 * x
    assert poly_arith(p, x, "sub") == x ** 3 * z + x
    assert poly_arith(p, z, "mul") == x ** 3 * z ** 2 + 2 * x * z
    assert poly_derivative(p, "x") == 3 * x ** 2 * z + 2
    assert poly_derivative(p, "z") == x ** 3
    with pytest.raises(ValueError):
        poly_arith(p, x, "div")
    with pytest.raises(ContextMismatchError):
        poly_arith(p, eisenstein.x, "add")


def test_gcd_of_zeros_is_an_error(qq):
    with pytest.raises(GcdOfZerosError):
        poly_gcd(qq.ring.zero, qq.ring.zero)


def test_gcd_and_lcm_are_monic(qq):
    x = qq.x
    a = 2 * (x - 1) ** 2 * (x + 3)
    b = 4 * (x - 1) * (x + 2)
    assert poly_gcd(a, b) == x - 1
    assert poly_lcm(a, b) == ((x - 1) ** 2 * (x + 3) * (x + 2)).monic()


def test_univariate_round_trip_and_evaluation(qq):
    p = from_univariate(qq, [1, 0, -2, 1], "x")
    assert p == qq.x ** 3 - 2 * qq.x ** 2 + 1
    assert eval_univariate(p, qq.scalar(2)) == qq.scalar(1)
    assert poly_text(p, qq) == "1/1*x^3 + -2/1*x^2 + 1/1"


# ------------------------------
# Extension fields
# ------------------------------

def test_extension_generator_satisfies_modulus(eisenstein):
    a = eisenstein.generator()
    assert a * a - a + eisenstein.one == eisenstein.zero


def test_extension_inverse(eisenstein):
    a = eisenstein.generator()
    inv = extension_inverse(a, eisenstein)
    assert a * inv == eisenstein.one
    # a^3 = -1 in this field, so a^-1 = -a^2 = 1 - a
    assert inv == eisenstein.one - a


def test_reducible_modulus_surfaces_as_not_invertible():
    # a^2 - 1 = (a - 1)(a + 1): the residue a - 1 has no inverse
    ctx = AlgebraContext.extension([1, 0, -1], "b")
    a = ctx.generator()
    with pytest.raises(NotInvertibleError) as info:
        extension_inverse(a - ctx.one, ctx)
    assert "b" in info.value.element_text


def test_extension_contexts_are_shared():
    assert AlgebraContext.extension([2, -2, 2], "a") is AlgebraContext.extension([1, -1, 1], "a")


def test_extension_scalar_text(eisenstein):
    a = eisenstein.generator()
    assert eisenstein.scalar_text(a) == "(1/1*a)"
    assert eisenstein.modulus_text() == "1/1*a^2 + -1/1*a + 1/1"


def test_contexts_do_not_mix(qq, eisenstein):
    with pytest.raises(ContextMismatchError):
        RatFunc.gen(qq, "x") + RatFunc.gen(eisenstein, "x")


# ------------------------------
# Matrices
# ------------------------------

def test_elementary_matrix_is_nilpotent(qq):
    e12 = Matrix.unit(qq, 2, 0, 1)
    assert (e12 * e12).is_zero()
    assert e12 * e12 == Matrix.zeros(qq, 2)


@pytest.mark.slow
def test_matrix_ring_laws(qq, rng):
    for _ in range(CASES):
        n = rng.randint(1, 3)
        a, b, c = (rand_matrix(qq, rng, n) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * Matrix.identity(qq, n) == a


def test_matrix_shape_errors(qq):
    col = Matrix(qq, [[1], [2]])
    with pytest.raises(DimensionMismatchError):
        col * col
    with pytest.raises(DimensionMismatchError):
        col + Matrix(qq, [[1, 2]])
    with pytest.raises(DimensionMismatchError):
        Matrix(qq, [[1, 2], [3]])


def test_matrix_derivative_is_entrywise(qq):
    x = RatFunc.gen(qq, "x")
    m = Matrix(qq, [[x ** 2, 1 / x], [0, x]])
    assert m.derivative("x") == Matrix(qq, [[2 * x, -1 / x ** 2], [0, 1]])
