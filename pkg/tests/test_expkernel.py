# tests/test_expkernel.py
from __future__ import annotations

import pytest

from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.errors import DimensionMismatchError, OperatorMismatchError
from bispectral.kernel.expkernel import (
    ExpKernel,
    apply_left,
    apply_right,
    dx,
    dz,
    mult_left,
    mult_right,
    x_derivatives,
)
from bispectral.kernel.verification import left_residual, right_residual, verify_left, verify_right
from bispectral.operators.diffop import DiffOp

from conftest import CASES, rand_kernel, rand_op


@pytest.mark.slow
def test_partial_derivatives_commute(qq, rng):
    for _ in range(CASES):
        psi = rand_kernel(qq, rng, rng.randint(1, 3))
        assert dx(dz(psi)) == dz(dx(psi))


def test_derivative_of_plane_wave(qq):
    psi = ExpKernel(Matrix.identity(qq, 1))
    z = RatFunc.gen(qq, "z")
    assert x_derivatives(psi, 3) == [Matrix(qq, [[z ** k]]) for k in range(4)]


@pytest.mark.slow
def test_left_action_is_additive(qq, rng):
    for _ in range(CASES):
        n = rng.randint(1, 3)
        psi = rand_kernel(qq, rng, n)
        a, b = rand_op(qq, rng, n, "x"), rand_op(qq, rng, n, "x")
        assert apply_left(a + b, psi).m == apply_left(a, psi).m + apply_left(b, psi).m


@pytest.mark.slow
def test_right_action_is_additive(qq, rng):
    for _ in range(CASES):
        n = rng.randint(1, 3)
        psi = rand_kernel(qq, rng, n)
        a, b = rand_op(qq, rng, n, "z"), rand_op(qq, rng, n, "z")
        assert apply_right(psi, a + b).m == apply_right(psi, a).m + apply_right(psi, b).m


@pytest.mark.slow
def test_left_and_right_actions_commute(qq, rng):
    for _ in range(CASES):
        n = rng.randint(1, 3)
        psi = rand_kernel(qq, rng, n)
        l = rand_op(qq, rng, n, "x")
        b = rand_op(qq, rng, n, "z")
        assert apply_right(apply_left(l, psi), b) == apply_left(l, apply_right(psi, b))


def test_actions_on_small_kernels(qq, rng):
    for _ in range(CASES // 10):
        psi = rand_kernel(qq, rng, 1)
        l, b = rand_op(qq, rng, 1, "x", max_order=1), rand_op(qq, rng, 1, "z", max_order=1)
        assert dx(dz(psi)) == dz(dx(psi))
        assert apply_right(apply_left(l, psi), b) == apply_left(l, apply_right(psi, b))


def test_multipliers_respect_variables(qq, rng):
    psi = rand_kernel(qq, rng, 2)
    x = RatFunc.gen(qq, "x")
    z = RatFunc.gen(qq, "z")
    assert mult_left(x, psi).m == psi.m.scale(x)
    assert mult_right(psi, z).m == psi.m.scale(z)
    with pytest.raises(OperatorMismatchError):
        mult_left(z, psi)
    with pytest.raises(OperatorMismatchError):
        mult_right(psi, x)
    with pytest.raises(DimensionMismatchError):
        mult_left(Matrix.identity(qq, 3), psi)


def test_kernel_factor_must_be_square(qq):
    with pytest.raises(DimensionMismatchError):
        ExpKernel(Matrix(qq, [[1, 2]]))


def test_operator_side_is_checked(qq):
    psi = ExpKernel(Matrix.identity(qq, 1))
    with pytest.raises(OperatorMismatchError):
        apply_left(DiffOp.derivation(qq, 1, "z"), psi)
    with pytest.raises(OperatorMismatchError):
        apply_right(psi, DiffOp.derivation(qq, 1, "x"))
    with pytest.raises(DimensionMismatchError):
        apply_left(DiffOp.derivation(qq, 2, "x"), psi)


def test_plane_wave_eigen_identities(qq):
    psi = ExpKernel(Matrix.identity(qq, 2))
    x = RatFunc.gen(qq, "x")
    z = RatFunc.gen(qq, "z")
    assert verify_left(DiffOp(qq, "x", 2, {2: Matrix.identity(qq, 2)}), psi, z ** 2) == []
    assert verify_right(psi, DiffOp(qq, "z", 2, {2: Matrix.identity(qq, 2)}), x ** 2) == []


# ------------------------------
# Worked examples
# ------------------------------

def test_example_one_identities(ex1):
    psi = ex1.function("Psi")
    assert left_residual(ex1.operator("L"), psi, ex1.eigenvalue("p")).is_zero()
    assert right_residual(psi, ex1.operator("B"), ex1.eigenvalue("Theta")).is_zero()


def test_example_two_identities(ex2):
    psi = ex2.function("Psi")
    assert psi.size == 3
    assert verify_left(ex2.operator("L"), psi, ex2.eigenvalue("p")) == []
    assert verify_right(psi, ex2.operator("B"), ex2.eigenvalue("Theta")) == []


def test_example_three_identities(ex3):
    psi = ex3.function("Psi")
    assert verify_left(ex3.operator("L"), psi, ex3.eigenvalue("F")) == []
    assert verify_right(psi, ex3.operator("B"), ex3.eigenvalue("Theta")) == []


def test_example_three_needs_the_third_order_term(ex3):
    psi = ex3.function("Psi")
    op = ex3.operator("B")
    assert op.order == 3
    truncated = op - DiffOp(ex3.ctx, "z", 2, {3: Matrix.unit(ex3.ctx, 2, 1, 0)})
    assert truncated.order == 2
    residuals = verify_right(psi, truncated, ex3.eigenvalue("Theta"))
    # Psi Dz^3 E21 only feeds the first column
    assert len(residuals) == 2
    assert {(r.check, r.col) for r in residuals} == {("right", 0)}


def test_scalar_identities(scalar_problem):
    psi = scalar_problem.function("Psi")
    assert verify_left(scalar_problem.operator("L"), psi, scalar_problem.eigenvalue("p")) == []
    assert verify_right(psi, scalar_problem.operator("B"), scalar_problem.eigenvalue("Theta")) == []


def test_perturbed_theta_leaves_nonzero_residual(ex1):
    psi = ex1.function("Psi")
    ctx = psi.ctx
    x = RatFunc.gen(ctx, "x")
    residuals = verify_right(psi, ex1.operator("B"), x ** 3 + 1)
    assert residuals
    assert {r.check for r in residuals} == {"right"}
    # the residual is exactly -Psi's rational factor
    for r in residuals:
        assert r.value == -psi.m[r.row, r.col]


def test_wrong_eigenvalue_is_detected(ex1):
    psi = ex1.function("Psi")
    z = RatFunc.gen(psi.ctx, "z")
    residuals = verify_left(ex1.operator("L"), psi, z ** 2)
    assert residuals
    assert all(r.check == "left" for r in residuals)
