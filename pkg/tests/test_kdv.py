# tests/test_kdv.py
from __future__ import annotations

import pytest

from bispectral.algebra.bipoly import from_univariate
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.config import WorkbenchConfig
from bispectral.errors import BispectralError, KdVConfigError
from bispectral.kdv import (
    KdVConfig,
    admissible_basis,
    admissible_dim,
    check_constraints,
    crosscheck_scalar,
    is_kdv,
    potential,
    scalar_operator,
    single_pole_wavefunction,
    tau,
    tau_factors,
    theta_admissible,
    verify_log_identity,
)
from bispectral.kernel.verification import verify_left


def _cube_roots_of_minus_one(ctx) -> KdVConfig:
    a = ctx.generator()
    return KdVConfig.from_pairs([(-1, 1), (a, 1), (ctx.one - a, 1)], ctx)


@pytest.mark.parametrize("nu", [1, 2, 3])
def test_single_pole_is_vacuously_kdv(nu):
    cfg = KdVConfig.from_pairs([(0, nu)])
    residuals = check_constraints(cfg)
    assert len(residuals) == nu
    assert all(not r.residual for r in residuals)
    assert verify_log_identity(cfg)
    assert admissible_dim(cfg, 5) == 5 + 1 - nu


def test_cube_roots_of_minus_one(eisenstein):
    cfg = _cube_roots_of_minus_one(eisenstein)
    residuals = check_constraints(cfg)
    assert len(residuals) == 3
    assert all(not r.residual for r in residuals)
    assert is_kdv(cfg)


def test_negative_control_leaves_residual_two(qq):
    cfg = KdVConfig.from_pairs([(0, 1), (1, 1)])
    residuals = {r.pole: r.residual for r in check_constraints(cfg)}
    assert residuals[qq.scalar(0)] == qq.scalar(2)
    assert residuals[qq.scalar(1)] == qq.scalar(-2)
    assert not is_kdv(cfg)


def test_tau_of_cube_roots(eisenstein):
    cfg = _cube_roots_of_minus_one(eisenstein)
    assert tau(cfg) == eisenstein.x ** 3 + 1
    assert verify_log_identity(cfg)


def test_tau_exponents_are_triangular(qq):
    cfg = KdVConfig.from_pairs([(0, 3), (5, 1)])
    assert [e for _, e in tau_factors(cfg)] == [6, 1]
    assert tau(cfg) == qq.x ** 6 * (qq.x - 5)


def test_potential_from_log_derivative(qq):
    cfg = KdVConfig.from_pairs([(0, 3)])
    x = RatFunc.gen(qq, "x")
    assert potential(cfg) == 12 / x ** 2
    assert verify_log_identity(cfg)


def test_config_validation(qq):
    with pytest.raises(ValueError):
        KdVConfig.from_pairs([(0, 0)])
    with pytest.raises(ValueError):
        KdVConfig.from_pairs([(1, 1), (1, 2)])


# ------------------------------
# Admissible eigenvalues
# ------------------------------

def test_admissibility_of_single_pole(qq):
    cfg = KdVConfig.from_pairs([(0, 1)])
    assert theta_admissible(from_univariate(qq, [0, 0, 1], "x"), cfg)
    assert not theta_admissible(from_univariate(qq, [0, 1], "x"), cfg)
    assert admissible_dim(cfg, 5) == 5


def test_admissible_basis_spans_the_admissible_space(qq):
    cfg = KdVConfig.from_pairs([(0, 2), (3, 1)])
    basis = admissible_basis(cfg, 6)
    assert len(basis) == admissible_dim(cfg, 6) == 7 - 3
    for theta in basis:
        assert theta_admissible(theta, cfg)


def test_admissibility_in_the_extension(eisenstein):
    cfg = _cube_roots_of_minus_one(eisenstein)
    # tau' = 3x^2 does not vanish at the poles
    assert not theta_admissible(tau(cfg), cfg)
    assert admissible_dim(cfg, 5) == 3
    for theta in admissible_basis(cfg, 5):
        assert theta_admissible(theta, cfg)


def test_rational_theta_is_rejected(qq):
    cfg = KdVConfig.from_pairs([(0, 1)])
    with pytest.raises(ValueError):
        theta_admissible(1 / RatFunc.gen(qq, "x"), cfg)


# ------------------------------
# Wave functions and the matrix solver
# ------------------------------

@pytest.mark.parametrize("nu", [1, 2, 3])
def test_single_pole_wavefunction_is_an_eigenfunction(qq, nu):
    cfg = KdVConfig.from_pairs([(0, nu)])
    psi = single_pole_wavefunction(nu)
    z = RatFunc.gen(qq, "z")
    assert verify_left(scalar_operator(cfg), psi, -(z ** 2)) == []


def test_first_wavefunction_is_the_shadow(qq, scalar_problem):
    assert single_pole_wavefunction(1).m == scalar_problem.function("Psi").m
    x = RatFunc.gen(qq, "x")
    z = RatFunc.gen(qq, "z")
    assert single_pole_wavefunction(1).m == Matrix(qq, [[z - 1 / x]])


@pytest.mark.parametrize("degree, expected", [(0, 1), (1, 1), (2, 2), (3, 3)])
def test_crosscheck_agrees(degree, expected):
    cfg = KdVConfig.from_pairs([(0, 1)])
    result = crosscheck_scalar(cfg, degree, WorkbenchConfig(thread_workers=1))
    assert result.ok
    assert result.characterized_dim == result.solver_dim == expected


@pytest.mark.slow
@pytest.mark.parametrize("degree", [4, 5])
def test_crosscheck_agrees_at_higher_degree(degree):
    cfg = KdVConfig.from_pairs([(0, 1)])
    result = crosscheck_scalar(cfg, degree, WorkbenchConfig(thread_workers=2))
    assert result.ok
    assert result.solver_dim == degree


def test_crosscheck_needs_a_single_pole_at_zero():
    with pytest.raises(KdVConfigError) as info:
        crosscheck_scalar(KdVConfig.from_pairs([(1, 1)]), 2)
    assert isinstance(info.value, BispectralError)
    assert isinstance(info.value, ValueError)
