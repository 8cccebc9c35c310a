# tests/test_families.py
from __future__ import annotations

import pytest

from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.errors import DimensionMismatchError, TruncationMismatchError
from bispectral.solver import (
    FAMILIES,
    algebra_closure_check,
    compare_spaces,
    conjecture_family,
    family_membership,
    family_parameter_count,
)
from bispectral.solver.families import graded_piece, matrix_degree, matrix_to_vector, vector_to_matrix


@pytest.mark.parametrize(
    "which, degree, expected",
    [
        ("C1", 0, 2),
        ("C1", 3, 10),
        ("C1", 5, 18),
        ("C2", 2, 12),
        ("C2", 5, 39),
        ("F3", 1, 1),
        ("F3", 2, 5),
    ],
)
def test_family_dimensions(which, degree, expected):
    assert len(conjecture_family(which, degree)) == expected


@pytest.mark.parametrize(
    "which, counts",
    [
        ("C1", [2, 2, 3, 3, 4, 4]),
        ("C2", [5, 5, 5, 8, 8, 8, 9]),
        ("F3", [2, 1, 2, 4]),
    ],
)
def test_parameter_counts_per_degree(which, counts):
    totals = [family_parameter_count(which, d) for d in range(len(counts))]
    increments = [totals[0]] + [b - a for a, b in zip(totals, totals[1:])]
    assert increments == counts


def test_parameter_count_above_truncated_dimension():
    # the coupled entries cut C2 below its parameter count at degree 2
    assert family_parameter_count("C2", 2) == 15
    assert family_parameter_count("F3", 1) == 3


def test_family_basis_is_linearly_independent():
    for which in FAMILIES:
        basis = conjecture_family(which, 4)
        result = compare_spaces(basis, basis, truncation=4, var=FAMILIES[which].var)
        assert result.computed_dim == len(basis)


def test_first_family_at_degree_three_has_the_coupled_entry(qq):
    x = RatFunc.gen(qq, "x")
    # r22_2 = 1 forces x^3 into the (2,1) entry
    element = Matrix(qq, [[0, 0], [x ** 3, x ** 2]])
    basis = conjecture_family("C1", 3)
    assert compare_spaces(basis + [element], basis, truncation=3).relation == "equal"
    # the x^2 (2,2) entry on its own is not a family member
    assert not family_membership(Matrix(qq, [[0, 0], [0, x ** 2]]), "C1")


def test_membership(qq):
    x = RatFunc.gen(qq, "x")
    assert family_membership(Matrix.scalar(qq, 2, x ** 3), "C1")
    assert not family_membership(Matrix.scalar(qq, 2, x), "C1")
    assert family_membership(Matrix.identity(qq, 3), "C2")
    with pytest.raises(DimensionMismatchError):
        family_membership(Matrix.identity(qq, 3), "C1")


def test_unknown_family():
    with pytest.raises(ValueError):
        conjecture_family("C7", 2)
    with pytest.raises(TruncationMismatchError):
        conjecture_family("C1", -1)


# ------------------------------
# Span comparison
# ------------------------------

def test_compare_relations(qq):
    x = RatFunc.gen(qq, "x")
    one = Matrix.identity(qq, 2)
    xi = Matrix.scalar(qq, 2, x)
    e12 = Matrix.unit(qq, 2, 0, 1)
    assert compare_spaces([one, xi], [xi + one, xi - one]).relation == "equal"
    assert compare_spaces([one], [one, xi]).relation == "computed_subset"
    assert compare_spaces([one, xi], [one]).relation == "conjectured_subset"
    result = compare_spaces([one, xi], [one, e12])
    assert result.relation == "incomparable"
    assert result.joint_rank == 3
    assert result.computed_outside == [xi]
    assert result.conjectured_outside == [e12]


def test_compare_empty_spans():
    result = compare_spaces([], [])
    assert result.equal and result.joint_rank == 0


def test_compare_rejects_mixed_sizes(qq):
    with pytest.raises(DimensionMismatchError):
        compare_spaces([Matrix.identity(qq, 2)], [Matrix.identity(qq, 3)])


def test_truncation_errors(qq):
    x = RatFunc.gen(qq, "x")
    with pytest.raises(TruncationMismatchError):
        matrix_to_vector(Matrix(qq, [[x ** 3]]), "x", 2)
    with pytest.raises(TruncationMismatchError):
        matrix_to_vector(Matrix(qq, [[1 / x]]), "x", 2)
    with pytest.raises(TruncationMismatchError):
        compare_spaces([Matrix(qq, [[x ** 3]])], [Matrix(qq, [[x]])], truncation=1)


def test_vector_layout(qq):
    x = RatFunc.gen(qq, "x")
    m = Matrix(qq, [[1 + x, 0], [x ** 2, 2]])
    vec = matrix_to_vector(m, "x", 2)
    assert len(vec) == 12
    assert vector_to_matrix(qq, vec, 2, 2, "x") == m
    assert matrix_degree(m, "x") == 2


# ------------------------------
# Algebra closure
# ------------------------------

@pytest.mark.parametrize("which", ["C1", "C2"])
def test_families_are_closed_under_products(which):
    assert algebra_closure_check(conjecture_family(which, 6), 6).closed


def test_decoupled_family_is_not_closed():
    result = algebra_closure_check(conjecture_family("C1-decoupled", 6), 6)
    assert not result.closed
    a, b, product = result.witness
    assert product == a * b
    assert product.shape == (2, 2)
    assert not family_membership(product, "C1-decoupled")


def test_third_family_is_closed():
    assert algebra_closure_check(conjecture_family("F3", 4), 4, var="z").closed


def test_closure_sees_combinations_of_lower_degree(qq):
    # x*E11 = first - second has degree 1, but x^2*E11 is outside the span
    x = RatFunc.gen(qq, "x")
    e11, e12 = Matrix.unit(qq, 2, 0, 0), Matrix.unit(qq, 2, 0, 1)
    first = e11.scale(x) + e12.scale(x ** 2)
    second = e12.scale(x ** 2)
    result = algebra_closure_check([first, second], 2)
    assert not result.closed
    a, b, product = result.witness
    assert a == b == e11.scale(x)
    assert product == e11.scale(x ** 2)


def test_graded_pieces_of_a_span(qq):
    x = RatFunc.gen(qq, "x")
    e11, e12 = Matrix.unit(qq, 2, 0, 0), Matrix.unit(qq, 2, 0, 1)
    vectors = [matrix_to_vector(m, "x", 2) for m in (e11.scale(x) + e12.scale(x ** 2), e12.scale(x ** 2))]
    K = qq.domain
    assert graded_piece(vectors, 2, 0, 2, K) == []
    (low,) = graded_piece(vectors, 2, 1, 2, K)
    assert vector_to_matrix(qq, low, 2, 2, "x") == e11.scale(x)
    assert len(graded_piece(vectors, 2, 2, 2, K)) == 2


def test_truncated_closure_ignores_products_above_the_degree(qq):
    x = RatFunc.gen(qq, "x")
    one = Matrix.identity(qq, 2)
    # x^2 * x^2 has degree 4 > 2, so {I, x^2 I} is closed at degree 2
    assert algebra_closure_check([one, one.scale(x ** 2)], 2).closed
    assert not algebra_closure_check([one, one.scale(x)], 2).closed
