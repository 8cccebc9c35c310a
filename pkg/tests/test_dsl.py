# tests/test_dsl.py
from __future__ import annotations

import logging

import pytest

from bispectral.algebra.context import AlgebraContext
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.dsl import (
    evaluate_expression,
    evaluate_scalar,
    extension_context,
    parse,
    parse_dsl,
    render_problem,
    render_value,
    validate_ast,
)
from bispectral.errors import DSLDimensionError, DSLError, DSLSyntaxError, DSLTypeError, UndefinedNameError
from bispectral.fixtures import EXAMPLES, FILENAMES, example_text
from bispectral.kernel.expkernel import ExpKernel
from bispectral.observability.metrics import metrics
from bispectral.operators.diffop import DiffOp

from conftest import FIXTURES_DIR


# ------------------------------
# Parsing the worked examples
# ------------------------------

def test_example_one_bindings(ex1):
    assert ex1.names() == ["Psi", "L", "p", "B", "Theta"]
    assert ex1.names("op") == ["L", "B"]
    ctx = ex1.ctx
    x = RatFunc.gen(ctx, "x")
    z = RatFunc.gen(ctx, "z")
    psi = ex1.function()
    assert psi.m == Matrix(ctx, [[z - 1 / x, x ** -2], [0, z - 1 / x]])
    l = ex1.operator("L")
    assert l.side == "left" and l.size == 2 and l.order == 2
    assert l.coefficient(2) == Matrix.scalar(ctx, 2, -1)
    b = ex1.operator("B")
    assert b.side == "right" and b.order == 3
    assert b.coefficient(2) == Matrix.scalar(ctx, 2, -3 / z)
    assert ex1.eigenvalue("p") == -(z ** 2)


def test_right_products_read_in_action_order(scalar_problem):
    b = scalar_problem.operator("B")
    z = RatFunc.gen(scalar_problem.ctx, "z")
    # Dz*(2/z): f -> f_z * (2/z)
    assert b.coefficient(1) == Matrix(scalar_problem.ctx, [[-2 / z]])
    assert b.coefficient(0).is_zero()


def test_operator_applied_to_a_function(ex2):
    # Psi = (Dx - W) * expxz
    psi = ex2.function("Psi")
    ctx = ex2.ctx
    z = RatFunc.gen(ctx, "z")
    w = ex2.eigenvalue("W")
    assert psi.m == Matrix.scalar(ctx, 3, z) - w


def test_division_of_a_function(ex3):
    psi = ex3.function("Psi")
    x = RatFunc.gen(ex3.ctx, "x")
    z = RatFunc.gen(ex3.ctx, "z")
    assert psi.m == ex3.eigenvalue("M").scale(1 / ((x - 2) * x * z))


def test_fixture_files_match_embedded_texts():
    for name in EXAMPLES:
        assert (FIXTURES_DIR / FILENAMES[name]).read_text() == example_text(name)


def test_unknown_example():
    with pytest.raises(KeyError):
        example_text(7)


def test_parse_counts():
    parse(example_text("scalar"))
    assert metrics.counter("dsl.parses").get() == 1


# ------------------------------
# Errors
# ------------------------------

def test_syntax_error_position():
    with pytest.raises(DSLSyntaxError) as info:
        parse("op L = Dx + ;")
    assert info.value.line == 1
    assert info.value.column == 13
    assert "';'" in str(info.value)


def test_syntax_error_on_second_line():
    with pytest.raises(DSLSyntaxError) as info:
        parse("field Q;\nlet p = [[1, 2];\n")
    assert info.value.line == 2


def test_unexpected_character():
    with pytest.raises(DSLSyntaxError):
        parse("let p = 3 $ 4;")


def test_undefined_name():
    with pytest.raises(UndefinedNameError) as info:
        parse("field Q;\nfun Psi = expxz * Missing;\n")
    assert info.value.name == "Missing"
    assert info.value.line == 2


def test_use_before_definition_is_undefined():
    with pytest.raises(UndefinedNameError):
        parse("let a = b + 1;\nlet b = 2;\n")


def test_dimension_mismatch():
    with pytest.raises(DSLDimensionError) as info:
        parse("let A = [[x], [x]] * [[x], [x]];")
    assert info.value.line == 1


def test_ragged_matrix():
    with pytest.raises(DSLDimensionError):
        parse("let A = [[1, 2], [3]];")


def test_rectangular_product_is_fine():
    problem = parse("let A = [[x]] * [[x, x]];")
    assert problem.get("A").shape == (1, 2)


@pytest.mark.parametrize(
    "text",
    [
        "let p = 1;\nlet p = 2;",
        "let x = 1;",
        "let p = 1;\nfield Q;",
        "field Q[x]/(x^2 + 1);",
        "field Q[a]/(b^2 + 1);",
    ],
)
def test_validator_errors(text):
    with pytest.raises(DSLError):
        parse(text)


@pytest.mark.parametrize(
    "text, error",
    [
        ("let T = Dx;", DSLTypeError),
        ("fun Psi = [[x]];", DSLTypeError),
        ("op L = x*z;", DSLTypeError),
        ("op L = Dz * expxz;", DSLTypeError),
        ("let K = expxz * expxz;", DSLTypeError),
        ("op L = Dx / x;", DSLTypeError),
        ("let A = [[1, 0], [0, 1]] / [[1, 0], [0, 1]];", DSLTypeError),
        ("let A = [[Dx]];", DSLTypeError),
        ("op L = Dx^-1;", DSLTypeError),
        ("let q = 1/(x - x);", DSLError),
    ],
)
def test_type_errors(text, error):
    with pytest.raises(error):
        parse(text)


def test_unused_binding_warns(caplog):
    with caplog.at_level(logging.WARNING):
        problem = parse("let W = x;\nlet p = -z^2;\n")
    assert [w.code for w in problem.warnings] == ["unused"]
    assert "'W' is never used" in caplog.text


def test_validator_reports_every_issue():
    ast = parse_dsl("let a = b;\nlet a = 1;\nlet z = 2;\n")
    result = validate_ast(ast)
    assert not result.ok()
    assert sorted(issue.code for issue in result.errors) == ["duplicate", "reserved", "undefined_name"]


# ------------------------------
# Sizes and sides
# ------------------------------

def test_operator_size_follows_literals_and_names():
    problem = parse(
        "let W = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];\n"
        "op A = Dx - W;\n"
        "op C = Dz^2;\n"
    )
    assert problem.operator("A").size == 3
    assert problem.operator("C").size == 3
    assert problem.operator("C").side == "right"


def test_order_zero_operators_pick_their_ring():
    problem = parse("op T = x^3;\nop S = [[z, 0], [0, 1]];\n")
    t = problem.operator("T")
    assert (t.var, t.order, t.size) == ("x", 0, 2)
    assert problem.operator("S").var == "z"


def test_scalar_is_promoted_in_sums():
    problem = parse("let A = [[1, 2], [3, 4]] + x;")
    x = RatFunc.gen(problem.ctx, "x")
    assert problem.get("A") == Matrix(problem.ctx, [[1 + x, 2], [3, 4 + x]])


def test_powers():
    problem = parse("let a = (x + 1)^2;\nlet b = x^(-2);\nop D3 = Dx^3;\nlet E = [[0, 1], [0, 0]]^2;\n")
    x = RatFunc.gen(problem.ctx, "x")
    assert problem.get("a") == x * x + 2 * x + 1
    assert problem.get("b") == 1 / (x * x)
    assert problem.operator("D3") == DiffOp(problem.ctx, "x", 2, {3: Matrix.identity(problem.ctx, 2)})
    assert problem.get("E").is_zero()


def test_kernel_products():
    problem = parse("fun Psi = expxz * [[1, x], [0, 1]] * z;\nop B = Dz;\nfun Phi = Psi * B;\n")
    ctx = problem.ctx
    x = RatFunc.gen(ctx, "x")
    z = RatFunc.gen(ctx, "z")
    psi = problem.function("Psi")
    assert psi.m == Matrix(ctx, [[z, x * z], [0, z]])
    # d/dz (exp(xz) M) = exp(xz) (x M + M_z)
    assert problem.function("Phi").m == psi.m.scale(x) + Matrix(ctx, [[1, x], [0, 1]])


# ------------------------------
# Extension fields
# ------------------------------

def test_extension_field_declaration():
    problem = parse("field Q[a]/(a^2 - a + 1);\nlet r = a^3;\nlet s = 1/a;\n")
    ctx = problem.ctx
    assert ctx is AlgebraContext.extension([1, -1, 1], "a")
    assert problem.get("r") == RatFunc.const(ctx, -1)
    assert problem.get("s") == RatFunc.const(ctx, ctx.one - ctx.generator())


def test_extension_context_from_text():
    ctx = extension_context("2*a^2 - 2*a + 2")
    assert ctx is AlgebraContext.extension([1, -1, 1], "a")
    with pytest.raises(DSLTypeError):
        extension_context("3")
    with pytest.raises(DSLTypeError):
        extension_context("a*z + 1")


def test_command_line_expressions(qq, eisenstein):
    assert evaluate_scalar("-3/4") == qq.scalar((-3, 4))
    assert evaluate_scalar("1 - a", eisenstein) == eisenstein.one - eisenstein.generator()
    with pytest.raises(DSLTypeError):
        evaluate_scalar("x + 1")
    value = evaluate_expression("x^3*(x - 2)^3")
    assert isinstance(value, RatFunc) and value.is_polynomial()


# ------------------------------
# Canonical printing
# ------------------------------

@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_round_trip(name):
    problem = parse(example_text(name))
    text = render_problem(problem)
    assert text.startswith("field Q;\n")
    again = parse(text)
    assert again == problem
    assert render_problem(again) == text


def test_round_trip_in_an_extension():
    problem = parse("field Q[a]/(a^2 - a + 1);\nlet r = a*x + 1;\nop L = Dx^2 + [[a]];\n")
    text = render_problem(problem)
    assert text.startswith("field Q[a]/(1/1*a^2 + -1/1*a + 1/1);")
    assert parse(text) == problem


def test_render_values(qq):
    x = RatFunc.gen(qq, "x")
    assert render_value(x / 2) == "(1/2*x)"
    assert render_value(Matrix(qq, [[x, 0]])) == "[[1/1*x, 0]]"
    assert render_value(ExpKernel(Matrix.identity(qq, 1))) == "expxz*[[1/1]]"
    assert render_value(DiffOp.zero(qq, 2, "z")) == "Dz^0*[[0, 0], [0, 0]]"
    with pytest.raises(TypeError):
        render_value(3)
