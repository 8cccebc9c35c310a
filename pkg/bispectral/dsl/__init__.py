# bispectral/dsl/__init__.py
from bispectral.dsl.evaluator import Evaluator, evaluate_expression, evaluate_scalar, extension_context
from bispectral.dsl.ir_dsl import parse_dsl, parse_expression
from bispectral.dsl.ir_validator import ValidationIssue, ValidationResult, validate_ast
from bispectral.dsl.printer import render_problem, render_value
from bispectral.dsl.problem import Binding, ProblemFile, parse

__all__ = [
    "Binding",
    "Evaluator",
    "ProblemFile",
    "ValidationIssue",
    "ValidationResult",
    "evaluate_expression",
    "evaluate_scalar",
    "extension_context",
    "parse",
    "parse_dsl",
    "parse_expression",
    "render_problem",
    "render_value",
    "validate_ast",
]
