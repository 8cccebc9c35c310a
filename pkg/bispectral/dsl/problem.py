# bispectral/dsl/problem.py
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional
import logging

from bispectral.algebra.context import AlgebraContext
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.dsl.evaluator import Evaluator, Value, default_size, field_context, kind_of
from bispectral.dsl.ir_dsl import ASTBinding, ASTField, parse_dsl
from bispectral.dsl.ir_validator import ValidationIssue, validate_ast
from bispectral.errors import DSLDimensionError, DSLError, DSLTypeError, UndefinedNameError
from bispectral.kernel.expkernel import ExpKernel
from bispectral.observability.metrics import metrics
from bispectral.operators.diffop import DiffOp

logger = logging.getLogger(__name__)


@dataclass
class Binding:
    kind: str  # "let" | "op" | "fun"
    name: str
    value: Value
    lineno: Optional[int] = field(default=None, compare=False)


@dataclass
class ProblemFile:
    """
    A parsed problem: the coefficient field and the named values in
    declaration order. Equality ignores source text and positions.
    """

    ctx: AlgebraContext
    bindings: Dict[str, Binding] = field(default_factory=dict)
    source: str = field(default="", compare=False, repr=False)
    warnings: List[ValidationIssue] = field(default_factory=list, compare=False, repr=False)

    def __iter__(self) -> Iterator[Binding]:
        return iter(self.bindings.values())

    def has(self, name: str) -> bool:
        return name in self.bindings

    def get(self, name: str) -> Value:
        if name not in self.bindings:
            raise UndefinedNameError(name)
        return self.bindings[name].value

    def names(self, kind: Optional[str] = None) -> List[str]:
        return [b.name for b in self.bindings.values() if kind is None or b.kind == kind]

    # ------------------------------
    # Typed accessors
    # ------------------------------
    def function(self, name: str = "Psi") -> ExpKernel:
        value = self.get(name)
        if not isinstance(value, ExpKernel):
            raise DSLTypeError(f"'{name}' is a {kind_of(value)}, not a function")
        return value

    def operator(self, name: str) -> DiffOp:
        value = self.get(name)
        if not isinstance(value, DiffOp):
            raise DSLTypeError(f"'{name}' is a {kind_of(value)}, not an operator")
        return value

    def eigenvalue(self, name: str) -> Matrix | RatFunc:
        value = self.get(name)
        if not isinstance(value, (Matrix, RatFunc)):
            raise DSLTypeError(f"'{name}' is a {kind_of(value)}, not a scalar or matrix")
        return value

    def optional(self, name: str) -> Optional[Value]:
        return self.bindings[name].value if name in self.bindings else None


def _raise_first(issues: List[ValidationIssue]) -> None:
    issue = issues[0]
    if issue.code == "undefined_name":
        name = getattr(issue.node, "name", "?")
        if "modulus" in issue.message:
            raise DSLError(issue.message, issue.lineno, issue.column)
        raise UndefinedNameError(name, issue.lineno, issue.column)
    if issue.code == "ragged_matrix":
        raise DSLDimensionError(issue.message, issue.lineno, issue.column)
    raise DSLError(issue.message, issue.lineno, issue.column)


def parse(text: str) -> ProblemFile:
    """Parse, validate and evaluate a problem file."""
    ast = parse_dsl(text)
    result = validate_ast(ast)
    if not result.ok():
        _raise_first(result.errors)
    for issue in result.warnings:
        logger.warning("%s (line %s)", issue.message, issue.lineno)

    decl = next((s for s in ast.statements if isinstance(s, ASTField)), None)
    ctx = field_context(decl)
    evaluator = Evaluator(ctx)
    size = default_size(ast)
    problem = ProblemFile(ctx, source=text, warnings=list(result.warnings))
    for stmt in ast.statements:
        if isinstance(stmt, ASTBinding):
            value = evaluator.binding(stmt, size)
            problem.bindings[stmt.name] = Binding(stmt.kind, stmt.name, value, stmt.lineno)
    metrics.counter("dsl.parses").inc()
    logger.debug("Parsed problem with %d bindings over %r", len(problem.bindings), ctx)
    return problem
