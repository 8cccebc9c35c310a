# bispectral/dsl/ir_validator.py
"""
Static checks on the AST produced by ir_dsl.parse_dsl, run before any
evaluation. Errors stop the parse; warnings are carried on the ProblemFile.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set

from bispectral.dsl.ir_dsl import ASTBinary, ASTBinding, ASTField, ASTMatrix, ASTName, ASTNeg, ASTNode, ASTPower, ASTRoot

RESERVED = frozenset({"x", "z", "Dx", "Dz", "expxz"})

# names the command line looks up; never reported as unused
CONVENTIONAL = frozenset({"Psi", "L", "B", "Theta", "F", "p", "T"})


@dataclass
class ValidationIssue:
    kind: str  # "error" | "warning"
    code: str  # undefined_name | duplicate | reserved | field_order | ragged_matrix | unused
    message: str
    lineno: Optional[int] = None
    column: Optional[int] = None
    node: Optional[ASTNode] = None


@dataclass
class ValidationResult:
    errors: List[ValidationIssue] = field(default_factory=list)
    warnings: List[ValidationIssue] = field(default_factory=list)

    def ok(self) -> bool:
        return len(self.errors) == 0


def _names(node, out: List[ASTName]) -> None:
    if isinstance(node, ASTName):
        out.append(node)
    elif isinstance(node, ASTBinary):
        _names(node.left, out)
        _names(node.right, out)
    elif isinstance(node, ASTNeg):
        _names(node.operand, out)
    elif isinstance(node, ASTPower):
        _names(node.base, out)
    elif isinstance(node, ASTMatrix):
        for row in node.rows:
            for cell in row:
                _names(cell, out)


def _matrices(node, out: List[ASTMatrix]) -> None:
    if isinstance(node, ASTMatrix):
        out.append(node)
        for row in node.rows:
            for cell in row:
                _matrices(cell, out)
    elif isinstance(node, ASTBinary):
        _matrices(node.left, out)
        _matrices(node.right, out)
    elif isinstance(node, ASTNeg):
        _matrices(node.operand, out)
    elif isinstance(node, ASTPower):
        _matrices(node.base, out)


def validate_ast(ast: ASTRoot) -> ValidationResult:
    """
    Validate AST for:
    - field declaration missing from the top, or declared twice
    - undefined names (bindings must precede their use)
    - duplicate bindings and bindings shadowing reserved names
    - ragged matrix literals
    - bindings that are never referenced (warning)
    """
    vr = ValidationResult()
    reserved: Set[str] = set(RESERVED)
    defined: Dict[str, ASTBinding] = {}
    used: Set[str] = set()

    for index, stmt in enumerate(ast.statements):
        if isinstance(stmt, ASTField):
            if index != 0:
                vr.errors.append(ValidationIssue("error", "field_order", "the field declaration must come first",
                                                 stmt.lineno, stmt.column, stmt))
                continue
            if stmt.generator is not None:
                if stmt.generator in RESERVED:
                    vr.errors.append(ValidationIssue("error", "reserved", f"'{stmt.generator}' cannot name the extension generator",
                                                     stmt.lineno, stmt.column, stmt))
                reserved.add(stmt.generator)
                for ref in _collect_names(stmt.modulus):
                    if ref.name != stmt.generator:
                        vr.errors.append(ValidationIssue("error", "undefined_name",
                                                         f"modulus may only use the generator '{stmt.generator}', found '{ref.name}'",
                                                         ref.lineno, ref.column, ref))
            continue

        if not isinstance(stmt, ASTBinding):
            continue
        for ref in _collect_names(stmt.value):
            if ref.name in reserved:
                continue
            if ref.name not in defined:
                vr.errors.append(ValidationIssue("error", "undefined_name", f"undefined name '{ref.name}'",
                                                 ref.lineno, ref.column, ref))
            else:
                used.add(ref.name)
        matrices: List[ASTMatrix] = []
        _matrices(stmt.value, matrices)
        for m in matrices:
            widths = {len(row) for row in m.rows}
            if len(widths) > 1:
                vr.errors.append(ValidationIssue("error", "ragged_matrix", "matrix rows have different lengths",
                                                 m.lineno, m.column, m))
        if stmt.name in reserved:
            vr.errors.append(ValidationIssue("error", "reserved", f"'{stmt.name}' is reserved",
                                             stmt.lineno, stmt.column, stmt))
        elif stmt.name in defined:
            first = defined[stmt.name]
            vr.errors.append(ValidationIssue("error", "duplicate",
                                             f"'{stmt.name}' is already bound on line {first.lineno}",
                                             stmt.lineno, stmt.column, stmt))
        else:
            defined[stmt.name] = stmt

    for name, stmt in defined.items():
        if name not in used and name not in CONVENTIONAL:
            vr.warnings.append(ValidationIssue("warning", "unused", f"'{name}' is never used",
                                               stmt.lineno, stmt.column, stmt))
    return vr


def _collect_names(node) -> List[ASTName]:
    out: List[ASTName] = []
    _names(node, out)
    return out
