# bispectral/dsl/evaluator.py
"""
Evaluate a validated AST into exact values.

Every expression evaluates to one of four kinds:
    RatFunc    scalar rational function of (x, z)
    Matrix     matrix of rational functions
    DiffOp     differential operator (Dx -> left ring, Dz -> right ring)
    ExpKernel  exp(x z) * M, built from the `expxz` token

Products follow the order of action: `op * fun` applies a left operator,
`fun * op` applies a right operator, `op * op` composes in the operators'
ring. Scalars and square matrices are promoted to order-0 operators when
they meet an operator.
"""

from __future__ import annotations
from typing import Any, Dict, List, Optional, Tuple, Union
import logging

from bispectral.algebra.bipoly import univariate_coefficients
from bispectral.algebra.context import QQ_CONTEXT, AlgebraContext, Scalar
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.dsl.ir_dsl import (
    ASTBinary,
    ASTBinding,
    ASTField,
    ASTMatrix,
    ASTName,
    ASTNeg,
    ASTNumber,
    ASTPower,
    ASTRoot,
    parse_expression,
)
from bispectral.errors import (
    BispectralError,
    DimensionMismatchError,
    DSLDimensionError,
    DSLError,
    DSLTypeError,
    OperatorMismatchError,
    UndefinedNameError,
    ZeroDivisionInField,
)
from bispectral.kernel.expkernel import ExpKernel, apply_left, apply_right
from bispectral.operators.diffop import DiffOp, as_operator, compose

logger = logging.getLogger(__name__)

Value = Union[RatFunc, Matrix, DiffOp, ExpKernel]


def kind_of(value: Value) -> str:
    if isinstance(value, RatFunc):
        return "scalar"
    if isinstance(value, Matrix):
        return "matrix"
    if isinstance(value, DiffOp):
        return "operator"
    return "function"


# ------------------------------
# Field declaration
# ------------------------------

def field_context(decl: Optional[ASTField]) -> AlgebraContext:
    """QQ, or QQ[a]/(m) with m evaluated as a polynomial in the generator."""
    if decl is None or decl.generator is None:
        return QQ_CONTEXT
    ev = Evaluator(QQ_CONTEXT, names={decl.generator: RatFunc.gen(QQ_CONTEXT, "x")})
    return _modulus_context(ev.expression(decl.modulus), decl.generator, decl.lineno, decl.column)


def extension_context(modulus: str, generator: str = "a") -> AlgebraContext:
    """QQ[generator]/(modulus) from command-line text such as 'a^2 - a + 1'."""
    value = evaluate_expression(modulus, QQ_CONTEXT, names={generator: RatFunc.gen(QQ_CONTEXT, "x")})
    return _modulus_context(value, generator)


def _modulus_context(modulus: Value, generator: str, lineno: Optional[int] = None, column: Optional[int] = None) -> AlgebraContext:
    if not isinstance(modulus, RatFunc) or not modulus.is_polynomial() or modulus.depends_on("z"):
        raise DSLTypeError("the modulus must be a polynomial in the generator", lineno, column)
    coeffs = univariate_coefficients(modulus.num, "x")
    if not coeffs or max(coeffs) < 1:
        raise DSLTypeError("the modulus must have degree >= 1", lineno, column)
    top = max(coeffs)
    ordered = [coeffs.get(k, QQ_CONTEXT.zero) for k in range(top, -1, -1)]
    return AlgebraContext.extension(ordered, generator)


# ------------------------------
# Evaluator
# ------------------------------

class Evaluator:
    """
    Walks expressions for one problem file. `size` is the operator size used
    for `Dx`, `Dz` and `expxz`; it is fixed per binding by `binding_size`.
    """

    def __init__(self, ctx: AlgebraContext, names: Optional[Dict[str, Value]] = None, size: int = 1):
        self.ctx = ctx
        self.names: Dict[str, Value] = dict(names or {})
        self.size = size

    # ------------------------------
    # Bindings
    # ------------------------------
    def binding_size(self, expr: Any, default: int) -> int:
        """Size of the first square matrix literal, else of the first square bound value referenced."""
        literal = _first_square_literal(expr)
        if literal is not None:
            return literal
        for ref in _name_nodes(expr):
            value = self.names.get(ref.name)
            if isinstance(value, (DiffOp, ExpKernel)):
                return value.size
            if isinstance(value, Matrix) and value.is_square:
                return value.rows
        return default

    def binding(self, stmt: ASTBinding, default_size: int) -> Value:
        self.size = self.binding_size(stmt.value, default_size)
        value = self.expression(stmt.value)
        value = self._finalize(stmt, value)
        self.names[stmt.name] = value
        logger.debug("Bound %s %s (%s)", stmt.kind, stmt.name, kind_of(value))
        return value

    def _finalize(self, stmt: ASTBinding, value: Value) -> Value:
        where = (stmt.lineno, stmt.column)
        if stmt.kind == "let":
            if not isinstance(value, (RatFunc, Matrix)):
                raise DSLTypeError(f"'let {stmt.name}' needs a scalar or matrix, got {kind_of(value)}", *where)
            return value
        if stmt.kind == "fun":
            if not isinstance(value, ExpKernel):
                raise DSLTypeError(f"'fun {stmt.name}' needs an expxz * M function, got {kind_of(value)}", *where)
            return value
        if isinstance(value, DiffOp):
            return value
        if isinstance(value, ExpKernel):
            raise DSLTypeError(f"'op {stmt.name}' needs an operator, got a function", *where)
        # order-0 operator: its ring follows the variable it depends on
        in_x, in_z = value.depends_on("x"), value.depends_on("z")
        if in_x and in_z:
            raise DSLTypeError(f"'op {stmt.name}' depends on both x and z", *where)
        m = value if isinstance(value, Matrix) else Matrix.scalar(self.ctx, self.size, value)
        if not m.is_square:
            raise DSLDimensionError(f"'op {stmt.name}' needs a square matrix, got {m.shape}", *where)
        return DiffOp.multiplication(m, "z" if in_z else "x")

    # ------------------------------
    # Expressions
    # ------------------------------
    def expression(self, node: Any) -> Value:
        if isinstance(node, ASTNumber):
            return RatFunc.const(self.ctx, node.value)
        if isinstance(node, ASTName):
            return self._name(node)
        if isinstance(node, ASTMatrix):
            return self._matrix(node)
        try:
            if isinstance(node, ASTNeg):
                return self._neg(self.expression(node.operand))
            if isinstance(node, ASTPower):
                return self._power(self.expression(node.base), node.exponent)
            if isinstance(node, ASTBinary):
                left = self.expression(node.left)
                right = self.expression(node.right)
                return self._binary(node.op, left, right)
        except DSLError as exc:
            if exc.line is None:
                raise type(exc)(str(exc), node.lineno, node.column) from None
            raise
        except DimensionMismatchError as exc:
            raise DSLDimensionError(str(exc), node.lineno, node.column) from exc
        except OperatorMismatchError as exc:
            raise DSLTypeError(str(exc), node.lineno, node.column) from exc
        except ZeroDivisionInField as exc:
            raise DSLError(f"division by zero: {exc}", node.lineno, node.column) from exc
        except BispectralError as exc:
            raise DSLTypeError(str(exc), node.lineno, node.column) from exc
        raise DSLTypeError(f"unsupported expression node {type(node).__name__}", getattr(node, "lineno", None))

    def _name(self, node: ASTName) -> Value:
        ctx = self.ctx
        if node.name in self.names:
            return self.names[node.name]
        if node.name in ("x", "z"):
            return RatFunc.gen(ctx, node.name)
        if node.name == "Dx":
            return DiffOp.derivation(ctx, self.size, "x")
        if node.name == "Dz":
            return DiffOp.derivation(ctx, self.size, "z")
        if node.name == "expxz":
            return ExpKernel(Matrix.identity(ctx, self.size))
        if ctx.is_extension and node.name == ctx.generator_name:
            return RatFunc.const(ctx, ctx.generator())
        raise UndefinedNameError(node.name, node.lineno, node.column)

    def _matrix(self, node: ASTMatrix) -> Matrix:
        rows: List[List[RatFunc]] = []
        for row in node.rows:
            line = []
            for cell in row:
                value = self.expression(cell)
                if not isinstance(value, RatFunc):
                    raise DSLTypeError(f"matrix entries must be scalars, got {kind_of(value)}", node.lineno, node.column)
                line.append(value)
            rows.append(line)
        try:
            return Matrix(self.ctx, rows)
        except DimensionMismatchError as exc:
            raise DSLDimensionError(str(exc), node.lineno, node.column) from exc

    # ------------------------------
    # Combination rules
    # ------------------------------
    def _neg(self, v: Value) -> Value:
        if isinstance(v, ExpKernel):
            return ExpKernel(-v.m)
        return -v

    def _power(self, v: Value, k: int) -> Value:
        if isinstance(v, RatFunc):
            return v ** k
        if k < 0:
            raise DSLTypeError(f"negative powers are defined for scalars only, not a {kind_of(v)}")
        if isinstance(v, Matrix):
            return v ** k
        if isinstance(v, DiffOp):
            out = DiffOp.identity(self.ctx, v.size, v.var)
            for _ in range(k):
                out = compose(out, v)
            return out
        raise DSLTypeError("functions cannot be raised to a power")

    def _binary(self, op: str, a: Value, b: Value) -> Value:
        if op in "+-":
            return self._additive(op, a, b)
        if op == "*":
            return self._product(a, b)
        return self._quotient(a, b)

    def _additive(self, op: str, a: Value, b: Value) -> Value:
        if isinstance(a, ExpKernel) or isinstance(b, ExpKernel):
            if not (isinstance(a, ExpKernel) and isinstance(b, ExpKernel)):
                raise DSLTypeError(f"cannot add a {kind_of(a)} and a {kind_of(b)}")
            return ExpKernel(a.m + b.m if op == "+" else a.m - b.m)
        if isinstance(a, DiffOp) or isinstance(b, DiffOp):
            like = a if isinstance(a, DiffOp) else b
            a, b = as_operator(self._square(a, like.size), like), as_operator(self._square(b, like.size), like)
        elif isinstance(a, Matrix) and isinstance(b, RatFunc):
            b = self._square(b, a.rows, a)
        elif isinstance(a, RatFunc) and isinstance(b, Matrix):
            a = self._square(a, b.rows, b)
        return a + b if op == "+" else a - b

    def _square(self, v: Value, n: int, like: Optional[Matrix] = None) -> Value:
        """Scalars become n x n scalar matrices."""
        if isinstance(v, RatFunc):
            if like is not None and not like.is_square:
                raise DSLDimensionError(f"cannot add a scalar to a {like.shape} matrix")
            return Matrix.scalar(self.ctx, n, v)
        return v

    def _product(self, a: Value, b: Value) -> Value:
        if isinstance(a, ExpKernel) and isinstance(b, ExpKernel):
            raise DSLTypeError("cannot multiply two functions")
        if isinstance(b, ExpKernel):
            if isinstance(a, DiffOp):
                if a.side != "left":
                    raise DSLTypeError("a Dz operator acts on functions from the right: write fun * op")
                return apply_left(a, b)
            return ExpKernel(self._factor(a, b.size) * b.m)
        if isinstance(a, ExpKernel):
            if isinstance(b, DiffOp):
                if b.side != "right":
                    raise DSLTypeError("a Dx operator acts on functions from the left: write op * fun")
                return apply_right(a, b)
            return ExpKernel(a.m * self._factor(b, a.size))
        if isinstance(a, DiffOp) or isinstance(b, DiffOp):
            like = a if isinstance(a, DiffOp) else b
            a = as_operator(self._square(a, like.size), like)
            b = as_operator(self._square(b, like.size), like)
            return compose(a, b)
        if isinstance(a, RatFunc) and isinstance(b, Matrix):
            return b.scale(a)
        return a * b

    def _factor(self, v: Value, n: int) -> Matrix:
        if isinstance(v, RatFunc):
            return Matrix.scalar(self.ctx, n, v)
        return v

    def _quotient(self, a: Value, b: Value) -> Value:
        if not isinstance(b, RatFunc):
            raise DSLTypeError(f"can only divide by a scalar, not a {kind_of(b)}")
        if isinstance(a, RatFunc):
            return a / b
        if isinstance(a, Matrix):
            return a.scale(b.inverse())
        if isinstance(a, ExpKernel):
            return ExpKernel(a.m.scale(b.inverse()))
        if not b.is_constant():
            raise DSLTypeError("operators can only be divided by constants")
        return a.scale(b.inverse())


# ------------------------------
# Helpers
# ------------------------------

def _first_square_literal(node: Any) -> Optional[int]:
    if isinstance(node, ASTMatrix):
        if len(node.rows) == len(node.rows[0]) and all(len(r) == len(node.rows) for r in node.rows):
            return len(node.rows)
        return None
    for child in _children(node):
        found = _first_square_literal(child)
        if found is not None:
            return found
    return None


def _children(node: Any) -> Tuple[Any, ...]:
    if isinstance(node, ASTBinary):
        return node.left, node.right
    if isinstance(node, ASTNeg):
        return (node.operand,)
    if isinstance(node, ASTPower):
        return (node.base,)
    return ()


def _name_nodes(node: Any) -> List[ASTName]:
    if isinstance(node, ASTName):
        return [node]
    out: List[ASTName] = []
    for child in _children(node):
        out.extend(_name_nodes(child))
    return out


def default_size(ast: ASTRoot) -> int:
    """Operator size for bindings that mention no sized value: first square literal in the file, else 1."""
    for stmt in ast.statements:
        if isinstance(stmt, ASTBinding):
            found = _first_square_literal(stmt.value)
            if found is not None:
                return found
    return 1


def evaluate_expression(text: str, ctx: AlgebraContext = QQ_CONTEXT, names: Optional[Dict[str, Value]] = None, size: int = 1) -> Value:
    """Evaluate one expression outside a problem file (command-line arguments)."""
    return Evaluator(ctx, names, size).expression(parse_expression(text))


def evaluate_scalar(text: str, ctx: AlgebraContext = QQ_CONTEXT) -> Scalar:
    value = evaluate_expression(text, ctx)
    if not isinstance(value, RatFunc) or not value.is_constant():
        raise DSLTypeError(f"'{text}' is not a constant")
    return value.constant_value()
