# bispectral/dsl/ir_dsl.py
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, List, Optional
import os

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from bispectral.errors import DSLError, DSLSyntaxError


# --- 1. AST Definitions ---
@dataclass
class ASTNode:
    lineno: Optional[int] = None
    column: Optional[int] = None


@dataclass
class ASTRoot(ASTNode):
    statements: List[ASTNode] = field(default_factory=list)


@dataclass
class ASTField(ASTNode):
    generator: Optional[str] = None
    modulus: Any = None


@dataclass
class ASTBinding(ASTNode):
    kind: str = "let"  # "let" | "op" | "fun"
    name: str = ""
    value: Any = None


@dataclass
class ASTNumber(ASTNode):
    value: int = 0


@dataclass
class ASTName(ASTNode):
    name: str = ""


@dataclass
class ASTBinary(ASTNode):
    op: str = "+"
    left: Any = None
    right: Any = None


@dataclass
class ASTNeg(ASTNode):
    operand: Any = None


@dataclass
class ASTPower(ASTNode):
    base: Any = None
    exponent: int = 1


@dataclass
class ASTMatrix(ASTNode):
    rows: List[List[Any]] = field(default_factory=list)


def _pos(meta) -> dict:
    if getattr(meta, "empty", True):
        return {}
    return {"lineno": meta.line, "column": meta.column}


# --- 2. Transformer ---
class DSLTransformer(Transformer):
    def start(self, items):
        return ASTRoot(statements=[s for s in items if isinstance(s, ASTNode)])

    @v_args(meta=True, inline=True)
    def field_rational(self, meta):
        return ASTField(**_pos(meta))

    @v_args(meta=True, inline=True)
    def field_extension(self, meta, name, modulus):
        return ASTField(generator=str(name), modulus=modulus, **_pos(meta))

    @v_args(meta=True, inline=True)
    def let_binding(self, meta, name, value):
        return ASTBinding(kind="let", name=str(name), value=value, **_pos(meta))

    @v_args(meta=True, inline=True)
    def op_binding(self, meta, name, value):
        return ASTBinding(kind="op", name=str(name), value=value, **_pos(meta))

    @v_args(meta=True, inline=True)
    def fun_binding(self, meta, name, value):
        return ASTBinding(kind="fun", name=str(name), value=value, **_pos(meta))

    def _binary(self, meta, op, left, right):
        return ASTBinary(op=op, left=left, right=right, **_pos(meta))

    @v_args(meta=True, inline=True)
    def add(self, meta, left, right):
        return self._binary(meta, "+", left, right)

    @v_args(meta=True, inline=True)
    def sub(self, meta, left, right):
        return self._binary(meta, "-", left, right)

    @v_args(meta=True, inline=True)
    def mul(self, meta, left, right):
        return self._binary(meta, "*", left, right)

    @v_args(meta=True, inline=True)
    def div(self, meta, left, right):
        return self._binary(meta, "/", left, right)

    @v_args(meta=True, inline=True)
    def neg(self, meta, operand):
        return ASTNeg(operand=operand, **_pos(meta))

    @v_args(meta=True, inline=True)
    def pow(self, meta, base, exponent):
        return ASTPower(base=base, exponent=exponent, **_pos(meta))

    @v_args(inline=True)
    def exponent(self, token):
        return int(token)

    @v_args(inline=True)
    def number(self, token):
        return ASTNumber(value=int(token), lineno=token.line, column=token.column)

    @v_args(inline=True)
    def name(self, token):
        return ASTName(name=str(token), lineno=token.line, column=token.column)

    @v_args(meta=True)
    def matrix(self, meta, rows):
        return ASTMatrix(rows=list(rows), **_pos(meta))

    def row(self, items):
        return list(items)


# --- 3. Parser Init ---
_grammar_path = os.path.join(os.path.dirname(__file__), "grammar.lark")
with open(_grammar_path, "r", encoding="utf-8") as f:
    _grammar = f.read()

PARSER = Lark(
    _grammar,
    parser="lalr",
    lexer="contextual",
    propagate_positions=True,
    start=["start", "sum"],
)


def _syntax_error(exc: UnexpectedInput) -> DSLSyntaxError:
    line = getattr(exc, "line", None)
    column = getattr(exc, "column", None)
    if line is not None and line < 0:
        line = column = None
    if isinstance(exc, UnexpectedToken):
        token = exc.token
        shown = "end of input" if token.type == "$END" else f"'{token}'"
        message = f"syntax error: unexpected {shown}"
    elif isinstance(exc, UnexpectedCharacters):
        message = f"syntax error: unexpected character '{exc.char}'"
    elif isinstance(exc, UnexpectedEOF):
        message = "syntax error: unexpected end of input"
    else:
        message = "syntax error"
    return DSLSyntaxError(message, line, column)


def _parse(code: str, start: str):
    try:
        tree = PARSER.parse(code, start=start)
        return DSLTransformer().transform(tree)
    except UnexpectedInput as exc:
        raise _syntax_error(exc) from None
    except VisitError as exc:
        if isinstance(exc.orig_exc, DSLError):
            raise exc.orig_exc from None
        raise


def parse_dsl(code: str) -> ASTRoot:
    return _parse(code, "start")


def parse_expression(code: str) -> Any:
    """A single expression (pole values, moduli, denominators on the command line)."""
    return _parse(code, "sum")
