# bispectral/algebra/matrix.py
from __future__ import annotations
from typing import Any, Callable, Iterable, List, Sequence, Tuple

from bispectral.algebra.context import AlgebraContext
from bispectral.algebra.ratfunc import RatFunc
from bispectral.errors import ContextMismatchError, DimensionMismatchError

Entries = Tuple[Tuple[RatFunc, ...], ...]


class Matrix:
    """Immutable rows x cols matrix of RatFunc entries sharing one context."""

    __slots__ = ("ctx", "rows", "cols", "entries")

    def __init__(self, ctx: AlgebraContext, entries: Sequence[Sequence[Any]]):
        rows = [tuple(_entry(ctx, e) for e in row) for row in entries]
        if not rows or not rows[0]:
            raise DimensionMismatchError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatchError("ragged matrix rows")
        self.ctx = ctx
        self.rows = len(rows)
        self.cols = width
        self.entries: Entries = tuple(rows)

    # ------------------------------
    # Constructors
    # ------------------------------
    @classmethod
    def zeros(cls, ctx: AlgebraContext, rows: int, cols: int | None = None) -> "Matrix":
        z = RatFunc.zero(ctx)
        return cls(ctx, [[z] * (rows if cols is None else cols) for _ in range(rows)])

    @classmethod
    def identity(cls, ctx: AlgebraContext, n: int) -> "Matrix":
        return cls.scalar(ctx, n, RatFunc.one(ctx))

    @classmethod
    def scalar(cls, ctx: AlgebraContext, n: int, value: Any) -> "Matrix":
        v = _entry(ctx, value)
        z = RatFunc.zero(ctx)
        return cls(ctx, [[v if r == c else z for c in range(n)] for r in range(n)])

    @classmethod
    def unit(cls, ctx: AlgebraContext, n: int, row: int, col: int, value: Any = 1) -> "Matrix":
        """value * E_{row,col}."""
        v = _entry(ctx, value)
        z = RatFunc.zero(ctx)
        return cls(ctx, [[v if (r, c) == (row, col) else z for c in range(n)] for r in range(n)])

    # ------------------------------
    # Shape / access
    # ------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, rc: Tuple[int, int]) -> RatFunc:
        r, c = rc
        return self.entries[r][c]

    def row(self, r: int) -> Tuple[RatFunc, ...]:
        return self.entries[r]

    def column(self, c: int) -> Tuple[RatFunc, ...]:
        return tuple(row[c] for row in self.entries)

    def cells(self) -> Iterable[Tuple[int, int, RatFunc]]:
        for r, row in enumerate(self.entries):
            for c, e in enumerate(row):
                yield r, c, e

    def map(self, fn: Callable[[RatFunc], RatFunc]) -> "Matrix":
        return Matrix(self.ctx, [[fn(e) for e in row] for row in self.entries])

    # ------------------------------
    # Predicates
    # ------------------------------
    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def depends_on(self, var: str) -> bool:
        return any(e.depends_on(var) for row in self.entries for e in row)

    # ------------------------------
    # Arithmetic
    # ------------------------------
    def _check(self, other: "Matrix") -> None:
        if other.ctx is not self.ctx:
            raise ContextMismatchError("matrices belong to different contexts")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape} matrices")
        return Matrix(self.ctx, [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return self.map(lambda e: -e)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __mul__(self, other: Any) -> "Matrix":
        if not isinstance(other, Matrix):
            return self.scale(other)
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        out: List[List[RatFunc]] = []
        for r in range(self.rows):
            line = []
            for c in range(other.cols):
                acc = RatFunc.zero(self.ctx)
                for k in range(self.cols):
                    a = self.entries[r][k]
                    b = other.entries[k][c]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                line.append(acc)
            out.append(line)
        return Matrix(self.ctx, out)

    def __rmul__(self, other: Any) -> "Matrix":
        return self.scale(other)

    def scale(self, factor: Any) -> "Matrix":
        f = _entry(self.ctx, factor)
        if f.is_zero():
            return Matrix.zeros(self.ctx, self.rows, self.cols)
        return self.map(lambda e: e * f)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatchError("only square matrices have powers")
        if k < 0:
            raise ValueError("negative matrix powers are not supported")
        out = Matrix.identity(self.ctx, self.rows)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self, var: str) -> "Matrix":
        return self.map(lambda e: e.derivative(var))

    # ------------------------------
    # Comparison / rendering
    # ------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return other.ctx is self.ctx and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def to_text(self) -> str:
        return "[" + ", ".join("[" + ", ".join(e.to_text() for e in row) + "]" for row in self.entries) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.to_text()})"


def _entry(ctx: AlgebraContext, value: Any) -> RatFunc:
    if isinstance(value, RatFunc):
        if value.ctx is not ctx:
            raise ContextMismatchError("matrix entry belongs to a different context")
        return value
    return RatFunc.const(ctx, value)


def mat_arith(a: Matrix, b: Any, kind: str) -> Matrix:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "scale":
        return a.scale(b)
    raise ValueError(f"unknown matrix operation '{kind}'")
