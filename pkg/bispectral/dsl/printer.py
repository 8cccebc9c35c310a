# bispectral/dsl/printer.py
"""Canonical DSL text for a ProblemFile; parse(render_problem(p)) == p."""

from __future__ import annotations
from typing import List

from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.dsl.problem import Binding, ProblemFile
from bispectral.kernel.expkernel import ExpKernel
from bispectral.operators.diffop import DiffOp


def render_scalar(f: RatFunc) -> str:
    return f"({f.to_text()})"


def render_matrix(m: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(e.to_text() for e in row) + "]" for row in m.entries) + "]"


def render_operator(op: DiffOp) -> str:
    d = "Dx" if op.var == "x" else "Dz"
    coeffs = op.coeffs or {0: Matrix.zeros(op.ctx, op.size)}
    parts: List[str] = []
    for i in sorted(coeffs, reverse=True):
        m = render_matrix(coeffs[i])
        parts.append(f"{m}*{d}^{i}" if op.side == "left" else f"{d}^{i}*{m}")
    return " + ".join(parts)


def render_value(value) -> str:
    if isinstance(value, RatFunc):
        return render_scalar(value)
    if isinstance(value, Matrix):
        return render_matrix(value)
    if isinstance(value, DiffOp):
        return render_operator(value)
    if isinstance(value, ExpKernel):
        return f"expxz*{render_matrix(value.m)}"
    raise TypeError(f"cannot render {type(value).__name__}")


def render_binding(b: Binding) -> str:
    return f"{b.kind} {b.name} = {render_value(b.value)};"


def render_problem(problem: ProblemFile) -> str:
    ctx = problem.ctx
    if ctx.is_extension:
        lines = [f"field Q[{ctx.generator_name}]/({ctx.modulus_text()});"]
    else:
        lines = ["field Q;"]
    lines.extend(render_binding(b) for b in problem)
    return "\n".join(lines) + "\n"
