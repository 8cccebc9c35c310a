# bispectral/__init__.py
"""Exact symbolic workbench for matrix-valued bispectral problems."""

from bispectral.algebra import QQ_CONTEXT, AlgebraContext, Matrix, RatFunc
from bispectral.config import WorkbenchConfig
from bispectral.dsl import parse, render_problem
from bispectral.kernel import ExpKernel
from bispectral.operators import DiffOp

__version__ = "0.1.0"

__all__ = [
    "QQ_CONTEXT",
    "AlgebraContext",
    "DiffOp",
    "ExpKernel",
    "Matrix",
    "RatFunc",
    "WorkbenchConfig",
    "parse",
    "render_problem",
]
