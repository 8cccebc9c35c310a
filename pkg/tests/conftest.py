# tests/conftest.py
from __future__ import annotations
from fractions import Fraction
from pathlib import Path
import random

import pytest

from bispectral.algebra.context import QQ_CONTEXT, AlgebraContext
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.config import WorkbenchConfig
from bispectral.fixtures import load_example
from bispectral.kernel.expkernel import ExpKernel
from bispectral.observability.metrics import metrics
from bispectral.operators.diffop import DiffOp

FIXTURES_DIR = Path(__file__).resolve().parents[1] / "fixtures"

CASES = 200


# ------------------------------
# Random exact objects
# ------------------------------

def rand_scalar(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 4))


def rand_poly(ctx: AlgebraContext, rng: random.Random, variables=("x", "z"), degree: int = 2) -> RatFunc:
    x, z = RatFunc.gen(ctx, "x"), RatFunc.gen(ctx, "z")
    acc = RatFunc.zero(ctx)
    for _ in range(rng.randint(1, 3)):
        term = RatFunc.const(ctx, rand_scalar(rng))
        if "x" in variables:
            term = term * x ** rng.randint(0, degree)
        if "z" in variables:
            term = term * z ** rng.randint(0, degree)
        acc = acc + term
    return acc


def rand_ratfunc(ctx: AlgebraContext, rng: random.Random, variables=("x", "z"), nonzero: bool = False) -> RatFunc:
    """Polynomial over a small monomial-times-linear denominator, in the given variables."""
    num = rand_poly(ctx, rng, variables)
    while nonzero and num.is_zero():
        num = rand_poly(ctx, rng, variables)
    den = RatFunc.one(ctx)
    for v in variables:
        g = RatFunc.gen(ctx, v)
        den = den * g ** rng.randint(0, 2)
        if rng.random() < 0.3:
            den = den * (g - RatFunc.const(ctx, rng.randint(1, 3)))
    return num / den


def rand_matrix(ctx: AlgebraContext, rng: random.Random, n: int, variables=("x", "z")) -> Matrix:
    return Matrix(ctx, [[rand_ratfunc(ctx, rng, variables) for _ in range(n)] for _ in range(n)])


def rand_op(ctx: AlgebraContext, rng: random.Random, n: int, var: str, max_order: int = 2) -> DiffOp:
    coeffs = {i: rand_matrix(ctx, rng, n, (var,)) for i in range(rng.randint(0, max_order) + 1)}
    return DiffOp(ctx, var, n, coeffs)


def rand_kernel(ctx: AlgebraContext, rng: random.Random, n: int) -> ExpKernel:
    return ExpKernel(rand_matrix(ctx, rng, n))


# ------------------------------
# Fixtures
# ------------------------------

@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def qq() -> AlgebraContext:
    return QQ_CONTEXT


@pytest.fixture
def eisenstein() -> AlgebraContext:
    """QQ[a]/(a^2 - a + 1): holds the two non-real cube roots of -1."""
    return AlgebraContext.extension([1, -1, 1], "a")


@pytest.fixture
def inline_config() -> WorkbenchConfig:
    return WorkbenchConfig(thread_workers=1)


@pytest.fixture(scope="session")
def ex1():
    return load_example(1)


@pytest.fixture(scope="session")
def ex2():
    return load_example(2)


@pytest.fixture(scope="session")
def ex3():
    return load_example(3)


@pytest.fixture(scope="session")
def scalar_problem():
    return load_example("scalar")


@pytest.fixture(autouse=True)
def _fresh_metrics():
    metrics.reset()
    yield
