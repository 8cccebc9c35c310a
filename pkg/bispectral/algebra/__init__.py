# bispectral/algebra/__init__.py
from bispectral.algebra.context import QQ_CONTEXT, AlgebraContext, Scalar, extension_inverse
from bispectral.algebra.bipoly import BiPoly, poly_arith, poly_derivative, poly_gcd, poly_lcm
from bispectral.algebra.ratfunc import RatFunc, ratfunc_arith, ratfunc_derivative
from bispectral.algebra.matrix import Matrix, mat_arith

__all__ = [
    "QQ_CONTEXT",
    "AlgebraContext",
    "Scalar",
    "extension_inverse",
    "BiPoly",
    "poly_arith",
    "poly_derivative",
    "poly_gcd",
    "poly_lcm",
    "RatFunc",
    "ratfunc_arith",
    "ratfunc_derivative",
    "Matrix",
    "mat_arith",
]
