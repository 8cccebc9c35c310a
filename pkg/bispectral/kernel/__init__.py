# bispectral/kernel/__init__.py
from bispectral.kernel.expkernel import (
    ExpKernel,
    apply_left,
    apply_right,
    dx,
    dz,
    mult_left,
    mult_right,
    x_derivatives,
    z_derivatives,
)
from bispectral.kernel.verification import Residual, left_residual, right_residual, verify_left, verify_right

__all__ = [
    "ExpKernel",
    "apply_left",
    "apply_right",
    "dx",
    "dz",
    "mult_left",
    "mult_right",
    "x_derivatives",
    "z_derivatives",
    "Residual",
    "left_residual",
    "right_residual",
    "verify_left",
    "verify_right",
]
