# bispectral/operators/__init__.py
from bispectral.operators.diffop import DiffOp, as_operator, compose, compose_left, compose_right
from bispectral.operators.adjoint import ad_power, commutator, minimal_ad_order

__all__ = [
    "DiffOp",
    "as_operator",
    "compose",
    "compose_left",
    "compose_right",
    "ad_power",
    "commutator",
    "minimal_ad_order",
]
