# bispectral/operators/adjoint.py
from __future__ import annotations
from typing import Optional
import logging

from bispectral.algebra.matrix import Matrix
from bispectral.operators.diffop import DiffOp, compose

logger = logging.getLogger(__name__)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    """[A, B] = AB - BA in the ring of A and B."""
    return compose(a, b) - compose(b, a)


def ad_power(op: DiffOp, target: DiffOp | Matrix, k: int) -> DiffOp:
    """(ad op)^k (target)."""
    if k < 0:
        raise ValueError("ad power must be nonnegative")
    current = _as_target(op, target)
    for _ in range(k):
        current = commutator(op, current)
    return current


def minimal_ad_order(op: DiffOp, target: DiffOp | Matrix, m_max: int) -> Optional[int]:
    """
    Least m with (ad op)^(m+1)(target) = 0, searching m = 0..m_max.
    Returns None when every power up to m_max + 1 is nonzero.
    """
    current = _as_target(op, target)
    for m in range(m_max + 1):
        current = commutator(op, current)
        logger.debug("ad power %d has order %d", m + 1, current.order)
        if current.is_zero():
            return m
    return None


def _as_target(op: DiffOp, target: DiffOp | Matrix) -> DiffOp:
    if isinstance(target, Matrix):
        return DiffOp.multiplication(target, op.var)
    return target
