# bispectral/solver/linear.py
"""
Exact sparse linear algebra over the context field.

Systems are kept as {row: {col: value}} with no stored zeros and are reduced
with sympy's DomainMatrix (sparse representation, exact fraction-free
pivoting over QQ or the algebraic extension). Nullspace bases are the
canonical ones read off the reduced row echelon form: one vector per free
column, with a 1 in that column.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple
import logging

from sympy.polys.matrices import DomainMatrix

from bispectral.algebra.context import Scalar

logger = logging.getLogger(__name__)

SparseRows = Dict[int, Dict[int, Scalar]]


@dataclass
class LinearSystem:
    domain: Any
    unknowns: List[Hashable]
    equations: List[Hashable] = field(default_factory=list)
    rows: SparseRows = field(default_factory=dict)
    rhs: Dict[int, Scalar] = field(default_factory=dict)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.equations), len(self.unknowns)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    @classmethod
    def from_columns(
        cls,
        domain: Any,
        unknowns: Sequence[Hashable],
        columns: Sequence[Dict[Hashable, Scalar]],
        rhs: Optional[Dict[Hashable, Scalar]] = None,
    ) -> "LinearSystem":
        """Assemble from per-unknown columns keyed by equation label; labels are sorted."""
        labels = set()
        for col in columns:
            labels.update(col)
        if rhs:
            labels.update(rhs)
        equations = sorted(labels)
        index = {label: i for i, label in enumerate(equations)}
        rows: SparseRows = {}
        for j, col in enumerate(columns):
            for label, value in col.items():
                if value:
                    rows.setdefault(index[label], {})[j] = value
        rhs_rows = {index[label]: v for label, v in (rhs or {}).items() if v}
        return cls(domain, list(unknowns), equations, rows, rhs_rows)


# ------------------------------
# Reduction
# ------------------------------

def _to_sparse_rows(dm: DomainMatrix) -> SparseRows:
    return {i: dict(row) for i, row in dm.to_sparse().rep.items()}


def reduced_echelon(rows: SparseRows, shape: Tuple[int, int], domain: Any) -> Tuple[SparseRows, Tuple[int, ...]]:
    """RREF of a sparse matrix; returns (rows, pivot columns)."""
    nrows, ncols = shape
    if nrows == 0 or ncols == 0 or not any(rows.values()):
        return {}, ()
    dm = DomainMatrix({i: r for i, r in rows.items() if r}, shape, domain)
    rref, pivots = dm.rref()
    return _to_sparse_rows(rref), tuple(pivots)


def nullspace(system: LinearSystem) -> List[List[Scalar]]:
    K = system.domain
    nrows, ncols = system.shape
    rref, pivots = reduced_echelon(system.rows, (nrows, ncols), K)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [K.zero] * ncols
        vec[free] = K.one
        for r, p in enumerate(pivots):
            v = rref.get(r, {}).get(free)
            if v:
                vec[p] = -v
        basis.append(vec)
    logger.debug("nullspace: %d x %d system, rank %d, dim %d", nrows, ncols, len(pivots), len(basis))
    return basis


def solve_particular(system: LinearSystem) -> Optional[List[Scalar]]:
    """
    Echelon-canonical solution of A u = rhs (free unknowns set to 0), or None
    when the system is inconsistent.
    """
    K = system.domain
    nrows, ncols = system.shape
    augmented = {i: dict(r) for i, r in system.rows.items()}
    for i, v in system.rhs.items():
        augmented.setdefault(i, {})[ncols] = v
    rref, pivots = reduced_echelon(augmented, (nrows, ncols + 1), K)
    if ncols in pivots:
        return None
    solution = [K.zero] * ncols
    for r, p in enumerate(pivots):
        v = rref.get(r, {}).get(ncols)
        if v:
            solution[p] = v
    return solution


def rank(vectors: Sequence[Sequence[Scalar]], width: int, domain: Any) -> int:
    if not vectors:
        return 0
    rows = {i: {j: v for j, v in enumerate(vec) if v} for i, vec in enumerate(vectors)}
    _, pivots = reduced_echelon(rows, (len(vectors), width), domain)
    return len(pivots)


def row_space_basis(vectors: Sequence[Sequence[Scalar]], width: int, domain: Any) -> List[List[Scalar]]:
    """Nonzero rows of the RREF of `vectors`: a canonical basis of their span."""
    if not vectors:
        return []
    rows = {i: {j: v for j, v in enumerate(vec) if v} for i, vec in enumerate(vectors)}
    rref, pivots = reduced_echelon(rows, (len(vectors), width), domain)
    out = []
    for r in range(len(pivots)):
        vec = [domain.zero] * width
        for j, v in rref.get(r, {}).items():
            vec[j] = v
        out.append(vec)
    return out


class SpanReducer:
    """Membership tests against a fixed span via its reduced echelon basis."""

    def __init__(self, vectors: Sequence[Sequence[Scalar]], width: int, domain: Any):
        self.domain = domain
        self.width = width
        self.basis = row_space_basis(vectors, width, domain)
        self.pivots = [next(j for j, v in enumerate(vec) if v) for vec in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def remainder(self, vec: Sequence[Scalar]) -> List[Scalar]:
        out = list(vec)
        for p, b in zip(self.pivots, self.basis):
            c = out[p]
            if c:
                out = [o - c * bv for o, bv in zip(out, b)]
        return out

    def contains(self, vec: Sequence[Scalar]) -> bool:
        return not any(self.remainder(vec))
