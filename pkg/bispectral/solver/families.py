# bispectral/solver/families.py
"""
Conjectured eigenvalue algebras, and exact comparison of spans.

A family is a set of free parameters and, for every degree up to its
coupling depth, a template matrix whose entries are linear forms in those
parameters; above the coupling depth every entry is free. The basis at
truncation N is the family intersected with matrices of degree <= N:
parameter combinations whose contribution above degree N vanishes.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging
import re

from bispectral.algebra.bipoly import from_univariate, univariate_coefficients
from bispectral.algebra.context import QQ_CONTEXT, AlgebraContext, Scalar
from bispectral.algebra.matrix import Matrix
from bispectral.algebra.ratfunc import RatFunc
from bispectral.errors import DimensionMismatchError, TruncationMismatchError
from bispectral.solver.linear import LinearSystem, SpanReducer, nullspace, rank, row_space_basis
from bispectral.solver.spaces import SolutionSpace

logger = logging.getLogger(__name__)

LinearForm = Dict[str, Fraction]
Template = List[List[Optional[LinearForm]]]

_TERM = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?([A-Za-z]\w*)$")


def _form(*terms: str, scale: Fraction = Fraction(1)) -> LinearForm:
    """_form("r22_0", "-r11_0", "-2*r11_1") -> {"r22_0": 1, "r11_0": -1, "r11_1": -2}."""
    out: LinearForm = {}
    for term in terms:
        m = _TERM.match(term.replace(" ", ""))
        if m is None:
            raise ValueError(f"bad linear-form term '{term}'")
        sign, coeff, name = m.groups()
        value = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            value = -value
        out[name] = out.get(name, Fraction(0)) + value * scale
    return out


def _p(name: str) -> LinearForm:
    return {name: Fraction(1)}


@dataclass
class Family:
    name: str
    size: int
    var: str
    homes: Dict[str, int]
    templates: Dict[int, Template]
    description: str = ""

    @property
    def coupling_depth(self) -> int:
        return max(self.templates)

    def parameters(self, truncation: int) -> List[Tuple[str, int]]:
        """(parameter, home degree) for every parameter needed up to `truncation`."""
        params = sorted(self.homes.items(), key=lambda kv: (kv[1], kv[0]))
        for d in range(self.coupling_depth + 1, truncation + 1):
            for r in range(self.size):
                for c in range(self.size):
                    params.append((f"free_{d}_{r}{c}", d))
        return params

    def placements(self, param: str) -> List[Tuple[int, int, int, Fraction]]:
        """(degree, row, col, coefficient) cells a parameter feeds."""
        if param.startswith("free_"):
            _, d, rc = param.split("_")
            return [(int(d), int(rc[0]), int(rc[1]), Fraction(1))]
        out = []
        for d, template in self.templates.items():
            for r, row in enumerate(template):
                for c, form in enumerate(row):
                    if form and param in form and form[param]:
                        out.append((d, r, c, form[param]))
        return out

    def parameter_count(self, truncation: int) -> int:
        return sum(1 for _, home in self.parameters(truncation) if home <= truncation)


# ------------------------------
# Family tables
# ------------------------------

def _c1_family() -> Family:
    homes = {
        "r11_0": 0, "r12_0": 0,
        "r11_1": 1, "r12_1": 1,
        "r11_2": 2, "r12_2": 2, "r22_2": 2,
        "r11_3": 3, "r12_3": 3, "r22_3": 3,
    }
    templates = {
        0: [[_p("r11_0"), _p("r12_0")], [None, _p("r11_0")]],
        1: [[_p("r11_1"), _p("r12_1")], [None, _p("r11_1")]],
        2: [[_p("r11_2"), _p("r12_2")], [_p("r11_1"), _p("r22_2")]],
        3: [[_p("r11_3"), _p("r12_3")], [_form("r22_2", "r11_2", "-r12_1"), _p("r22_3")]],
    }
    return Family("C1", 2, "x", homes, templates, "eigenvalue algebra of the 2x2 rank-one example")


def _c1_decoupled_family() -> Family:
    fam = _c1_family()
    templates = {d: [list(row) for row in t] for d, t in fam.templates.items()}
    # the (2,1) entry of the x^2 coefficient no longer follows r11_1
    templates[2][1][0] = None
    return Family("C1-decoupled", 2, "x", dict(fam.homes), templates, "C1 with one coupling removed (negative control)")


def _c2_family() -> Family:
    homes: Dict[str, int] = {}
    for d in range(3):
        for name in ("r11", "r12", "r13", "r22", "r23"):
            homes[f"{name}_{d}"] = d
    for d in range(3, 6):
        for name in ("r11", "r12", "r13", "r21", "r22", "r23", "r32", "r33"):
            homes[f"{name}_{d}"] = d

    def top(d: int) -> List[Optional[LinearForm]]:
        return [_p(f"r11_{d}"), _p(f"r12_{d}"), _p(f"r13_{d}")]

    templates = {
        0: [top(0), [None, _p("r22_0"), _p("r23_0")], [None, None, _p("r11_0")]],
        1: [
            top(1),
            [_form("r22_0", "-r11_0"), _p("r22_1"), _p("r23_1")],
            [None, _form("r22_0", "-r11_0"), _form("r11_1", "r23_0", "-r12_0")],
        ],
        2: [
            top(2),
            [_form("r22_1", "-r11_1", "-r23_0", "r12_0"), _p("r22_2"), _p("r23_2")],
            [_form("r22_0", "-r11_0"), _form("r22_1", "-r11_1"), _form("r11_2", "r23_1", "-r12_1")],
        ],
        3: [
            top(3),
            [_p("r21_3"), _p("r22_3"), _p("r23_3")],
            [_form("r22_1", "-2*r11_1", "-r23_0", "r12_0"), _p("r32_3"), _p("r33_3")],
        ],
        4: [
            top(4),
            [_p("r21_4"), _p("r22_4"), _p("r23_4")],
            [_form("r32_3", "r21_3", "-r22_2", "-r11_2", "r12_1"), _p("r32_4"), _p("r33_4")],
        ],
        5: [
            top(5),
            [_p("r21_5"), _p("r22_5"), _p("r23_5")],
            [
                _form("r32_4", "r21_4", "-r33_3", "-r22_3", "-r11_3", "r23_2", "r12_2", "-r13_1"),
                _p("r32_5"),
                _p("r33_5"),
            ],
        ],
    }
    return Family("C2", 3, "x", homes, templates, "eigenvalue algebra of the 3x3 example")


def _f3_family() -> Family:
    half = Fraction(1, 2)
    homes = {"a": 0, "b": 0, "c": 1, "d": 2, "e": 2}
    templates = {
        0: [[_p("a"), None], [_form("b", "-a"), _p("b")]],
        1: [[_p("c"), _p("c")], [_form("a", "-b", "-c"), _form("-c")]],
        2: [
            [_form("a", "-b", "-c", scale=half), _form("c", "a", "-b", scale=half)],
            [_form("d", scale=half), _form("e", scale=half)],
        ],
    }
    return Family("F3", 2, "z", homes, templates, "left eigenvalue algebra of the rational-L example")


FAMILIES: Dict[str, Family] = {
    "C1": _c1_family(),
    "C1-decoupled": _c1_decoupled_family(),
    "C2": _c2_family(),
    "F3": _f3_family(),
}


def get_family(which: str) -> Family:
    try:
        return FAMILIES[which]
    except KeyError:
        raise ValueError(f"unknown family '{which}' (known: {', '.join(FAMILIES)})") from None


# ------------------------------
# Bases
# ------------------------------

def _cell_index(size: int, degree: int, row: int, col: int) -> int:
    return degree * size * size + row * size + col


def conjecture_family(which: str, truncation: int, ctx: AlgebraContext = QQ_CONTEXT) -> List[Matrix]:
    """Basis of family(which) intersected with degree <= truncation."""
    if truncation < 0:
        raise TruncationMismatchError("truncation degree must be nonnegative")
    fam = get_family(which)
    n = fam.size
    top = max(truncation, fam.coupling_depth)
    width = (top + 1) * n * n
    K = ctx.domain

    params = fam.parameters(truncation)
    vectors = []
    for name, _ in params:
        vec = [K.zero] * width
        for d, r, c, coeff in fam.placements(name):
            vec[_cell_index(n, d, r, c)] = ctx.scalar(coeff)
        vectors.append(vec)

    # combinations of parameters that vanish above the truncation degree
    cut = (truncation + 1) * n * n
    columns = [{(i,): vec[i] for i in range(cut, width) if vec[i]} for vec in vectors]
    system = LinearSystem.from_columns(K, [name for name, _ in params], columns)
    combos = nullspace(system)

    basis = []
    for combo in combos:
        acc = [K.zero] * cut
        for weight, vec in zip(combo, vectors):
            if weight:
                acc = [a + weight * v for a, v in zip(acc, vec[:cut])]
        basis.append(vector_to_matrix(ctx, acc, n, truncation, fam.var))
    logger.debug(
        "family %s at degree %d: %d basis elements",
        which,
        truncation,
        len(basis),
        extra={"stage": "family", "family": which, "truncation": truncation, "dimension": len(basis)},
    )
    return basis


def family_parameter_count(which: str, truncation: int) -> int:
    """Free parameters with home degree <= truncation."""
    return get_family(which).parameter_count(truncation)


# ------------------------------
# Vectors of polynomial matrices
# ------------------------------

def matrix_degree(m: Matrix, var: str) -> int:
    deg = -1
    for _, _, e in m.cells():
        if e.is_zero():
            continue
        if not e.is_polynomial():
            raise TruncationMismatchError("eigenvalue matrices must be polynomial")
        deg = max(deg, max(univariate_coefficients(e.num, var)))
    return deg


def matrix_to_vector(m: Matrix, var: str, truncation: int) -> List[Scalar]:
    """Coefficients laid out (degree, row, col) up to `truncation`."""
    n = m.rows
    K = m.ctx.domain
    vec = [K.zero] * ((truncation + 1) * n * n)
    for r, c, e in m.cells():
        if e.is_zero():
            continue
        if not e.is_polynomial():
            raise TruncationMismatchError("eigenvalue matrices must be polynomial")
        try:
            coeffs = univariate_coefficients(e.num, var)
        except ValueError as exc:
            raise TruncationMismatchError(str(exc)) from exc
        for d, v in coeffs.items():
            if d > truncation:
                raise TruncationMismatchError(f"entry ({r},{c}) has degree {d} above truncation {truncation}")
            vec[_cell_index(n, d, r, c)] = v
    return vec


def vector_to_matrix(ctx: AlgebraContext, vec: Sequence[Scalar], size: int, truncation: int, var: str) -> Matrix:
    entries = []
    for r in range(size):
        line = []
        for c in range(size):
            coeffs = {d: vec[_cell_index(size, d, r, c)] for d in range(truncation + 1)}
            line.append(RatFunc.from_poly(ctx, from_univariate(ctx, coeffs, var)))
        entries.append(line)
    return Matrix(ctx, entries)


# ------------------------------
# Comparison
# ------------------------------

@dataclass
class SpaceComparison:
    relation: str  # "equal" | "computed_subset" | "conjectured_subset" | "incomparable"
    computed_dim: int
    conjectured_dim: int
    joint_rank: int
    computed_outside: List[Matrix] = field(default_factory=list)
    conjectured_outside: List[Matrix] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.relation == "equal"


def compare_spaces(
    computed: Union[SolutionSpace, Sequence[Matrix]],
    conjectured: Sequence[Matrix],
    *,
    truncation: Optional[int] = None,
    var: Optional[str] = None,
) -> SpaceComparison:
    """
    Exact span comparison of two sets of polynomial matrices of degree <= N.
    A SolutionSpace contributes its eigenvalue basis, truncation and variable.
    """
    if isinstance(computed, SolutionSpace):
        truncation = computed.eigen_degree if truncation is None else truncation
        var = var or computed.var
        computed = computed.eigen_basis
    var = var or "x"
    computed = list(computed)
    conjectured = list(conjectured)
    everything = computed + conjectured
    if not everything:
        return SpaceComparison("equal", 0, 0, 0)
    sizes = {m.shape for m in everything}
    if len(sizes) != 1:
        raise DimensionMismatchError(f"matrix sizes differ: {sorted(sizes)}")
    if truncation is None:
        truncation = max(0, max(matrix_degree(m, var) for m in everything))

    ctx = everything[0].ctx
    n = everything[0].rows
    width = (truncation + 1) * n * n
    a = [matrix_to_vector(m, var, truncation) for m in computed]
    b = [matrix_to_vector(m, var, truncation) for m in conjectured]
    K = ctx.domain

    reducer_a = SpanReducer(a, width, K)
    reducer_b = SpanReducer(b, width, K)
    joint = rank(a + b, width, K)
    ra, rb = reducer_a.rank, reducer_b.rank

    if ra == rb == joint:
        relation = "equal"
    elif joint == rb:
        relation = "computed_subset"
    elif joint == ra:
        relation = "conjectured_subset"
    else:
        relation = "incomparable"

    result = SpaceComparison(relation, ra, rb, joint)
    result.computed_outside = [m for m, v in zip(computed, a) if not reducer_b.contains(v)]
    result.conjectured_outside = [m for m, v in zip(conjectured, b) if not reducer_a.contains(v)]
    logger.info(
        "Compared spans: %s (dims %d vs %d, joint %d)",
        relation,
        ra,
        rb,
        joint,
        extra={
            "stage": "compare",
            "relation": relation,
            "truncation": truncation,
            "dims": {"computed": ra, "conjectured": rb, "joint": joint},
        },
    )
    return result


# ------------------------------
# Closure and membership
# ------------------------------

@dataclass
class ClosureResult:
    closed: bool
    witness: Optional[Tuple[Matrix, Matrix, Matrix]] = None


def _coefficient_stack(vec: Sequence[Scalar], n: int, truncation: int) -> List[List[List[Scalar]]]:
    return [[[vec[_cell_index(n, d, r, c)] for c in range(n)] for r in range(n)] for d in range(truncation + 1)]


def _stack_product(a, b, n: int, truncation: int, K) -> List[Scalar]:
    out = [K.zero] * ((truncation + 1) * n * n)
    for da, ca in enumerate(a):
        for db, cb in enumerate(b):
            d = da + db
            if d > truncation:
                break
            for r in range(n):
                for k in range(n):
                    left = ca[r][k]
                    if not left:
                        continue
                    for c in range(n):
                        right = cb[k][c]
                        if right:
                            out[_cell_index(n, d, r, c)] += left * right
    return out


def graded_piece(vectors: Sequence[Sequence[Scalar]], size: int, degree: int, truncation: int, K) -> List[List[Scalar]]:
    """Basis of span(vectors) intersected with matrices of degree <= `degree`."""
    width = (truncation + 1) * size * size
    if degree >= truncation:
        return row_space_basis(vectors, width, K)
    if degree < 0 or not vectors:
        return []
    cut = (degree + 1) * size * size
    columns = [{(i,): vec[i] for i in range(cut, width) if vec[i]} for vec in vectors]
    system = LinearSystem.from_columns(K, list(range(len(vectors))), columns)
    combined = []
    for combo in nullspace(system):
        acc = [K.zero] * width
        for weight, vec in zip(combo, vectors):
            if weight:
                acc = [a + weight * v for a, v in zip(acc, vec)]
        combined.append(acc)
    return row_space_basis(combined, width, K)


def algebra_closure_check(family: Sequence[Matrix], truncation: int, var: str = "x") -> ClosureResult:
    """
    True iff a*b lies in the span for every a, b in the span with
    deg a + deg b <= N. Products are taken between the degree <= k part and
    the degree <= N - k part for each k; otherwise the first offending
    (a, b, a*b).
    """
    family = list(family)
    if not family:
        return ClosureResult(True)
    ctx = family[0].ctx
    K = ctx.domain
    n = family[0].rows
    width = (truncation + 1) * n * n
    vectors = [matrix_to_vector(m, var, truncation) for m in family]
    reducer = SpanReducer(vectors, width, K)
    pieces = [graded_piece(reducer.basis, n, k, truncation, K) for k in range(truncation + 1)]
    stacks = [[_coefficient_stack(v, n, truncation) for v in piece] for piece in pieces]
    for k in range(truncation // 2 + 1):
        for a, sa in zip(pieces[k], stacks[k]):
            for b, sb in zip(pieces[truncation - k], stacks[truncation - k]):
                for left, right, sl, sr in ((a, b, sa, sb), (b, a, sb, sa)):
                    product = _stack_product(sl, sr, n, truncation, K)
                    if reducer.contains(product):
                        continue
                    logger.info(
                        "Span is not closed under products",
                        extra={"stage": "closure", "truncation": truncation, "dimension": reducer.rank},
                    )
                    return ClosureResult(
                        False,
                        (
                            vector_to_matrix(ctx, left, n, truncation, var),
                            vector_to_matrix(ctx, right, n, truncation, var),
                            vector_to_matrix(ctx, product, n, truncation, var),
                        ),
                    )
    return ClosureResult(True)


def family_membership(theta: Matrix, which: str) -> bool:
    """Whether a polynomial matrix belongs to the (untruncated) family."""
    fam = get_family(which)
    if theta.shape != (fam.size, fam.size):
        raise DimensionMismatchError(f"matrix is {theta.shape}, family {which} is {fam.size}x{fam.size}")
    degree = max(0, matrix_degree(theta, fam.var))
    basis = conjecture_family(which, degree, theta.ctx)
    width = (degree + 1) * fam.size * fam.size
    reducer = SpanReducer([matrix_to_vector(m, fam.var, degree) for m in basis], width, theta.ctx.domain)
    return reducer.contains(matrix_to_vector(theta, fam.var, degree))
