# bispectral/fixtures/examples.py
"""
Built-in problem files, so `--example N` works without any files on disk.
The same texts ship as fixtures/*.bsp at the repository root.
"""

from __future__ import annotations
from typing import Dict

from bispectral.dsl.problem import ProblemFile, parse

EX1 = """\
# 2x2 kernel with a scalar third-order partner.
# L Psi = p Psi and Psi B = Theta Psi with Theta = x^3.
field Q;

fun Psi = expxz * [[z - 1/x, x^-2], [0, z - 1/x]];
op L = -Dx^2 + 2*[[x^-2, -2*x^-3], [0, x^-2]];
let p = -z^2;

op B = Dz^3 - 3*Dz^2*(1/z) + 3*Dz*(1/z^2) + 3*[[0, z^-2], [0, 0]];
let Theta = x^3;
"""

EX2 = """\
# 3x3 kernel built by a first-order Darboux factor applied to expxz.
field Q;

let W = [[x^-1, -x^-2, x^-3], [0, x^-1, -x^-2], [0, 0, x^-1]];
fun Psi = (Dx - W) * expxz;
op L = -Dx^2 + 2*[[x^-2, -2*x^-3, 3*x^-4], [0, x^-2, -2*x^-3], [0, 0, x^-2]];
let p = -z^2;

# order-2 partner with a lower triangular eigenvalue
op B = Dz^2*[[0, 0, 0], [0, 0, 0], [1, 0, 0]]
     + Dz*[[0, 0, 0], [1, 0, 0], [-2*z^-1, 1, 0]]
     + [[1, 0, 0], [-2*z^-1, 2, 0], [0, 0, 1]];
let Theta = [[1, 0, 0], [x, 2, 0], [x^2, x, 1]];
"""

EX3 = """\
# 2x2 kernel with matrix eigenvalues on both sides: L Psi = Psi F, Psi B = Theta Psi.
field Q;

let M = [[(x^3*z^2 - 2*x^2*z^2 - 2*x^2*z + 3*x*z + 2*x - 2)/(x*z), 1/x],
         [(x*z - 2)/z, x^2*z - 2*x*z - x + 1]];
fun Psi = expxz * M / ((x - 2)*x*z);

op L = [[0, 0], [0, 1]]*Dx^2
     + [[0, 1/((x - 2)*x^2)], [-1/(x - 2), 0]]*Dx
     + [[-1/(x^2*(x - 2)^2), (x - 1)/(x^3*(x - 2)^2)],
        [(2*x - 1)/(x*(x - 2)^2), -(2*x^2 - 4*x + 3)/(x^2*(x - 2)^2)]];
let F = [[0, 0], [0, z^2]];

op B = Dz^3*[[0, 0], [1, 0]]
     + Dz^2*[[0, 0], [-(2*z + 1)/z, 0]]
     + Dz*[[1, 0], [2*(z - 1)/z^2, 1]]
     + [[-z^-1, 0], [6*z^-3, z^-1]];
let Theta = [[x, 0], [x^2*(x - 2), x]];
"""

SCALAR = """\
# Scalar shadow: -d^2 + 2/x^2 with a single pole of multiplicity 1 at 0.
field Q;

fun Psi = expxz * [[z - 1/x]];
op L = -Dx^2 + 2*x^-2;
let p = -z^2;

op B = Dz^2 - Dz*(2/z);
let Theta = x^2;
"""

EXAMPLES: Dict[str, str] = {"1": EX1, "2": EX2, "3": EX3, "scalar": SCALAR}

FILENAMES: Dict[str, str] = {"1": "ex1.bsp", "2": "ex2.bsp", "3": "ex3.bsp", "scalar": "scalar.bsp"}


def example_text(name: str | int) -> str:
    key = str(name)
    if key not in EXAMPLES:
        raise KeyError(f"unknown example '{name}'; choose one of {', '.join(EXAMPLES)}")
    return EXAMPLES[key]


def load_example(name: str | int) -> ProblemFile:
    return parse(example_text(name))
