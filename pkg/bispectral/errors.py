# bispectral/errors.py
from __future__ import annotations
from typing import Optional


class BispectralError(Exception):
    pass


# ------------------------------
# Exact algebra
# ------------------------------

class ZeroDivisionInField(BispectralError, ZeroDivisionError):
    pass


class NotInvertibleError(BispectralError, ArithmeticError):
    """Raised when an extension residue has no inverse mod the modulus."""

    def __init__(self, element_text: str):
        super().__init__(f"modulus reducible at this element: {element_text}")
        self.element_text = element_text


class ContextMismatchError(BispectralError, ValueError):
    pass


class GcdOfZerosError(BispectralError, ValueError):
    pass


class DimensionMismatchError(BispectralError, ValueError):
    pass


# ------------------------------
# Operators / solver
# ------------------------------

class OperatorMismatchError(BispectralError, ValueError):
    pass


class AnsatzError(BispectralError, ValueError):
    pass


class TruncationMismatchError(BispectralError, ValueError):
    pass


# ------------------------------
# KdV
# ------------------------------

class KdVConfigError(BispectralError, ValueError):
    """Pole data or a request the scalar KdV tools cannot serve."""


# ------------------------------
# DSL
# ------------------------------

class DSLError(BispectralError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.column = column


class DSLSyntaxError(DSLError):
    pass


class UndefinedNameError(DSLError):
    def __init__(self, name: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(f"undefined name '{name}'", line, column)
        self.name = name


class DSLDimensionError(DSLError):
    pass


class DSLTypeError(DSLError):
    pass
