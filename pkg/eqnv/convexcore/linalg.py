# eqnv/convexcore/linalg.py
"""Exact rational linear algebra on top of sympy matrices.

All inputs and outputs are Fractions; sympy is only used as the exact engine
(rank, determinant, inverse).
"""
import math
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence

import sympy

Row = Sequence[Fraction]


def _to_sympy(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_matrix(rows: Sequence[Row], ncols: Optional[int] = None) -> sympy.Matrix:
    if not rows:
        return sympy.zeros(0, ncols or 0)
    return sympy.Matrix([[_to_sympy(a) for a in row] for row in rows])


def from_matrix(matrix: sympy.Matrix) -> List[List[Fraction]]:
    return [[_to_fraction(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def rank(rows: Sequence[Row]) -> int:
    if not rows or not rows[0]:
        return 0
    return to_matrix(rows).rank()


def determinant(rows: Sequence[Row]) -> Fraction:
    if not rows:
        return Fraction(1)
    return _to_fraction(to_matrix(rows).det(method="bareiss"))


def inverse(rows: Sequence[Row]) -> Optional[List[List[Fraction]]]:
    """Inverse of a square matrix, or None when it is singular."""
    if not rows:
        return []
    matrix = to_matrix(rows)
    if matrix.det(method="bareiss") == 0:
        return None
    return from_matrix(matrix.inv())


def primitive_integer(values: Sequence[Fraction]) -> List[int]:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    denominators = [Fraction(v).denominator for v in values]
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), denominators, 1)
    scaled = [int(Fraction(v) * lcm) for v in values]
    g = reduce(math.gcd, (abs(s) for s in scaled), 0)
    if g == 0:
        return scaled
    return [s // g for s in scaled]
