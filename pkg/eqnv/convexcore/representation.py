# eqnv/convexcore/representation.py
"""Conversion between vertex and half-space descriptions via cddlib.

cddlib runs in exact rational mode (``number_type="fraction"``). Its matrix
rows are ``[b, a_1, ..., a_n]`` meaning ``b + <a, x> >= 0``; generator rows are
``[t, x_1, ..., x_n]`` with t = 1 for a point and t = 0 for a ray. Every
result coming back from cddlib is re-checked against the input exactly.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple

import cdd

from eqnv.convexcore import linalg
from eqnv.core.errors import InternalInconsistencyError, ValidationError
from eqnv.core.models import HalfSpace, RationalVector, vector

logger = logging.getLogger(__name__)

NUMBER_TYPE = "fraction"


def _matrix(rows: Sequence[Sequence[Fraction]], rep_type) -> "cdd.Matrix":
    mat = cdd.Matrix([list(row) for row in rows], number_type=NUMBER_TYPE)
    mat.rep_type = rep_type
    return mat


def _normal_and_offset(row: Sequence[Fraction]) -> Optional[Tuple[RationalVector, Fraction]]:
    """(primitive integer normal, offset) for the row b + <a, x> >= 0; None for a = 0."""
    b = Fraction(row[0])
    a = [Fraction(c) for c in row[1:]]
    if all(c == 0 for c in a):
        if b < 0:
            raise InternalInconsistencyError("cddlib returned an infeasible constant row.", {"b": b})
        return None
    normal = vector(linalg.primitive_integer(a))
    pivot = next(k for k, c in enumerate(a) if c != 0)
    factor = normal[pivot] / a[pivot]
    return normal, -b * factor


def halfspaces_from_vertices(vertices: Sequence[RationalVector], dim: int) -> List[HalfSpace]:
    """Irredundant H-representation of conv(vertices).

    Normals are primitive integer vectors; each affine equality appears as an
    opposite pair of half-spaces. Every half-space is checked to contain all
    vertices and to touch at least one of them.
    """
    if dim == 0 or not vertices:
        return []
    generators = _matrix([[Fraction(1)] + list(v.coords) for v in vertices], cdd.RepType.GENERATOR)
    inequalities = cdd.Polyhedron(generators).get_inequalities()
    inequalities.canonicalize()
    found: Set[HalfSpace] = set()
    for i in range(inequalities.row_size):
        parsed = _normal_and_offset(inequalities[i])
        if parsed is None:
            continue
        normal, offset = parsed
        values = [normal.dot(v) for v in vertices]
        if min(values) != offset:
            raise InternalInconsistencyError(
                "cddlib half-space does not support the vertex set.", {"normal": str(normal), "offset": offset}
            )
        found.add(HalfSpace(normal, offset))
        if i in inequalities.lin_set:
            if max(values) != offset:
                raise InternalInconsistencyError("cddlib equality is violated by a vertex.", {"normal": str(normal)})
            found.add(HalfSpace(-normal, -offset))
    logger.debug("halfspaces_from_vertices: %d vertices, %d half-spaces", len(vertices), len(found))
    return sorted(found)


def vertices_from_halfspaces(halfspaces: Sequence[HalfSpace], dim: int) -> List[RationalVector]:
    """Vertices of the bounded polyhedron cut out by `halfspaces`, in lexicographic order.

    Returns [] when the intersection is empty. An unbounded intersection raises
    ValidationError.
    """
    if dim == 0:
        return [RationalVector(())]
    if not halfspaces:
        raise ValidationError("No half-spaces: the polyhedron is unbounded.")
    rows = [[-h.offset] + list(h.normal.coords) for h in halfspaces]
    generators = cdd.Polyhedron(_matrix(rows, cdd.RepType.INEQUALITY)).get_generators()
    points = set()
    for i in range(generators.row_size):
        row = generators[i]
        if Fraction(row[0]) == 0 or i in generators.lin_set:
            raise ValidationError("The polyhedron cut out by the half-spaces is unbounded.", {"ray": [str(c) for c in row[1:]]})
        point = vector(Fraction(c) / Fraction(row[0]) for c in row[1:])
        if not all(h.satisfied_by(point) for h in halfspaces):
            raise InternalInconsistencyError("cddlib vertex violates a half-space.", {"point": str(point)})
        points.add(point)
    logger.debug("vertices_from_halfspaces: %d half-spaces, %d generators", len(halfspaces), len(points))
    return sorted(points)
