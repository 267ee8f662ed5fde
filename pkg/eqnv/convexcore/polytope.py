# eqnv/convexcore/polytope.py
"""Exact rational convex geometry.

Membership, coefficients, separation and distances reduce to exact linear
programs (see lp.py); the H-representation comes from cddlib in exact mode
(see representation.py). Nothing in this module touches floating point.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Dict, List, Optional, Sequence, Tuple

from eqnv.convexcore import linalg
from eqnv.convexcore.lp import OPTIMAL, solve_lp
from eqnv.convexcore.representation import halfspaces_from_vertices
from eqnv.core.errors import (
    DimensionMismatchError, EmptyInputError, InternalInconsistencyError, LinearProgramError, ValidationError,
)
from eqnv.core.models import HalfSpace, Rational, RationalVector, as_fraction, common_dimension, vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Polytope:
    """Convex hull of finitely many rational points.

    `generators` keeps the input multiset; `vertices` is the inclusion-minimal
    generating subset in lexicographic order. Two polytopes are equal when
    their vertex sets are.
    """
    generators: Tuple[RationalVector, ...]
    vertices: Tuple[RationalVector, ...]
    ambient_dim: int

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self) -> str:
        return "Polytope(conv{" + ", ".join(str(v) for v in self.vertices) + "})"

    @cached_property
    def dimension(self) -> int:
        """Affine dimension (0 for a single point)."""
        base = self.vertices[0]
        return linalg.rank([list(v - base) for v in self.vertices[1:]])

    @cached_property
    def halfspaces(self) -> Tuple[HalfSpace, ...]:
        """Exact H-representation; equalities appear as opposite pairs."""
        return tuple(halfspaces_from_vertices(self.vertices, self.ambient_dim))

    def attach_halfspaces(self, halfspaces: Sequence[HalfSpace]) -> "Polytope":
        """Records a known H-representation (possibly with redundant inequalities)."""
        self.__dict__["halfspaces"] = tuple(sorted(set(halfspaces)))
        return self

    def satisfies_halfspaces(self, point: RationalVector) -> bool:
        return all(h.satisfied_by(point) for h in self.halfspaces)


def _check_point(P: Polytope, x: RationalVector) -> None:
    if x.dim != P.ambient_dim:
        raise DimensionMismatchError(
            "Point and polytope live in different dimensions.", {"point": x.dim, "polytope": P.ambient_dim}
        )


def _barycentric_solution(points: Sequence[RationalVector], target: RationalVector) -> Optional[List[Fraction]]:
    """Basic feasible lambda >= 0 with sum 1 and sum lambda_i p_i = target, or None."""
    n = len(points)
    A = [[p[j] for p in points] for j in range(target.dim)]
    A.append([Fraction(1)] * n)
    b = list(target.coords) + [Fraction(1)]
    result = solve_lp([Fraction(0)] * n, A, b)
    return result.x if result.status == OPTIMAL else None


def convex_hull(points: Sequence[RationalVector]) -> Polytope:
    """Polytope spanned by `points`, with its vertex set computed exactly.

    A generator is a vertex iff it is not in the hull of the other distinct
    generators; the lexicographically smallest and largest points are always
    vertices and skip the LP.
    """
    if not points:
        raise EmptyInputError("empty point set")
    dim = common_dimension(points)
    distinct = sorted(set(points))
    vertices = []
    for i, p in enumerate(distinct):
        if i == 0 or i == len(distinct) - 1:
            vertices.append(p)
            continue
        others = distinct[:i] + distinct[i + 1:]
        if _barycentric_solution(others, p) is None:
            vertices.append(p)
    logger.debug("convex_hull: %d generators, %d distinct, %d vertices", len(points), len(distinct), len(vertices))
    return Polytope(generators=tuple(points), vertices=tuple(vertices), ambient_dim=dim)


def contains(P: Polytope, x: RationalVector) -> bool:
    _check_point(P, x)
    if x in P.vertices:
        return True
    return _barycentric_solution(P.vertices, x) is not None


def scale(P: Polytope, m: Rational) -> Polytope:
    factor = as_fraction(m)
    if factor <= 0:
        raise ValidationError("Scaling factor must be positive.", {"m": factor})
    return Polytope(
        generators=tuple(factor * g for g in P.generators),
        vertices=tuple(factor * v for v in P.vertices),
        ambient_dim=P.ambient_dim,
    )


def translate(P: Polytope, shift: RationalVector) -> Polytope:
    _check_point(P, shift)
    return Polytope(
        generators=tuple(g + shift for g in P.generators),
        vertices=tuple(v + shift for v in P.vertices),
        ambient_dim=P.ambient_dim,
    )


def negate(P: Polytope) -> Polytope:
    """Image of P under w -> -w."""
    return Polytope(
        generators=tuple(-g for g in P.generators),
        vertices=tuple(sorted(-v for v in P.vertices)),
        ambient_dim=P.ambient_dim,
    )


def rational_coefficients(points: Sequence[RationalVector], target: RationalVector) -> Optional[List[Fraction]]:
    """Exact convex coefficients expressing `target` in terms of `points`.

    The simplex returns a basic solution: the points it uses are affinely
    independent (at most dim + 1 of them), the unused ones get 0, and the used
    ones get the unique, strictly positive solution of the rational system on
    that support. No second program maximizing min lambda_i is solved: on an
    affinely independent support the system has exactly one solution, so that
    program could only return these same coefficients.
    """
    if not points:
        raise EmptyInputError("empty point set")
    dim = common_dimension(points)
    if target.dim != dim:
        raise DimensionMismatchError("Target dimension differs from points.", {"target": target.dim, "points": dim})
    lambdas = _barycentric_solution(points, target)
    if lambdas is None:
        return None
    if any(l < 0 for l in lambdas) or sum(lambdas) != 1:
        raise InternalInconsistencyError("Convex coefficients failed re-verification.", {"lambdas": lambdas})
    combination = vector(sum((l * p[j] for l, p in zip(lambdas, points)), Fraction(0)) for j in range(dim))
    if combination != target:
        raise InternalInconsistencyError("Convex combination does not reproduce the target.")
    return lambdas


def integer_certificate(weights: Sequence[RationalVector]) -> Optional[List[int]]:
    """Nonnegative integers k, not all zero, with sum k_i w_i = 0; None if 0 is outside the hull."""
    if not weights:
        raise EmptyInputError("empty point set")
    dim = common_dimension(weights)
    lambdas = rational_coefficients(weights, RationalVector.zero(dim))
    if lambdas is None:
        return None
    ks = linalg.primitive_integer(lambdas)
    verify_integer_certificate(weights, ks)
    return ks


def verify_integer_certificate(weights: Sequence[RationalVector], ks: Sequence[int]) -> List[str]:
    """Re-checks sum k_i w_i = 0 and sum k_i >= 1 exactly; returns the printed identities."""
    if len(weights) != len(ks):
        raise InternalInconsistencyError("Certificate length differs from weight count.")
    if any(k < 0 for k in ks) or sum(ks) < 1:
        raise InternalInconsistencyError("Certificate multiplicities must be nonnegative and not all zero.", {"k": list(ks)})
    dim = common_dimension(weights)
    total = RationalVector.zero(dim)
    terms = []
    for k, w in zip(ks, weights):
        total = total + k * w
        terms.append(f"{k}*{w}")
    if not total.is_zero():
        raise InternalInconsistencyError("Invariant-section certificate does not sum to zero.", {"sum": str(total)})
    return [
        "sum_i k_i*w_i = " + " + ".join(terms) + f" = {total}",
        f"sum_i k_i = {sum(ks)} >= 1",
    ]


def separating_functional(P: Polytope, x: RationalVector) -> Optional[RationalVector]:
    """Rational phi with phi(v - x) > 0 on every vertex v; None when x lies in P.

    Solved as the feasibility problem phi(v - x) >= 1 with phi split into
    positive and negative parts, then rescaled to a primitive integer vector.
    """
    _check_point(P, x)
    if contains(P, x):
        return None
    r = P.ambient_dim
    nv = len(P.vertices)
    A = []
    for i, v in enumerate(P.vertices):
        d = v - x
        surplus = [Fraction(-1 if k == i else 0) for k in range(nv)]
        A.append(list(d.coords) + [-a for a in d.coords] + surplus)
    result = solve_lp([Fraction(0)] * (2 * r + nv), A, [Fraction(1)] * nv)
    if result.status != OPTIMAL:
        raise InternalInconsistencyError("No separating functional for a point outside the polytope.", {"point": str(x)})
    raw = [result.x[j] - result.x[r + j] for j in range(r)]
    phi = vector(linalg.primitive_integer(raw))
    verify_separating_functional(P.vertices, x, phi)
    return phi


def verify_separating_functional(vertices: Sequence[RationalVector], x: RationalVector, phi: RationalVector) -> List[str]:
    lines = []
    for v in vertices:
        value = phi.dot(v - x)
        if value <= 0:
            raise InternalInconsistencyError("Separating functional is not strictly positive.", {"vertex": str(v)})
        lines.append(f"phi{phi} . ({v} - {x}) = {value} > 0")
    return lines


def shrink_membership(P: Polytope, w: RationalVector, eps: Rational) -> bool:
    """Whether (1 - eps) * w lies in P, for a generator w of P."""
    e = as_fraction(eps)
    if e <= 0:
        raise ValidationError("eps must be positive.", {"eps": e})
    _check_point(P, w)
    if w not in P.generators and w not in P.vertices:
        raise ValidationError("w must be a generator of P.", {"w": str(w)})
    return contains(P, (1 - e) * w)


def shrink_hypothesis(P: Polytope, schedule: Sequence[Fraction]) -> Dict[RationalVector, bool]:
    """For each vertex w: does (1 - eps) w lie in P from some eps of the decreasing schedule on?"""
    outcome = {}
    for w in P.vertices:
        flags = [shrink_membership(P, w, e) for e in schedule]
        outcome[w] = bool(flags) and flags[-1] and all(flags[flags.index(True):])
    return outcome


def point_distance(P: Polytope, x: RationalVector) -> Fraction:
    """Exact sup-norm distance from x to P.

    Minimizes t subject to |sum lambda_i v_i - x|_j <= t for every coordinate j.
    """
    _check_point(P, x)
    r = P.ambient_dim
    n = len(P.vertices)
    # columns: lambda (n) | t | p (r) | q (r)
    width = n + 1 + 2 * r
    A = []
    b = []
    for j in range(r):
        upper = [v[j] for v in P.vertices] + [Fraction(-1)] + [Fraction(1 if k == j else 0) for k in range(r)] + [Fraction(0)] * r
        lower = [v[j] for v in P.vertices] + [Fraction(1)] + [Fraction(0)] * r + [Fraction(-1 if k == j else 0) for k in range(r)]
        A.extend([upper, lower])
        b.extend([x[j], x[j]])
    A.append([Fraction(1)] * n + [Fraction(0)] * (1 + 2 * r))
    b.append(Fraction(1))
    cost = [Fraction(0)] * width
    cost[n] = Fraction(-1)
    result = solve_lp(cost, A, b)
    if result.status != OPTIMAL:
        raise LinearProgramError("Distance program must have an optimum.", {"status": result.status})
    return -result.objective


def hausdorff_distance(P: Polytope, Q: Polytope) -> Fraction:
    """Exact Hausdorff distance in the sup-norm.

    The distance to a convex set is convex, so the maximum over a polytope is
    attained at a vertex.
    """
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatchError("Polytopes live in different dimensions.", {"P": P.ambient_dim, "Q": Q.ambient_dim})
    if P == Q:
        return Fraction(0)
    one_way = max(point_distance(Q, v) for v in P.vertices)
    other_way = max(point_distance(P, w) for w in Q.vertices)
    return max(one_way, other_way)


def lcm_of_denominators(vectors: Sequence[RationalVector]) -> int:
    """Least m with m * v integral for every v."""
    return reduce(
        lambda a, b: a * b // math.gcd(a, b),
        (c.denominator for v in vectors for c in v.coords),
        1,
    )
