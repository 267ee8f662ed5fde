# eqnv/toric/divisor.py
"""Torus-invariant divisors on smooth complete toric varieties.

A divisor D = sum a_rho D_rho has section polytope
P_D = {u : <u, v_rho> >= -a_rho for all rays rho}, and at the fixed point of a
maximal cone sigma its bundle has weight u_sigma, the solution of
<u_sigma, v_rho> = -a_rho for rho in sigma.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Mapping, Optional, Tuple

from eqnv.convexcore.polytope import Polytope, convex_hull
from eqnv.convexcore.representation import vertices_from_halfspaces
from eqnv.core.config import EnumerationConfig
from eqnv.core.errors import ValidationError
from eqnv.core.models import HalfSpace, Rational, RationalVector, as_fraction
from eqnv.toric.fan import Cone, Fan, cotangent_weights, fixed_points

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TDivisor:
    """Rational coefficients indexed by ray index."""
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(a) for a in self.coeffs))

    @classmethod
    def from_mapping(cls, fan: Fan, coefficients: Mapping[int, Rational]) -> "TDivisor":
        values = [Fraction(0)] * len(fan.rays)
        for index, a in coefficients.items():
            if index < 0 or index >= len(fan.rays):
                raise ValidationError("Divisor coefficient for a missing ray.", {"ray": index})
            values[index] = as_fraction(a)
        return cls(tuple(values))

    @classmethod
    def zero(cls, fan: Fan) -> "TDivisor":
        return cls((Fraction(0),) * len(fan.rays))

    def __getitem__(self, index: int) -> Fraction:
        return self.coeffs[index]

    def __add__(self, other: "TDivisor") -> "TDivisor":
        self._check(other)
        return TDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TDivisor") -> "TDivisor":
        self._check(other)
        return TDivisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TDivisor":
        return TDivisor(tuple(-a for a in self.coeffs))

    def __mul__(self, scalar: Rational) -> "TDivisor":
        s = as_fraction(scalar)
        return TDivisor(tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    def _check(self, other: "TDivisor") -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise ValidationError("Divisors live on different fans.")

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)

    def is_effective(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def denominator_lcm(self) -> int:
        """Least m >= 1 with m * D integral."""
        return reduce(lambda a, b: a * b // math.gcd(a, b), (a.denominator for a in self.coeffs), 1)


@dataclass(frozen=True)
class CartierData:
    """Fixed-point weights u_sigma of a divisor, one per maximal cone."""
    cones: Tuple[Cone, ...]
    weights: Tuple[RationalVector, ...]

    def items(self) -> List[Tuple[Cone, RationalVector]]:
        return list(zip(self.cones, self.weights))

    def weight_at(self, cone: Cone) -> RationalVector:
        return self.weights[self.cones.index(cone)]

    @property
    def is_integral(self) -> bool:
        return all(w.is_integral() for w in self.weights)


@dataclass(frozen=True)
class PositivityFlags:
    """Positivity of a divisor. On smooth complete toric varieties nef,
    basepoint free and semiample coincide."""
    nef: bool
    ample: bool
    basepoint_free: bool
    semiample: bool


def _check_divisor(fan: Fan, D: TDivisor) -> None:
    if len(D.coeffs) != len(fan.rays):
        raise ValidationError("Divisor needs one coefficient per ray.", {"rays": len(fan.rays), "coefficients": len(D.coeffs)})


def canonical_divisor(fan: Fan) -> TDivisor:
    """K = -sum of all invariant prime divisors."""
    return TDivisor((Fraction(-1),) * len(fan.rays))


def prime_divisor(fan: Fan, ray_index: int) -> TDivisor:
    return TDivisor.from_mapping(fan, {ray_index: 1})


def vertex_weight(fan: Fan, D: TDivisor, cone: Cone) -> RationalVector:
    """u_sigma with <u_sigma, v_rho> = -a_rho for the rays of sigma."""
    _check_divisor(fan, D)
    duals = cotangent_weights(fan, cone)
    total = RationalVector.zero(fan.dimension)
    for ray_index, u in zip(cone.ray_indices, duals):
        a = D[ray_index]
        if a != 0:
            total = total - a * u
    return total


def cartier_data(fan: Fan, D: TDivisor) -> CartierData:
    cones = fixed_points(fan)
    return CartierData(tuple(cones), tuple(vertex_weight(fan, D, c) for c in cones))


def positivity(fan: Fan, D: TDivisor) -> PositivityFlags:
    """Support-function criteria: nef iff <u_sigma, v_rho> >= -a_rho for all
    sigma and rho; ample iff the inequality is strict for every rho outside sigma."""
    data = cartier_data(fan, D)
    nef = True
    ample = True
    for cone, u in data.items():
        for ray in fan.rays:
            excess = u.dot(ray.as_vector()) + D[ray.index]
            if excess < 0:
                nef = False
                ample = False
            elif excess == 0 and ray.index not in cone:
                ample = False
    return PositivityFlags(nef=nef, ample=ample, basepoint_free=nef, semiample=nef)


def _divisor_halfspaces(fan: Fan, D: TDivisor, m: Fraction = Fraction(1)) -> List[HalfSpace]:
    return [HalfSpace(ray.as_vector(), -m * D[ray.index]) for ray in fan.rays]


def section_polytope(fan: Fan, D: TDivisor) -> Optional[Polytope]:
    """P_D as half-spaces plus its vertex set; None when P_D is empty.

    cddlib enumerates the vertices from the ray inequalities; P_D is bounded
    because the fan is complete.
    """
    _check_divisor(fan, D)
    fixed_points(fan)
    halfspaces = _divisor_halfspaces(fan, D)
    candidates = vertices_from_halfspaces(halfspaces, fan.dimension)
    if not candidates:
        logger.debug("section_polytope: empty for %s", D.coeffs)
        return None
    return convex_hull(candidates).attach_halfspaces(halfspaces)


def _lattice_points(fan: Fan, D: TDivisor, m: int, config: EnumerationConfig) -> List[RationalVector]:
    polytope = section_polytope(fan, m * D)
    if polytope is None:
        return []
    n = fan.dimension
    lows = [math.ceil(min(v[k] for v in polytope.vertices)) for k in range(n)]
    highs = [math.floor(max(v[k] for v in polytope.vertices)) for k in range(n)]
    box = 1
    for lo, hi in zip(lows, highs):
        box *= max(0, hi - lo + 1)
    if box > config.max_lattice_points:
        raise ValidationError("Lattice enumeration box is too large.", {"points": box, "limit": config.max_lattice_points})
    halfspaces = _divisor_halfspaces(fan, D, Fraction(m))
    points = []
    for coords in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        u = RationalVector(coords)
        if all(h.satisfied_by(u) for h in halfspaces):
            points.append(u)
    return points


def _check_multiple(D: TDivisor, m: int) -> None:
    if m < 1:
        raise ValidationError("Degree must be a positive integer.", {"m": m})
    if not (m * D).is_integral():
        raise ValidationError("m * D must be integral.", {"m": m})


def section_weights(fan: Fan, D: TDivisor, m: int = 1, config: Optional[EnumerationConfig] = None) -> List[RationalVector]:
    """Weights of the sections of O(mD): the lattice points of m * P_D, in lexicographic order."""
    _check_divisor(fan, D)
    _check_multiple(D, m)
    points = _lattice_points(fan, D, m, config or EnumerationConfig())
    logger.debug("section_weights: %d lattice points at degree %d", len(points), m)
    return points


def h0(fan: Fan, D: TDivisor, m: int = 1, config: Optional[EnumerationConfig] = None) -> int:
    return len(section_weights(fan, D, m, config))


def invariant_dimension(fan: Fan, D: TDivisor, twist: RationalVector, m: int = 1) -> int:
    """Number of sections of O(mD) of twisted weight 0, i.e. lattice points u of
    m * P_D with u + m * twist = 0 (each toric weight space is a line)."""
    _check_divisor(fan, D)
    _check_multiple(D, m)
    if twist.dim != fan.dimension:
        raise ValidationError("Twist dimension differs from the fan.", {"twist": twist.dim, "fan": fan.dimension})
    fixed_points(fan)
    u = -(m * twist)
    if not u.is_integral():
        return 0
    return int(all(h.satisfied_by(u) for h in _divisor_halfspaces(fan, D, Fraction(m))))


def kodaira_dimension(fan: Fan, D: TDivisor) -> Optional[int]:
    """dim P_D, or None (minus infinity) when O(mD) has no sections for any m."""
    polytope = section_polytope(fan, D)
    return None if polytope is None else polytope.dimension

