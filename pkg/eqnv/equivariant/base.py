# eqnv/equivariant/base.py
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from eqnv.convexcore.polytope import Polytope, convex_hull, lcm_of_denominators
from eqnv.core.errors import DimensionMismatchError, ValidationError
from eqnv.core.models import RationalVector, as_fraction, common_dimension
from eqnv.toric.divisor import TDivisor, canonical_divisor, vertex_weight
from eqnv.toric.fan import Fan, fixed_points


@dataclass(frozen=True)
class LinearizedBundle:
    """A toric line bundle O(D) with its linearization twisted by a character.

    `multiple` is the least m >= 1 with m * divisor and m * twist integral; it
    is computed on construction and cannot be passed in.
    """
    divisor: TDivisor
    twist: RationalVector
    multiple: int = field(init=False)

    def __post_init__(self):
        m = lcm_of_denominators([self.twist, RationalVector(self.divisor.coeffs)])
        object.__setattr__(self, "multiple", m)

    def power(self, k: int) -> "LinearizedBundle":
        """The k-th tensor power; weights scale by k."""
        if k < 1:
            raise ValidationError("Tensor power must be a positive integer.", {"k": k})
        return LinearizedBundle(k * self.divisor, k * self.twist)

    def _check_fan(self, fan: Fan) -> None:
        if self.twist.dim != fan.dimension:
            raise DimensionMismatchError("Twist dimension differs from the fan.", {"twist": self.twist.dim, "fan": fan.dimension})

    def fixed_point_weights(self, fan: Fan) -> List[RationalVector]:
        self._check_fan(fan)
        return [vertex_weight(fan, self.divisor, cone) + self.twist for cone in fixed_points(fan)]

    def moment_polytope(self, fan: Fan) -> Polytope:
        return convex_hull(self.fixed_point_weights(fan))


@dataclass(frozen=True)
class FixedPointRecord:
    """Local data at one fixed point: cotangent weights nu_1..nu_n, boundary
    multiplicities delta_i aligned with them, and the auxiliary divisor's
    coefficients a_j with multiplicities m_{j,i} along the directions nu_i."""
    cotangent: Tuple[RationalVector, ...]
    boundary_mults: Tuple[Fraction, ...]
    aux_coeffs: Tuple[Fraction, ...] = ()
    aux_mults: Tuple[Tuple[int, ...], ...] = ()
    weight_dimension: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "cotangent", tuple(self.cotangent))
        object.__setattr__(self, "boundary_mults", tuple(as_fraction(d) for d in self.boundary_mults))
        object.__setattr__(self, "aux_coeffs", tuple(as_fraction(a) for a in self.aux_coeffs))
        object.__setattr__(self, "aux_mults", tuple(tuple(row) for row in self.aux_mults))
        n = len(self.cotangent)
        if self.cotangent:
            dim = common_dimension(self.cotangent)
            if self.weight_dimension is not None and self.weight_dimension != dim:
                raise DimensionMismatchError(
                    "Cotangent weights disagree with the declared dimension.",
                    {"weights": dim, "declared": self.weight_dimension},
                )
            object.__setattr__(self, "weight_dimension", dim)
        elif self.weight_dimension is None:
            object.__setattr__(self, "weight_dimension", 0)
        if len(self.boundary_mults) != n:
            raise ValidationError("Need one boundary multiplicity per cotangent weight.",
                                  {"cotangent": n, "boundary_mults": len(self.boundary_mults)})
        if len(self.aux_mults) != len(self.aux_coeffs):
            raise ValidationError("Need one multiplicity row per auxiliary coefficient.",
                                  {"aux_coeffs": len(self.aux_coeffs), "aux_mults": len(self.aux_mults)})
        for j, row in enumerate(self.aux_mults):
            if len(row) != n:
                raise ValidationError("Multiplicity row has the wrong length.", {"row": j, "length": len(row), "n": n})
            if any(not isinstance(m, int) or isinstance(m, bool) or m < 0 for m in row):
                raise ValidationError("Multiplicities must be nonnegative integers.", {"row": j})
        if any(a < 0 for a in self.aux_coeffs):
            raise ValidationError("Auxiliary coefficients must be nonnegative.")


@dataclass(frozen=True)
class PairData:
    """A pair (X, D) on a toric variety plus an optional effective auxiliary divisor A."""
    fan: Fan
    boundary: TDivisor
    aux: Optional[TDivisor] = None

    def __post_init__(self):
        rays = len(self.fan.rays)
        if len(self.boundary.coeffs) != rays:
            raise ValidationError("Boundary needs one coefficient per ray.", {"rays": rays, "coefficients": len(self.boundary.coeffs)})
        if self.aux is not None:
            if len(self.aux.coeffs) != rays:
                raise ValidationError("Auxiliary divisor needs one coefficient per ray.", {"rays": rays})
            if not self.aux.is_effective():
                raise ValidationError("Auxiliary divisor must be effective.", {"aux": [str(a) for a in self.aux.coeffs]})

    @classmethod
    def from_coefficients(cls, fan: Fan, boundary: dict, aux: Optional[dict] = None) -> "PairData":
        return cls(fan, TDivisor.from_mapping(fan, boundary), None if aux is None else TDivisor.from_mapping(fan, aux))

    def aux_or_zero(self) -> TDivisor:
        return self.aux if self.aux is not None else TDivisor.zero(self.fan)

    def anti_log_divisor(self) -> TDivisor:
        """-(K + D - A)."""
        return -(canonical_divisor(self.fan) + self.boundary - self.aux_or_zero())

    def with_aux(self, aux: Optional[TDivisor]) -> "PairData":
        return PairData(self.fan, self.boundary, aux)


class BaseWeightSource(ABC):
    """Anything that supplies one weight per torus fixed point."""

    @property
    @abstractmethod
    def dimension(self) -> int:
        """Rank of the character lattice the weights live in."""
        pass

    @abstractmethod
    def fixed_point_weights(self) -> List[RationalVector]:
        """Fiber weights at the fixed points, in a deterministic order."""
        pass

    def moment_polytope(self, twist: Optional[RationalVector] = None) -> Polytope:
        shift = twist if twist is not None else RationalVector.zero(self.dimension)
        if shift.dim != self.dimension:
            raise DimensionMismatchError("Twist dimension differs from the weights.", {"twist": shift.dim, "weights": self.dimension})
        return convex_hull([w + shift for w in self.fixed_point_weights()])
