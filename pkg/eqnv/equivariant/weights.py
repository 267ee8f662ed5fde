# eqnv/equivariant/weights.py
"""Local weight formulas at torus fixed points.

The fiber of -(K + D - A) at a fixed point with cotangent weights nu_i,
boundary multiplicities delta_i and auxiliary data (a_j, m_{j,i}) has weight

    mu = -sum_i (1 - delta_i) nu_i - sum_{i,j} a_j m_{j,i} nu_i.

Toric mode evaluates the same weight from Cartier data, one summand divisor
at a time; both modes give identical moment polytopes.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from eqnv.convexcore.polytope import Polytope, contains
from eqnv.core.config import EpsilonSearchConfig
from eqnv.core.errors import DimensionMismatchError, EmptyInputError
from eqnv.core.models import RationalVector, common_dimension
from eqnv.equivariant.base import BaseWeightSource, FixedPointRecord, PairData
from eqnv.toric.divisor import canonical_divisor, vertex_weight
from eqnv.toric.fan import Cone, cotangent_weights, fixed_points

logger = logging.getLogger(__name__)

WeightInput = Union[PairData, Sequence[FixedPointRecord], BaseWeightSource]


def anticanonical_weight(cotangent: Sequence[RationalVector], dimension: Optional[int] = None) -> RationalVector:
    """mu(-K) = -(nu_1 + ... + nu_n); the empty sum is 0 in `dimension`."""
    if not cotangent:
        return RationalVector.zero(dimension or 0)
    dim = common_dimension(cotangent)
    if dimension is not None and dimension != dim:
        raise DimensionMismatchError("Cotangent weights disagree with the given dimension.", {"weights": dim, "dimension": dimension})
    total = RationalVector.zero(dim)
    for nu in cotangent:
        total = total - nu
    return total


def pair_weight(record: FixedPointRecord) -> RationalVector:
    total = RationalVector.zero(record.weight_dimension)
    for i, nu in enumerate(record.cotangent):
        coefficient = 1 - record.boundary_mults[i]
        for a, row in zip(record.aux_coeffs, record.aux_mults):
            coefficient += a * row[i]
        if coefficient != 0:
            total = total - coefficient * nu
    return total


def twist_weights(weights: Sequence[RationalVector], c: RationalVector) -> List[RationalVector]:
    """Weights after tensoring the linearization with the character c."""
    return [w + c for w in weights]


class ToricWeightSource(BaseWeightSource):
    """Fixed-point weights of -(K + D - A) from the fan's Cartier data."""

    def __init__(self, pair: PairData):
        self.pair = pair
        self.cones: List[Cone] = fixed_points(pair.fan)

    @property
    def dimension(self) -> int:
        return self.pair.fan.dimension

    def weight_at(self, cone: Cone) -> RationalVector:
        fan = self.pair.fan
        weight = vertex_weight(fan, -canonical_divisor(fan), cone) + vertex_weight(fan, -self.pair.boundary, cone)
        if self.pair.aux is not None:
            weight = weight + vertex_weight(fan, self.pair.aux, cone)
        return weight

    def fixed_point_weights(self) -> List[RationalVector]:
        return [self.weight_at(cone) for cone in self.cones]


class FixedPointWeightSource(BaseWeightSource):
    """Fixed-point weights evaluated from user-supplied local records.

    Shapes are validated; the geometry behind the records is taken on trust.
    """

    def __init__(self, records: Sequence[FixedPointRecord]):
        if not records:
            raise EmptyInputError("No fixed-point records.")
        dims = sorted({r.weight_dimension for r in records})
        if len(dims) > 1:
            raise DimensionMismatchError("Fixed-point records of mixed dimension.", {"dimensions": dims})
        self.records = list(records)
        self._dimension = dims[0]

    @property
    def dimension(self) -> int:
        return self._dimension

    def fixed_point_weights(self) -> List[RationalVector]:
        return [pair_weight(r) for r in self.records]


def weight_source(source: WeightInput) -> BaseWeightSource:
    if isinstance(source, BaseWeightSource):
        return source
    if isinstance(source, PairData):
        return ToricWeightSource(source)
    return FixedPointWeightSource(list(source))


def moment_polytope(source: WeightInput, twist: Optional[RationalVector] = None) -> Polytope:
    polytope = weight_source(source).moment_polytope(twist)
    logger.debug("moment_polytope: %s", polytope)
    return polytope


def export_fixed_point_records(pair: PairData) -> List[FixedPointRecord]:
    """Per-cone local records of a toric pair, in fixed-point order.

    The i-th cotangent weight at sigma is the conormal weight of the i-th ray
    of sigma, so delta_i is that ray's boundary coefficient. Every ray with a
    nonzero auxiliary coefficient contributes a row with m_{j,i} = 1 exactly
    when it is the i-th ray of sigma.
    """
    fan = pair.fan
    aux = pair.aux_or_zero()
    aux_rays = [ray.index for ray in fan.rays if aux[ray.index] != 0]
    records = []
    for cone in fixed_points(fan):
        records.append(FixedPointRecord(
            cotangent=tuple(cotangent_weights(fan, cone)),
            boundary_mults=tuple(pair.boundary[i] for i in cone.ray_indices),
            aux_coeffs=tuple(aux[j] for j in aux_rays),
            aux_mults=tuple(tuple(1 if j == i else 0 for i in cone.ray_indices) for j in aux_rays),
            weight_dimension=fan.dimension,
        ))
    return records


def local_cone_offsets(
    pair: PairData,
    twist: Optional[RationalVector] = None,
    config: Optional[EpsilonSearchConfig] = None,
) -> Dict[Tuple[Cone, int], Optional[Fraction]]:
    """For each fixed point sigma and cotangent weight nu_i there, the largest
    eps of the schedule from which mu_sigma + eps * nu_i stays in P_mu (None if
    no such eps)."""
    schedule = (config or EpsilonSearchConfig()).schedule()
    source = ToricWeightSource(pair)
    shift = twist if twist is not None else RationalVector.zero(source.dimension)
    polytope = source.moment_polytope(shift)
    offsets: Dict[Tuple[Cone, int], Optional[Fraction]] = {}
    for cone in source.cones:
        mu = source.weight_at(cone) + shift
        for position, nu in enumerate(cotangent_weights(pair.fan, cone)):
            flags = [contains(polytope, mu + eps * nu) for eps in schedule]
            found = None
            for k in range(len(schedule)):
                if all(flags[k:]):
                    found = schedule[k]
                    break
            offsets[(cone, cone.ray_indices[position])] = found
    return offsets


def local_cone_check(
    pair: PairData,
    twist: Optional[RationalVector] = None,
    config: Optional[EpsilonSearchConfig] = None,
) -> bool:
    """Whether mu_sigma + eps * nu_i lies in P_mu for all small eps, at every
    fixed point and every cotangent direction."""
    offsets = local_cone_offsets(pair, twist, config)
    failures = [key for key, eps in offsets.items() if eps is None]
    for cone, ray in failures:
        logger.debug("local_cone_check: no eps at %s along ray %d", cone, ray)
    return not failures
