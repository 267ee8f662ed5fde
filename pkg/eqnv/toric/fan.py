# eqnv/toric/fan.py
"""Fans of smooth complete toric varieties.

Maximal cones are the torus fixed points; the dual basis of a smooth cone's
rays gives the cotangent weights at that fixed point. The sign convention is
the one under which section weights of O(D) are the lattice points of
P_D = {u : <u, v_rho> >= -a_rho}, so cotangent weights are the positive dual
basis. Negating the lattice flips every weight and no verdict.
"""
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from typing import List, Optional, Sequence, Tuple

from eqnv.convexcore import linalg
from eqnv.core.config import CompletenessConfig
from eqnv.core.errors import FanError, NotCompleteError, NotSmoothError, ValidationError
from eqnv.core.models import RationalVector

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]


@dataclass(frozen=True)
class Ray:
    """Primitive generator of a one-dimensional cone."""
    index: int
    vector: IntVector

    def as_vector(self) -> RationalVector:
        return RationalVector(self.vector)


@dataclass(frozen=True, order=True)
class Cone:
    """A cone given by the (sorted) indices of its rays."""
    ray_indices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ray_indices", tuple(sorted(self.ray_indices)))

    def __contains__(self, ray_index: int) -> bool:
        return ray_index in self.ray_indices

    def __len__(self) -> int:
        return len(self.ray_indices)

    def __str__(self) -> str:
        return "cone(" + ",".join(str(i) for i in self.ray_indices) + ")"


@dataclass
class FanDiagnostics:
    """Result of validate_fan."""
    smooth: bool
    complete: bool
    messages: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class Fan:
    """A simplicial fan: dimension, primitive rays and maximal cones.

    Structural problems (non-primitive, zero or duplicate rays, cone indices
    out of range) raise FanError on construction; smoothness and completeness
    are reported by validate_fan.
    """
    dimension: int
    rays: Tuple[Ray, ...]
    max_cones: Tuple[Cone, ...]
    trusted_complete: bool = False

    def __post_init__(self):
        seen = set()
        for position, ray in enumerate(self.rays):
            if ray.index != position:
                raise FanError("Ray indices must be 0..k-1 in order.", {"ray": ray.index, "position": position})
            if len(ray.vector) != self.dimension:
                raise FanError("Ray has the wrong dimension.", {"ray": ray.index, "dimension": len(ray.vector)})
            if all(c == 0 for c in ray.vector):
                raise FanError("Ray vector must be nonzero.", {"ray": ray.index})
            if reduce(math.gcd, (abs(c) for c in ray.vector), 0) != 1:
                raise FanError("Ray vector is not primitive.", {"ray": ray.index, "vector": ray.vector})
            if ray.vector in seen:
                raise FanError("Duplicate ray.", {"ray": ray.index, "vector": ray.vector})
            seen.add(ray.vector)
        cones = set()
        for cone in self.max_cones:
            if any(i < 0 or i >= len(self.rays) for i in cone.ray_indices):
                raise FanError("Cone refers to a missing ray.", {"cone": str(cone)})
            if len(set(cone.ray_indices)) != len(cone.ray_indices):
                raise FanError("Cone repeats a ray.", {"cone": str(cone)})
            if cone in cones:
                raise FanError("Duplicate cone.", {"cone": str(cone)})
            cones.add(cone)

    @classmethod
    def from_vectors(
        cls,
        dimension: int,
        ray_vectors: Sequence[Sequence[int]],
        cones: Sequence[Sequence[int]],
        trusted_complete: bool = False,
    ) -> "Fan":
        for v in ray_vectors:
            if any(not isinstance(c, int) or isinstance(c, bool) for c in v):
                raise FanError("Ray coordinates must be integers.", {"vector": list(v)})
        rays = tuple(Ray(i, tuple(v)) for i, v in enumerate(ray_vectors))
        return cls(dimension, rays, tuple(Cone(tuple(c)) for c in cones), trusted_complete)

    def ray_vector(self, index: int) -> RationalVector:
        return self.rays[index].as_vector()

    def ray_matrix(self, cone: Cone) -> List[List[Fraction]]:
        return [[Fraction(c) for c in self.rays[i].vector] for i in cone.ray_indices]

    @cached_property
    def diagnostics(self) -> FanDiagnostics:
        return validate_fan(self)

    def conormal_weight(self, cone: Cone, ray_index: int) -> RationalVector:
        """Cotangent weight at `cone` paired with the divisor of `ray_index`."""
        if ray_index not in cone:
            raise ValidationError("Ray is not a ray of the cone.", {"ray": ray_index, "cone": str(cone)})
        return cotangent_weights(self, cone)[cone.ray_indices.index(ray_index)]


@lru_cache(maxsize=8192)
def _dual_basis(ray_vectors: Tuple[IntVector, ...]) -> Optional[Tuple[RationalVector, ...]]:
    rows = [[Fraction(c) for c in v] for v in ray_vectors]
    inv = linalg.inverse(rows)
    if inv is None:
        return None
    n = len(rows)
    # u_i is the i-th column of R^{-1}: <u_i, v_j> = delta_ij.
    return tuple(RationalVector(tuple(inv[k][i] for k in range(n))) for i in range(n))


def _coordinates_in_cone(fan: Fan, cone: Cone, point: Sequence[Fraction]) -> Optional[List[Fraction]]:
    basis = _dual_basis(tuple(fan.rays[i].vector for i in cone.ray_indices))
    if basis is None:
        return None
    p = RationalVector(tuple(point))
    return [u.dot(p) for u in basis]


def _sample_points(n: int) -> List[Tuple[Fraction, ...]]:
    magnitudes = [Fraction(p, 7) for p in (3, 5, 11, 13, 17, 19, 23, 29)][:n]
    samples = []
    for signs in itertools.product((1, -1), repeat=n):
        samples.append(tuple(s * m for s, m in zip(signs, magnitudes)))
    for i in range(n):
        samples.append(tuple(Fraction(101 if j == i else 1, 97) for j in range(n)))
        samples.append(tuple(Fraction(-101 if j == i else -1, 97) for j in range(n)))
    return samples


def validate_fan(fan: Fan, config: Optional[CompletenessConfig] = None) -> FanDiagnostics:
    """Smoothness and completeness of a fan.

    smooth: every maximal cone has n rays and a ray matrix of determinant +-1.
    complete: in dimension <= config.max_checked_dimension every (n-1)-face of
    a maximal cone lies in exactly two maximal cones and a fixed set of sample
    vectors each lies in some maximal cone, never in the interior of two.
    Higher dimensions are accepted only when the fan or config trusts them.
    """
    config = config or CompletenessConfig()
    n = fan.dimension
    messages: List[str] = []
    smooth = True
    simplicial = True

    if not fan.max_cones:
        messages.append("fan has no maximal cones; it covers nothing")
        return FanDiagnostics(smooth=True, complete=False, messages=messages)

    for cone in fan.max_cones:
        if len(cone) != n:
            messages.append(f"{cone} has {len(cone)} rays; not maximal in dimension {n}")
            smooth = False
            simplicial = False
            continue
        det = linalg.determinant(fan.ray_matrix(cone))
        if det == 0:
            messages.append(f"{cone} is not full dimensional")
            smooth = False
            simplicial = False
        elif abs(det) != 1:
            messages.append(f"{cone} has determinant {det}; not smooth")
            smooth = False

    if not simplicial:
        return FanDiagnostics(smooth=smooth, complete=False, messages=messages)

    if n == 0:
        complete = len(fan.max_cones) == 1
        return FanDiagnostics(smooth=smooth, complete=complete, messages=messages)

    if n > config.max_checked_dimension:
        complete = fan.trusted_complete or config.trusted_complete
        messages.append(
            "completeness trusted" if complete else f"completeness not checked in dimension {n}"
        )
        return FanDiagnostics(smooth=smooth, complete=complete, messages=messages)

    complete = True
    facets = Counter()
    for cone in fan.max_cones:
        for facet in itertools.combinations(cone.ray_indices, n - 1):
            facets[facet] += 1
    for facet, count in sorted(facets.items()):
        if count != 2:
            messages.append(f"facet {facet} lies in {count} maximal cones")
            complete = False

    for point in _sample_points(n):
        hits = 0
        interior_hits = 0
        for cone in fan.max_cones:
            coords = _coordinates_in_cone(fan, cone, point)
            if coords is not None and all(c >= 0 for c in coords):
                hits += 1
                if all(c > 0 for c in coords):
                    interior_hits += 1
        if hits == 0:
            messages.append(f"sample point {tuple(str(c) for c in point)} is not covered")
            complete = False
        if interior_hits > 1:
            messages.append(f"sample point {tuple(str(c) for c in point)} lies inside {interior_hits} cones")
            complete = False

    logger.debug("validate_fan: n=%d rays=%d cones=%d smooth=%s complete=%s",
                 n, len(fan.rays), len(fan.max_cones), smooth, complete)
    return FanDiagnostics(smooth=smooth, complete=complete, messages=messages)


def require_smooth_complete(fan: Fan, config: Optional[CompletenessConfig] = None) -> FanDiagnostics:
    diagnostics = validate_fan(fan, config) if config is not None else fan.diagnostics
    if not diagnostics.smooth:
        raise NotSmoothError("Fan is not smooth.", {"messages": "; ".join(diagnostics.messages)})
    if not diagnostics.complete:
        raise NotCompleteError("Fan is not complete.", {"messages": "; ".join(diagnostics.messages)})
    return diagnostics


def fixed_points(fan: Fan, config: Optional[CompletenessConfig] = None) -> List[Cone]:
    """Torus fixed points, one per maximal cone, in sorted order."""
    require_smooth_complete(fan, config)
    return sorted(fan.max_cones)


def cotangent_weights(fan: Fan, cone: Cone) -> List[RationalVector]:
    """Dual basis of the cone's rays, in the cone's ray order."""
    if len(cone) != fan.dimension:
        raise NotSmoothError("Cotangent weights need a maximal cone.", {"cone": str(cone)})
    key = tuple(fan.rays[i].vector for i in cone.ray_indices)
    basis = _dual_basis(key)
    if basis is None or abs(linalg.determinant(fan.ray_matrix(cone))) != 1:
        raise NotSmoothError("Cone is not unimodular.", {"cone": str(cone)})
    return list(basis)


# --- fan constructions -----------------------------------------------------

def projective_space(n: int) -> Fan:
    """Fan of projective n-space: e_1..e_n and -(e_1+...+e_n)."""
    if n < 1:
        raise ValidationError("Projective space needs n >= 1.", {"n": n})
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan.from_vectors(n, rays, cones)


def hirzebruch(a: int) -> Fan:
    """Hirzebruch surface F_a."""
    return Fan.from_vectors(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def product(first: Fan, second: Fan) -> Fan:
    n1, n2 = first.dimension, second.dimension
    rays = [r.vector + (0,) * n2 for r in first.rays] + [(0,) * n1 + r.vector for r in second.rays]
    offset = len(first.rays)
    cones = [
        c1.ray_indices + tuple(i + offset for i in c2.ray_indices)
        for c1 in first.max_cones
        for c2 in second.max_cones
    ]
    return Fan.from_vectors(n1 + n2, rays, cones, first.trusted_complete and second.trusted_complete)


def blow_up(fan: Fan, cone: Cone) -> Fan:
    """Star subdivision of a smooth maximal cone by the sum of its rays."""
    if cone not in fan.max_cones:
        raise ValidationError("Cone is not a maximal cone of the fan.", {"cone": str(cone)})
    cotangent_weights(fan, cone)
    new_vector = tuple(sum(fan.rays[i].vector[k] for i in cone.ray_indices) for k in range(fan.dimension))
    rays = [r.vector for r in fan.rays] + [new_vector]
    new_index = len(fan.rays)
    cones = [c.ray_indices for c in fan.max_cones if c != cone]
    for dropped in cone.ray_indices:
        cones.append(tuple(i for i in cone.ray_indices if i != dropped) + (new_index,))
    return Fan.from_vectors(fan.dimension, rays, cones, fan.trusted_complete)


def transform(fan: Fan, matrix: Sequence[Sequence[int]]) -> Fan:
    """Image of the fan under an element of GL_n(Z) acting on N."""
    n = fan.dimension
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValidationError("Transformation matrix has the wrong shape.", {"dimension": n})
    if abs(linalg.determinant([[Fraction(a) for a in row] for row in matrix])) != 1:
        raise ValidationError("Transformation must be unimodular.")
    rays = [tuple(sum(matrix[i][k] * r.vector[k] for k in range(n)) for i in range(n)) for r in fan.rays]
    return Fan.from_vectors(n, rays, [c.ray_indices for c in fan.max_cones], fan.trusted_complete)


def negate(fan: Fan) -> Fan:
    """Fan of the torus reparametrized by t -> 1/t; every weight changes sign."""
    n = fan.dimension
    return transform(fan, [[-1 if i == j else 0 for j in range(n)] for i in range(n)])
