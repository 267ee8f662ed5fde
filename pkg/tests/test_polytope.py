import random
from fractions import Fraction as F

import pytest

from eqnv.convexcore import linalg
from eqnv.convexcore.polytope import (
    contains, convex_hull, hausdorff_distance, integer_certificate, negate, point_distance,
    rational_coefficients, scale, separating_functional, shrink_hypothesis, shrink_membership, translate,
    verify_integer_certificate, verify_separating_functional,
)
from eqnv.convexcore.representation import vertices_from_halfspaces
from eqnv.core.config import EpsilonSearchConfig
from eqnv.core.errors import DimensionMismatchError, EmptyInputError, InternalInconsistencyError, ValidationError
from eqnv.core.models import HalfSpace, RationalVector, vector

V = RationalVector.of


def segment(a, b):
    return convex_hull([V(a), V(b)])


class TestConvexHull:
    def test_triangle_is_already_extreme(self):
        P = convex_hull([V(0, 0), V(1, 0), V(0, 1)])
        assert P.vertices == (V(0, 0), V(0, 1), V(1, 0))

    def test_midpoint_is_dropped(self):
        P = convex_hull([V(0), V("1/2"), V(1)])
        assert P.vertices == (V(0), V(1))
        assert len(P.generators) == 3

    def test_shifted_pair(self):
        w = -1
        assert convex_hull([V(w), V(w + 1)]).vertices == (V(-1), V(0))

    def test_square_with_interior_and_edge_points(self):
        P = convex_hull([V(0, 0), V(2, 0), V(0, 2), V(2, 2), V(1, 1), V(1, 0), V(0, 0)])
        assert P.vertices == (V(0, 0), V(0, 2), V(2, 0), V(2, 2))
        assert P.dimension == 2

    def test_empty(self):
        with pytest.raises(EmptyInputError, match="empty point set"):
            convex_hull([])

    def test_mixed_dimensions(self):
        with pytest.raises(DimensionMismatchError):
            convex_hull([V(0), V(0, 1)])

    def test_zero_dimensional_space(self):
        P = convex_hull([RationalVector(())])
        assert P.vertices == (RationalVector(()),)
        assert contains(P, RationalVector(()))


class TestMembership:
    @pytest.mark.parametrize("a, expected", [(F(1), True), (F(3, 2), False), (F(1, 2), True), (F(2), False)])
    def test_segment_family(self, a, expected):
        assert contains(segment(a - 1, 1), V(0)) is expected

    def test_centroid(self):
        assert contains(convex_hull([V(1, 0), V(0, 1), V(-1, -1)]), V(0, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            contains(segment(0, 1), V(0, 0))

    def test_lower_dimensional_polytope(self):
        P = convex_hull([V(0, 0), V(2, 2)])
        assert contains(P, V(1, 1))
        assert not contains(P, V(1, 0))


class TestScaleTranslate:
    def test_scale_segment(self):
        w = 0
        assert scale(segment(-(w + 1), -w), 3) == segment(-3, 0)

    def test_scale_identity_and_point(self):
        P = convex_hull([V(0, 0), V(1, 2), V(3, 1)])
        assert scale(P, 1) == P
        assert scale(convex_hull([V(1, 1)]), F(1, 2)).vertices == (V("1/2", "1/2"),)

    def test_scale_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            scale(segment(0, 1), 0)

    def test_translate_and_negate(self):
        P = segment(F(-1, 2), 1)
        assert translate(P, V(1)) == segment(F(1, 2), 2)
        assert negate(P) == segment(-1, F(1, 2))


class TestCoefficients:
    def test_symmetric_pair(self):
        assert rational_coefficients([V(-1), V(1)], V(0)) == [F(1, 2), F(1, 2)]

    def test_vertex(self):
        assert rational_coefficients([V(3, 4)], V(3, 4)) == [1]

    def test_triangle(self):
        lambdas = rational_coefficients([V(0, 0), V(3, 0), V(0, 3)], V(1, 1))
        assert lambdas == [F(1, 3), F(1, 3), F(1, 3)]

    def test_outside(self):
        assert rational_coefficients([V(1), V(2)], V(0)) is None

    def test_random_polytopes_with_interior_point(self, rng):
        # property: coefficients are nonnegative, sum to 1 and reproduce the point
        for _ in range(100):
            dim = rng.randint(1, 3)
            points = [vector(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(dim)) for _ in range(dim + 3)]
            weights = [F(rng.randint(1, 5)) for _ in points]
            total = sum(weights)
            target = vector(sum(w * p[j] for w, p in zip(weights, points)) / total for j in range(dim))
            lambdas = rational_coefficients(points, target)
            assert lambdas is not None
            assert all(l >= 0 for l in lambdas)
            assert sum(lambdas) == 1
            assert vector(sum(l * p[j] for l, p in zip(lambdas, points)) for j in range(dim)) == target
            support = [p for l, p in zip(lambdas, points) if l > 0]
            assert len(support) <= dim + 1
            # affinely independent support, so the coefficients on it are unique
            assert linalg.rank([list(p - support[0]) for p in support[1:]]) == len(support) - 1


class TestIntegerCertificate:
    def test_symmetric_pair(self):
        assert integer_certificate([V(-1), V(1)]) == [1, 1]

    def test_zero_weight(self):
        assert integer_certificate([V(0)]) == [1]

    def test_anticanonical_triangle(self):
        assert integer_certificate([V(2, -1), V(-1, 2), V(-1, -1)]) == [1, 1, 1]

    def test_half_integral_segment(self):
        assert integer_certificate([V(F(-1, 2)), V(1)]) == [2, 1]

    def test_no_certificate(self):
        assert integer_certificate([V(1), V(2)]) is None

    def test_random_certificates(self, rng):
        for _ in range(100):
            dim = rng.randint(1, 3)
            points = [vector(F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(dim)) for _ in range(dim + 2)]
            centroid = vector(sum(p[j] for p in points) / len(points) for j in range(dim))
            shifted = [p - centroid for p in points]
            ks = integer_certificate(shifted)
            assert ks is not None
            assert all(k >= 0 for k in ks) and sum(ks) >= 1
            verify_integer_certificate(shifted, ks)

    def test_verification_rejects_bad_certificate(self):
        with pytest.raises(InternalInconsistencyError):
            verify_integer_certificate([V(-1), V(1)], [1, 2])
        with pytest.raises(InternalInconsistencyError):
            verify_integer_certificate([V(-1), V(1)], [0, 0])

    def test_transcript_prints_the_identity(self):
        lines = verify_integer_certificate([V(-1), V(1)], [1, 1])
        assert lines[0] == "sum_i k_i*w_i = 1*(-1) + 1*(1) = (0)"


class TestSeparatingFunctional:
    def test_positive_segment(self):
        assert separating_functional(segment(F(1, 2), 1), V(0)) == V(1)

    def test_positive_orthant_face(self):
        assert separating_functional(convex_hull([V(1, 0), V(0, 1)]), V(0, 0)) == V(1, 1)

    def test_negative_segment(self):
        assert separating_functional(segment(-2, -1), V(0)) == V(-1)

    def test_inside_returns_none(self):
        assert separating_functional(segment(-1, 1), V(0)) is None

    def test_random_polytopes_missing_origin(self, rng):
        schedule = EpsilonSearchConfig().schedule()
        for _ in range(50):
            dim = rng.randint(1, 3)
            offset = vector(F(rng.randint(1, 4)) if j == 0 else F(0) for j in range(dim))
            points = [
                vector(F(rng.randint(0, 6), rng.randint(1, 3)) * (1 if j == 0 else rng.choice((1, -1))) for j in range(dim)) + offset
                for _ in range(dim + 2)
            ]
            P = convex_hull(points)
            phi = separating_functional(P, RationalVector.zero(dim))
            assert phi is not None
            assert all(phi.dot(v) > 0 for v in P.vertices)
            # pulling the phi-minimizing vertex towards 0 leaves P
            w = min(P.vertices, key=lambda v: (phi.dot(v), v))
            assert not shrink_membership(P, w, schedule[-1])
            assert shrink_hypothesis(P, schedule)[w] is False

    def test_verification_rejects_non_separating(self):
        with pytest.raises(InternalInconsistencyError):
            verify_separating_functional((V(-1), V(1)), V(0), V(1))


class TestShrink:
    def test_shrink_inside(self):
        assert shrink_membership(segment(F(-1, 2), 1), V(1), F(1, 10))

    def test_shrink_outside(self):
        assert not shrink_membership(segment(1, 2), V(1), F(1, 10))

    def test_origin_inside_means_every_vertex_shrinks(self):
        P = convex_hull([V(2, -1), V(-1, 2), V(-1, -1)])
        for w in P.vertices:
            for eps in (F(1, 2), F(1, 7), F(99, 100)):
                assert shrink_membership(P, w, eps)
        assert all(shrink_hypothesis(P, EpsilonSearchConfig().schedule()).values())

    def test_shrink_requires_a_generator(self):
        with pytest.raises(ValidationError):
            shrink_membership(segment(0, 1), V(F(1, 2)), F(1, 10))

    def test_shrink_requires_positive_eps(self):
        with pytest.raises(ValidationError):
            shrink_membership(segment(0, 1), V(1), 0)


class TestDistances:
    def test_identical(self):
        P = convex_hull([V(0, 0), V(1, 2), V(3, 1)])
        assert hausdorff_distance(P, P) == 0

    def test_segments(self):
        assert hausdorff_distance(segment(0, 1), segment(0, 2)) == 1

    def test_point_distance_sup_norm(self):
        square = convex_hull([V(0, 0), V(1, 0), V(0, 1), V(1, 1)])
        assert point_distance(square, V(3, F(1, 2))) == 2
        assert point_distance(square, V(2, 3)) == 2
        assert point_distance(square, V(F(1, 2), F(1, 2))) == 0

    def test_translation_distance(self):
        P = convex_hull([V(0, 0), V(2, 0), V(0, 2)])
        shift = V(F(1, 3), F(-1, 4))
        assert hausdorff_distance(P, translate(P, shift)) <= shift.norm_inf()

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            hausdorff_distance(segment(0, 1), convex_hull([V(0, 0)]))


class TestHalfspaces:
    def test_square(self):
        square = convex_hull([V(0, 0), V(1, 0), V(0, 1), V(1, 1)])
        assert len(square.halfspaces) == 4
        assert all(square.satisfies_halfspaces(v) for v in square.vertices)
        assert not square.satisfies_halfspaces(V(2, 0))

    def test_segment_in_the_plane_has_equalities(self):
        P = convex_hull([V(0, 0), V(2, 2)])
        normals = {h.normal for h in P.halfspaces}
        assert V(1, -1) in normals and V(-1, 1) in normals
        assert P.dimension == 1

    def test_agrees_with_contains(self):
        generator = random.Random(5)
        for _ in range(30):
            points = [V(generator.randint(-3, 3), generator.randint(-3, 3)) for _ in range(5)]
            P = convex_hull(points)
            for _ in range(5):
                x = V(F(generator.randint(-8, 8), 2), F(generator.randint(-8, 8), 2))
                assert P.satisfies_halfspaces(x) == contains(P, x)

    def test_paraboloid_lattice_points(self):
        points = [V(x, y, x * x + y * y) for x in range(-2, 3) for y in range(-2, 3)]
        P = convex_hull(points)
        assert len(P.vertices) == 25
        for h in P.halfspaces:
            assert all(h.satisfied_by(v) for v in P.vertices)
            assert sum(1 for v in P.vertices if v.dot(h.normal) == h.offset) >= 3
        assert P.satisfies_halfspaces(V(0, 0, 4))
        assert not P.satisfies_halfspaces(V(0, 0, -1))
        assert not P.satisfies_halfspaces(V(2, 2, 7))

    def test_vertices_come_back_from_halfspaces(self, rng):
        for _ in range(30):
            P = random_polytope(rng)
            assert vertices_from_halfspaces(P.halfspaces, P.ambient_dim) == list(P.vertices)

    def test_empty_intersection(self):
        assert vertices_from_halfspaces([HalfSpace(V(1), 1), HalfSpace(V(-1), 0)], 1) == []

    def test_unbounded_intersection(self):
        with pytest.raises(ValidationError):
            vertices_from_halfspaces([HalfSpace(V(1, 0), 0), HalfSpace(V(0, 1), 0)], 2)


def random_polytope(rng, dim=None):
    dim = dim or rng.randint(1, 3)
    count = rng.randint(1, dim + 4)
    return convex_hull([vector(F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(dim)) for _ in range(count)])


class TestRandomInvariants:
    def test_hull_is_idempotent(self, rng):
        for _ in range(60):
            P = random_polytope(rng)
            assert convex_hull(list(P.vertices)) == P
            assert convex_hull(list(P.generators) + list(P.vertices)) == P

    def test_scaling_round_trip(self, rng):
        for _ in range(60):
            P = random_polytope(rng)
            m = rng.choice((2, 3, F(5, 2), F(1, 4)))
            assert scale(scale(P, m), 1 / F(m)) == P

    def test_membership_views_agree(self, rng):
        for _ in range(60):
            P = random_polytope(rng)
            for _ in range(4):
                x = vector(F(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(P.ambient_dim))
                inside = contains(P, x)
                assert (rational_coefficients(list(P.vertices), x) is not None) is inside
                assert (separating_functional(P, x) is None) is inside

    def test_vertex_shrinking_decides_the_origin(self, rng):
        schedule = EpsilonSearchConfig().schedule()
        seen = {True: 0, False: 0}
        for _ in range(60):
            P = random_polytope(rng)
            origin_inside = contains(P, RationalVector.zero(P.ambient_dim))
            assert all(shrink_hypothesis(P, schedule).values()) is origin_inside
            seen[origin_inside] += 1
        assert seen[True] and seen[False]

    def test_hausdorff_is_a_metric(self, rng):
        for _ in range(30):
            dim = rng.randint(1, 3)
            P, Q, R = (random_polytope(rng, dim) for _ in range(3))
            assert hausdorff_distance(P, Q) == hausdorff_distance(Q, P)
            assert hausdorff_distance(P, R) <= hausdorff_distance(P, Q) + hausdorff_distance(Q, R)
            assert (hausdorff_distance(P, Q) == 0) is (P == Q)
