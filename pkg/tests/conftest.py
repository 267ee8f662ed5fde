import random
from fractions import Fraction

import pytest

from eqnv.toric.divisor import TDivisor, canonical_divisor, cartier_data, positivity
from eqnv.toric.fan import Fan, blow_up, hirzebruch, product, projective_space, transform

CORPUS_SEED = 20240611
CORPUS_SIZE = 120


def projective_line() -> Fan:
    """Rays e1 (index 0, the divisor {0}) and -e1."""
    return projective_space(1)


def random_unimodular(rng: random.Random, n: int, steps: int = 3):
    matrix = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n < 2:
        return [[rng.choice((1, -1))]] if n == 1 else matrix
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((1, -1))
        matrix[i] = [a + c * b for a, b in zip(matrix[i], matrix[j])]
    if rng.random() < 0.5:
        matrix[0] = [-a for a in matrix[0]]
    return matrix


def random_fan(rng: random.Random) -> Fan:
    """A smooth complete fan of dimension 1, 2 or 3."""
    base = rng.choice([
        lambda: projective_space(1),
        lambda: projective_space(2),
        lambda: projective_space(3),
        lambda: hirzebruch(rng.randint(0, 3)),
        lambda: product(projective_space(1), projective_space(1)),
        lambda: product(projective_space(1), projective_space(2)),
        lambda: product(hirzebruch(1), projective_space(1)),
    ])()
    for _ in range(rng.randint(0, 2)):
        if base.dimension >= 2 and len(base.rays) < 8:
            base = blow_up(base, rng.choice(sorted(base.max_cones)))
    if rng.random() < 0.7:
        base = transform(base, random_unimodular(rng, base.dimension))
    return base


def random_divisor(rng: random.Random, fan: Fan, choices=(-1, 0, 1, 2)) -> TDivisor:
    return TDivisor(tuple(Fraction(rng.choice(choices)) for _ in fan.rays))


def random_nef_divisor(rng: random.Random, fan: Fan, tries: int = 60) -> TDivisor:
    for _ in range(tries):
        D = random_divisor(rng, fan)
        if positivity(fan, D).nef:
            return D
    anti = -canonical_divisor(fan)
    return anti if positivity(fan, anti).nef else TDivisor.zero(fan)


BOUNDARY_CHOICES = (Fraction(-1, 2), Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(2, 3), Fraction(1))


def effective_nef_boundary(rng: random.Random, fan: Fan) -> TDivisor:
    """Boundary with coefficients in [0, 1] such that -(K + D) is nef.

    A random nef E is moved by the principal divisor of one of its fixed-point
    weights u_sigma, which makes every coefficient nonnegative, then scaled
    into [0, 1]; D = sum (1 - e_rho) D_rho.
    """
    E = random_nef_divisor(rng, fan)
    u = rng.choice(cartier_data(fan, E).weights)
    shifted = [E[ray.index] + u.dot(ray.as_vector()) for ray in fan.rays]
    top = max(shifted, default=Fraction(0))
    factor = Fraction(rng.randint(1, 4), 4) / top if top > 0 else Fraction(0)
    return TDivisor(tuple(1 - factor * e for e in shifted))


def random_sub_lc_boundary(rng: random.Random, fan: Fan, ample: bool = False, tries: int = 60):
    """Boundary with coefficients <= 1 such that -(K + D) is nef (or ample).

    Falls back to effective_nef_boundary when random coefficients never give a
    nef divisor; with ample=True there is no fallback and None is returned.
    """
    for _ in range(tries):
        D = TDivisor(tuple(rng.choice(BOUNDARY_CHOICES) for _ in fan.rays))
        flags = positivity(fan, -(canonical_divisor(fan) + D))
        if flags.ample or (flags.nef and not ample):
            return D
    if ample:
        return None
    return effective_nef_boundary(rng, fan)


@pytest.fixture
def rng():
    return random.Random(CORPUS_SEED)


@pytest.fixture(scope="session")
def fan_corpus():
    generator = random.Random(CORPUS_SEED)
    return [random_fan(generator) for _ in range(CORPUS_SIZE)]


@pytest.fixture
def line():
    return projective_line()


@pytest.fixture
def plane():
    return projective_space(2)
