# eqnv/core/models.py
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Tuple, Union

from eqnv.core.errors import DimensionMismatchError, ValidationError

Rational = Union[int, Fraction, str]


def as_fraction(value: Rational) -> Fraction:
    """Converts an int, Fraction or "p/q" string to a Fraction.

    Floats are refused: every quantity in the toolkit is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError("Booleans are not rationals.", {"value": value})
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ValidationError(f"Expected an exact rational, got {type(value).__name__}.", {"value": value})


def parse_rational(text: str) -> Fraction:
    """Parses "p", "p/q" or "-p/q" into a reduced Fraction."""
    stripped = text.strip()
    if not stripped or any(c in stripped for c in ".eE"):
        raise ValidationError(f"Malformed rational {text!r}.", {"value": text})
    try:
        return Fraction(stripped)
    except ZeroDivisionError as e:
        raise ValidationError(f"Zero denominator in rational {text!r}.", {"value": text}) from e
    except ValueError as e:
        raise ValidationError(f"Malformed rational {text!r}.", {"value": text}) from e


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class RationalVector:
    """A point or weight of the character space, with exact rational coordinates.

    Ordering is lexicographic on coordinates; it is the canonical ordering of
    every vertex list the toolkit produces.
    """
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_fraction(c) for c in self.coords))

    @classmethod
    def of(cls, *coords: Rational) -> "RationalVector":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, dim: int) -> "RationalVector":
        return cls((Fraction(0),) * dim)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def _check(self, other: "RationalVector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(
                "Vectors have different dimensions.", {"left": self.dim, "right": other.dim}
            )

    def __add__(self, other: "RationalVector") -> "RationalVector":
        self._check(other)
        return RationalVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        self._check(other)
        return RationalVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "RationalVector":
        return RationalVector(tuple(-a for a in self.coords))

    def __mul__(self, scalar: Rational) -> "RationalVector":
        s = as_fraction(scalar)
        return RationalVector(tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def dot(self, other: "RationalVector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coords)

    def norm_inf(self) -> Fraction:
        return max((abs(a) for a in self.coords), default=Fraction(0))

    def to_strings(self) -> list:
        return [format_rational(a) for a in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


def vector(coords: Iterable[Rational]) -> RationalVector:
    return RationalVector(tuple(coords))


def common_dimension(vectors: Sequence[RationalVector]) -> int:
    """Returns the shared dimension of `vectors`, raising on a mismatch."""
    dims = {v.dim for v in vectors}
    if len(dims) > 1:
        raise DimensionMismatchError("Mixed dimensions in one computation.", {"dimensions": sorted(dims)})
    return dims.pop() if dims else 0


@dataclass(frozen=True, order=True)
class HalfSpace:
    """The closed half-space {u : <u, normal> >= offset}."""
    normal: RationalVector
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "offset", as_fraction(self.offset))
        if self.normal.is_zero():
            raise ValidationError("Half-space normal must be nonzero.")

    def satisfied_by(self, point: RationalVector) -> bool:
        return point.dot(self.normal) >= self.offset
