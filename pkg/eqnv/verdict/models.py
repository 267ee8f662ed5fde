# eqnv/verdict/models.py
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from eqnv.convexcore.polytope import Polytope, verify_integer_certificate, verify_separating_functional
from eqnv.core.errors import InternalInconsistencyError
from eqnv.core.models import RationalVector, format_rational

YES = "yes"
NO = "no"


@dataclass(frozen=True)
class InvariantSectionCertificate:
    """Nonnegative integers k_i with sum k_i w_i = 0 over the weights w_i.

    The monomial prod s_i^{k_i} of eigen-sections is then an invariant section
    of degree `witness_degree`.
    """
    multiplicities: Tuple[int, ...]
    weights: Tuple[RationalVector, ...]
    witness_degree: int
    kind: str = field(default="invariant_section", init=False)

    def verify(self) -> List[str]:
        return verify_integer_certificate(self.weights, self.multiplicities)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "multiplicities": list(self.multiplicities),
            "weights": [w.to_strings() for w in self.weights],
            "witness_degree": self.witness_degree,
        }


@dataclass(frozen=True)
class SeparatingCertificate:
    """A functional phi strictly positive on the moment polytope."""
    phi: RationalVector
    kind: str = field(default="separating_functional", init=False)

    def verify(self, vertices: Tuple[RationalVector, ...]) -> List[str]:
        return verify_separating_functional(vertices, RationalVector.zero(self.phi.dim), self.phi)

    def minimum(self, vertices: Tuple[RationalVector, ...]) -> Fraction:
        return min(self.phi.dot(v) for v in vertices)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "phi": self.phi.to_strings()}


Certificate = Union[InvariantSectionCertificate, SeparatingCertificate]


@dataclass(frozen=True)
class Verdict:
    """Answer to "does some power have a nonzero invariant section?".

    The certificate is re-verified on construction; a certificate that does
    not check out raises InternalInconsistencyError.
    """
    answer: str
    certificate: Certificate
    moment_polytope: Polytope
    context: Dict[str, Any] = field(default_factory=dict)
    transcript: Tuple[str, ...] = field(default=(), init=False, compare=False)

    def __post_init__(self):
        if self.answer == YES:
            if not isinstance(self.certificate, InvariantSectionCertificate):
                raise InternalInconsistencyError("A yes-verdict needs an invariant-section certificate.")
            lines = self.certificate.verify()
        elif self.answer == NO:
            if not isinstance(self.certificate, SeparatingCertificate):
                raise InternalInconsistencyError("A no-verdict needs a separating functional.")
            lines = self.certificate.verify(self.moment_polytope.vertices)
        else:
            raise InternalInconsistencyError("Unknown answer.", {"answer": self.answer})
        object.__setattr__(self, "transcript", tuple(lines))

    @property
    def is_yes(self) -> bool:
        return self.answer == YES


@dataclass(frozen=True)
class KappaReport:
    """Invariant section counts by degree.

    kappa_lower is 0 when some listed degree has an invariant section and None
    ("-inf up to m_max") otherwise; kappa_bundle is dim P_D, None when empty.
    """
    m_max: int
    degrees: Tuple[int, ...]
    invariant_dims: Tuple[int, ...]
    kappa_bundle: Optional[int]

    @property
    def kappa_lower(self) -> Optional[int]:
        return 0 if any(d > 0 for d in self.invariant_dims) else None

    def kappa_lower_label(self) -> str:
        return "0" if self.kappa_lower == 0 else f"-inf up to m_max={self.m_max}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degrees": list(self.degrees),
            "invariant_dims": list(self.invariant_dims),
            "kappa_lower": self.kappa_lower_label(),
            "kappa_bundle": "-inf" if self.kappa_bundle is None else self.kappa_bundle,
        }


@dataclass(frozen=True)
class PerturbationReport:
    """Hausdorff distances d(P_eps, P_0) when an ample divisor eps * A is added."""
    constant: Fraction
    rows: Tuple[Tuple[Fraction, Fraction], ...]

    @property
    def within_bound(self) -> bool:
        return all(d <= self.constant * eps for eps, d in self.rows)

    @property
    def monotone(self) -> bool:
        """Distances do not increase as eps decreases."""
        ordered = sorted(self.rows, key=lambda row: row[0], reverse=True)
        return all(later[1] <= earlier[1] for earlier, later in zip(ordered, ordered[1:]))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "constant": format_rational(self.constant),
            "rows": [{"eps": format_rational(e), "distance": format_rational(d)} for e, d in self.rows],
            "within_bound": self.within_bound,
            "monotone": self.monotone,
        }
