# eqnv/verdict/pipeline.py
"""Origin-membership decision for moment polytopes.

0 lies in P_mu exactly when some positive power of the linearized bundle has
a nonzero torus-invariant section. A yes-answer comes with integers k_i
(the exponents of an invariant monomial in eigen-sections), a no-answer with
a functional that is strictly positive on P_mu.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence

from eqnv.convexcore.polytope import (
    Polytope, contains, integer_certificate, lcm_of_denominators, separating_functional,
)
from eqnv.core.errors import InternalInconsistencyError, ValidationError
from eqnv.core.models import Rational, RationalVector, as_fraction
from eqnv.verdict.models import NO, YES, InvariantSectionCertificate, SeparatingCertificate, Verdict

logger = logging.getLogger(__name__)


def check_sub_lc(coefficients: Sequence[Rational], effective_required: bool = False) -> bool:
    """All coefficients <= 1 (and >= 0 when effectivity is required)."""
    values = [as_fraction(a) for a in coefficients]
    if any(a > 1 for a in values):
        return False
    if effective_required and any(a < 0 for a in values):
        return False
    return True


def check_equivariant_nonvanishing(
    P_mu: Polytope,
    multiple: Optional[int] = None,
    context: Optional[Dict[str, Any]] = None,
) -> Verdict:
    """Decides 0 in P_mu and returns a verified Verdict.

    The witness degree is multiple * sum(k_i); `multiple` defaults to the least
    integer clearing the vertex denominators.
    """
    if multiple is not None and multiple < 1:
        raise ValidationError("Normalizing multiple must be positive.", {"multiple": multiple})
    origin = RationalVector.zero(P_mu.ambient_dim)
    if contains(P_mu, origin):
        ks = integer_certificate(P_mu.vertices)
        if ks is None:
            raise InternalInconsistencyError("Origin is in the polytope but no certificate was found.")
        m0 = multiple if multiple is not None else lcm_of_denominators(P_mu.vertices)
        certificate = InvariantSectionCertificate(
            multiplicities=tuple(ks),
            weights=tuple(P_mu.vertices),
            witness_degree=m0 * sum(ks),
        )
        verdict = Verdict(YES, certificate, P_mu, dict(context or {}))
    else:
        phi = separating_functional(P_mu, origin)
        verdict = Verdict(NO, SeparatingCertificate(phi), P_mu, dict(context or {}))
    logger.debug("check_equivariant_nonvanishing: %s for %s", verdict.answer, P_mu)
    return verdict


def verify_verdict(verdict: Verdict) -> List[str]:
    """Re-runs the exact certificate check; returns the printed transcript."""
    if verdict.answer == YES:
        lines = verdict.certificate.verify()
        if not contains(verdict.moment_polytope, RationalVector.zero(verdict.moment_polytope.ambient_dim)):
            raise InternalInconsistencyError("Yes-verdict for a polytope that misses the origin.")
        return lines
    lines = verdict.certificate.verify(verdict.moment_polytope.vertices)
    minimum = verdict.certificate.minimum(verdict.moment_polytope.vertices)
    return lines + [f"min_v phi(v) = {minimum} > 0"]
