# eqnv/verdict/checker.py
import dataclasses
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from eqnv.convexcore.polytope import Polytope, hausdorff_distance
from eqnv.core.config import EngineConfig
from eqnv.core.errors import ConfigurationError, InternalInconsistencyError, ValidationError
from eqnv.core.models import Rational, RationalVector, as_fraction, format_rational
from eqnv.equivariant.base import FixedPointRecord, LinearizedBundle, PairData
from eqnv.equivariant.weights import (
    FixedPointWeightSource, ToricWeightSource, export_fixed_point_records, local_cone_check,
)
from eqnv.toric.divisor import (
    TDivisor, invariant_dimension, kodaira_dimension, positivity, section_polytope, section_weights,
)
from eqnv.toric.fan import Fan, require_smooth_complete
from eqnv.verdict.models import NO, KappaReport, PerturbationReport, Verdict
from eqnv.verdict.pipeline import check_equivariant_nonvanishing, check_sub_lc

logger = logging.getLogger(__name__)


class NonVanishingChecker:
    """Runs the non-vanishing pipeline under one EngineConfig.

    The checker holds no state besides its configuration; one instance can be
    shared between threads.
    """

    def __init__(self, config: Optional[EngineConfig] = None):
        config = config if config is not None else EngineConfig()
        if not isinstance(config, EngineConfig):
            raise ConfigurationError("Invalid EngineConfig provided.")
        self.config = config

    def _resolve_twist(self, dimension: int, twist: Optional[RationalVector]) -> RationalVector:
        twist = twist if twist is not None else RationalVector.zero(dimension)
        if twist.dim != dimension:
            raise ValidationError("Twist dimension differs from the torus.", {"twist": twist.dim, "torus": dimension})
        return twist

    def validate(self, fan: Fan) -> Fan:
        """Checks the fan under this config; returns it marked as checked so
        that downstream fixed-point lookups accept it."""
        require_smooth_complete(fan, self.config.completeness)
        if fan.trusted_complete:
            return fan
        return dataclasses.replace(fan, trusted_complete=True)

    def _adopt(self, pair: PairData) -> PairData:
        fan = self.validate(pair.fan)
        return pair if fan is pair.fan else PairData(fan, pair.boundary, pair.aux)

    def run_pipeline(self, pair: PairData, twist: Optional[RationalVector] = None) -> Verdict:
        """Verdict for -(K + D - A) on a toric pair with a twisted linearization.

        Raises InternalInconsistencyError when the boundary is sub-lc, the
        divisor is nef, the twist is trivial and the answer is still no.
        """
        pair = self._adopt(pair)
        twist = self._resolve_twist(pair.fan.dimension, twist)
        divisor = pair.anti_log_divisor()
        flags = positivity(pair.fan, divisor)
        sub_lc = check_sub_lc(pair.boundary.coeffs)
        bundle = LinearizedBundle(divisor, twist)
        P_mu = ToricWeightSource(pair).moment_polytope(twist)
        context: Dict[str, Any] = {
            "mode": "toric",
            "sub_lc": sub_lc,
            "log_canonical": check_sub_lc(pair.boundary.coeffs, effective_required=True),
            "nef": flags.nef,
            "ample": flags.ample,
            "basepoint_free": flags.basepoint_free,
            "semiample": flags.semiample,
            "multiple": bundle.multiple,
            "twist": twist.to_strings(),
        }
        verdict = check_equivariant_nonvanishing(P_mu, bundle.multiple, context)
        if sub_lc and flags.nef and twist.is_zero() and verdict.answer == NO:
            raise InternalInconsistencyError(
                "Sub-lc pair with nef anti-log-canonical divisor has no invariant section.",
                {"boundary": [format_rational(a) for a in pair.boundary.coeffs]},
            )
        logger.info("run_pipeline: %s (sub_lc=%s, nef=%s)", verdict.answer, sub_lc, flags.nef)
        return verdict

    def run_records(self, records: Sequence[FixedPointRecord], twist: Optional[RationalVector] = None) -> Verdict:
        """Verdict from local fixed-point records; positivity cannot be checked here."""
        source = FixedPointWeightSource(records)
        twist = self._resolve_twist(source.dimension, twist)
        P_mu = source.moment_polytope(twist)
        boundary = [d for r in source.records for d in r.boundary_mults]
        context: Dict[str, Any] = {
            "mode": "fixedpoints",
            "sub_lc": check_sub_lc(boundary),
            "log_canonical": check_sub_lc(boundary, effective_required=True),
            "nef": "unverified",
            "semiample": "unverified",
            "twist": twist.to_strings(),
        }
        return check_equivariant_nonvanishing(P_mu, None, context)

    def bundle_kappa_estimates(self, fan: Fan, bundle: LinearizedBundle, m_max: int) -> KappaReport:
        """Invariant section counts of bundle^(m0 * k) for k = 1..m_max, m0 = bundle.multiple."""
        if m_max < 1:
            raise ValidationError("m_max must be a positive integer.", {"m_max": m_max})
        fan = self.validate(fan)
        degrees = tuple(bundle.multiple * k for k in range(1, m_max + 1))
        dims = tuple(invariant_dimension(fan, bundle.divisor, bundle.twist, d) for d in degrees)
        return KappaReport(m_max=m_max, degrees=degrees, invariant_dims=dims,
                           kappa_bundle=kodaira_dimension(fan, bundle.divisor))

    def kappa_estimates(self, pair: PairData, twist: Optional[RationalVector], m_max: int) -> KappaReport:
        twist = self._resolve_twist(pair.fan.dimension, twist)
        return self.bundle_kappa_estimates(pair.fan, LinearizedBundle(pair.anti_log_divisor(), twist), m_max)

    def perturbation_report(
        self,
        pair: PairData,
        ample_aux: TDivisor,
        eps_values: Sequence[Rational],
    ) -> PerturbationReport:
        """d_H(P_mu(-(K + D - A - eps*H)), P_mu(-(K + D - A))) for each eps, where
        H = ample_aux, with the constant C = max over fixed points of
        sum_i h_i * |nu_i| (sup-norm) bounding d by C * eps."""
        pair = self._adopt(pair)
        if not positivity(pair.fan, ample_aux).ample:
            raise ValidationError("Perturbing divisor must be ample.")
        if not ample_aux.is_effective():
            raise ValidationError("Perturbing divisor must be effective.")
        base = ToricWeightSource(pair).moment_polytope()
        constant = Fraction(0)
        for record in export_fixed_point_records(PairData(pair.fan, pair.boundary, ample_aux)):
            local = Fraction(0)
            for a, row in zip(record.aux_coeffs, record.aux_mults):
                for m, nu in zip(row, record.cotangent):
                    local += a * m * nu.norm_inf()
            constant = max(constant, local)
        rows = []
        for raw in eps_values:
            eps = as_fraction(raw)
            if eps <= 0:
                raise ValidationError("eps must be positive.", {"eps": eps})
            perturbed = pair.with_aux(pair.aux_or_zero() + eps * ample_aux)
            rows.append((eps, hausdorff_distance(ToricWeightSource(perturbed).moment_polytope(), base)))
        report = PerturbationReport(constant=constant, rows=tuple(rows))
        if not report.within_bound:
            raise InternalInconsistencyError("Hausdorff distance exceeds C * eps.", report.to_dict())
        return report

    def local_cone_check(self, pair: PairData, twist: Optional[RationalVector] = None) -> bool:
        return local_cone_check(self._adopt(pair), twist, self.config.epsilon)

    def moment_polytope(self, pair: PairData, twist: Optional[RationalVector] = None) -> Polytope:
        pair = self._adopt(pair)
        return ToricWeightSource(pair).moment_polytope(self._resolve_twist(pair.fan.dimension, twist))

    def record_polytope(self, records: Sequence[FixedPointRecord], twist: Optional[RationalVector] = None) -> Polytope:
        source = FixedPointWeightSource(records)
        return source.moment_polytope(self._resolve_twist(source.dimension, twist))

    def section_polytope(self, pair: PairData) -> Optional[Polytope]:
        pair = self._adopt(pair)
        return section_polytope(pair.fan, pair.anti_log_divisor())

    def section_weights(self, pair: PairData, m: int = 1) -> List[RationalVector]:
        """Lattice points of m * P_D for D = -(K + D - A), under the enumeration guard."""
        pair = self._adopt(pair)
        return section_weights(pair.fan, pair.anti_log_divisor(), m, self.config.enumeration)


_default_checker = NonVanishingChecker()


def run_pipeline(pair: PairData, twist: Optional[RationalVector] = None, config: Optional[EngineConfig] = None) -> Verdict:
    checker = _default_checker if config is None else NonVanishingChecker(config)
    return checker.run_pipeline(pair, twist)


def run_records(records: Sequence[FixedPointRecord], twist: Optional[RationalVector] = None) -> Verdict:
    return _default_checker.run_records(records, twist)


def kappa_estimates(pair: PairData, twist: Optional[RationalVector], m_max: int,
                    config: Optional[EngineConfig] = None) -> KappaReport:
    checker = _default_checker if config is None else NonVanishingChecker(config)
    return checker.kappa_estimates(pair, twist, m_max)


def perturbation_report(pair: PairData, ample_aux: TDivisor, eps_values: Sequence[Rational]) -> PerturbationReport:
    return _default_checker.perturbation_report(pair, ample_aux, eps_values)
