# eqnv/cli/report.py
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from eqnv import __version__
from eqnv.convexcore.polytope import Polytope
from eqnv.core.models import format_rational
from eqnv.verdict.models import KappaReport, Verdict
from eqnv.verdict.pipeline import verify_verdict

TOOL_NAME = "eqnv"


def tool_metadata() -> Dict[str, Any]:
    return {"name": TOOL_NAME, "version": __version__, "schema": 1}


def _cross(o: Tuple[Fraction, Fraction], a: Tuple[Fraction, Fraction], b: Tuple[Fraction, Fraction]) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def plot_points(polytope: Polytope) -> List[List[str]]:
    """Projection to the first two coordinates, as a counter-clockwise polygon
    (a segment or a point in degenerate cases)."""
    points = sorted({
        (v[0] if v.dim > 0 else Fraction(0), v[1] if v.dim > 1 else Fraction(0))
        for v in polytope.vertices
    })
    if len(points) > 2:
        lower: List[Tuple[Fraction, Fraction]] = []
        for p in points:
            while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
                lower.pop()
            lower.append(p)
        upper: List[Tuple[Fraction, Fraction]] = []
        for p in reversed(points):
            while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
                upper.pop()
            upper.append(p)
        points = lower[:-1] + upper[:-1]
    return [[format_rational(x), format_rational(y)] for x, y in points]


def polytope_dict(polytope: Optional[Polytope], plot_data: bool = False) -> Optional[Dict[str, Any]]:
    if polytope is None:
        return None
    data: Dict[str, Any] = {
        "dimension": polytope.dimension,
        "vertices": [v.to_strings() for v in polytope.vertices],
        "halfspaces": [
            {"normal": h.normal.to_strings(), "offset": format_rational(h.offset)} for h in polytope.halfspaces
        ],
    }
    if plot_data:
        data["plot"] = plot_points(polytope)
    return data


@dataclass
class VerdictReport:
    """Everything `eqnv check` prints; the certificate is re-verified on construction."""
    verdict: Verdict
    section_polytope: Optional[Polytope] = None
    kappa: Optional[KappaReport] = None
    toric: bool = True
    transcript: List[str] = field(default_factory=list, init=False)

    def __post_init__(self):
        self.transcript = verify_verdict(self.verdict)

    def to_dict(self) -> Dict[str, Any]:
        flags = {k: v for k, v in self.verdict.context.items() if k not in ("mode", "twist")}
        data: Dict[str, Any] = {
            "answer": self.verdict.answer,
            "certificate": self.verdict.certificate.to_dict(),
            "flags": flags,
            "mode": self.verdict.context.get("mode"),
            "twist": self.verdict.context.get("twist"),
            "moment_polytope": polytope_dict(self.verdict.moment_polytope),
            "tool": tool_metadata(),
        }
        if self.toric:
            data["section_polytope"] = polytope_dict(self.section_polytope)
        if self.kappa is not None:
            data["invariant_dims"] = self.kappa.to_dict()
        return data

    def to_json(self) -> str:
        return render_json(self.to_dict())

    def to_text(self) -> str:
        v = self.verdict
        lines = [f"answer: {v.answer}"]
        lines.append("moment polytope: conv{" + ", ".join(str(p) for p in v.moment_polytope.vertices) + "}")
        if self.toric:
            if self.section_polytope is None:
                lines.append("section polytope: empty")
            else:
                lines.append("section polytope: conv{" + ", ".join(str(p) for p in self.section_polytope.vertices) + "}")
        for key, value in sorted(v.context.items()):
            if key not in ("mode", "twist"):
                lines.append(f"{key}: {value}")
        lines.append(f"certificate: {v.certificate.kind}")
        lines.extend("  " + line for line in self.transcript)
        if self.kappa is not None:
            for degree, dim in zip(self.kappa.degrees, self.kappa.invariant_dims):
                lines.append(f"invariant sections in degree {degree}: {dim}")
            lines.append(f"kappa^T lower bound: {self.kappa.kappa_lower_label()}")
        return "\n".join(lines) + "\n"


def certificate_dict(verdict: Verdict) -> Dict[str, Any]:
    return {
        "answer": verdict.answer,
        "certificate": verdict.certificate.to_dict(),
        "moment_polytope": polytope_dict(verdict.moment_polytope),
        "verification": verify_verdict(verdict),
        "tool": tool_metadata(),
    }


def certificate_text(verdict: Verdict) -> str:
    lines = [f"answer: {verdict.answer}", f"certificate: {verdict.certificate.kind}"]
    if verdict.is_yes:
        lines.append("k = " + str(tuple(verdict.certificate.multiplicities)))
        lines.append(f"witness degree = {verdict.certificate.witness_degree}")
    else:
        lines.append(f"phi = {verdict.certificate.phi}")
    lines.extend(verify_verdict(verdict))
    return "\n".join(lines) + "\n"


def polytope_text(name: str, polytope: Optional[Polytope], plot_data: bool = False) -> str:
    if polytope is None:
        return f"{name} polytope: empty\n"
    lines = [f"{name} polytope (dimension {polytope.dimension})", "vertices:"]
    lines.extend(f"  {v}" for v in polytope.vertices)
    lines.append("halfspaces:")
    lines.extend(f"  <u, {h.normal}> >= {format_rational(h.offset)}" for h in polytope.halfspaces)
    if plot_data:
        lines.append("plot:")
        lines.extend(f"  {x} {y}" for x, y in plot_points(polytope))
    return "\n".join(lines) + "\n"


def render_json(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
