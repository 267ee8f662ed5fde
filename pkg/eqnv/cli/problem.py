# eqnv/cli/problem.py
"""JSON problem files.

    {"schema": 1, "mode": "toric",
     "toric": {"dimension": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]],
               "boundary": {"0": "1/2"}, "aux": {...}, "twist": ["0"]}}

    {"schema": 1, "mode": "fixedpoints",
     "fixedpoints": {"records": [{"cotangent": [["1"]], "boundary_mults": ["1/2"],
                                  "aux_coeffs": [], "aux_mults": []}, ...],
                     "twist": ["0"]}}

Rationals are "p/q" strings (plain JSON integers are accepted too); floats are
rejected.
"""
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from eqnv.core.errors import ProblemFileError, ValidationError
from eqnv.core.models import RationalVector, as_fraction, format_rational
from eqnv.equivariant.base import FixedPointRecord, PairData
from eqnv.toric.divisor import TDivisor
from eqnv.toric.fan import Fan

SCHEMA_VERSION = 1
MODES = ("toric", "fixedpoints")
RAY_KEY = re.compile(r"0|[1-9][0-9]*")


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, float):
        raise ProblemFileError(f"{where}: floats are not allowed, write a \"p/q\" string.", {"value": value})
    try:
        return as_fraction(value)
    except ValidationError as e:
        raise ProblemFileError(f"{where}: {e.message}", e.details) from e


def _rational_vector(value: Any, where: str) -> RationalVector:
    if not isinstance(value, list):
        raise ProblemFileError(f"{where}: expected a list of rationals.")
    return RationalVector(tuple(_rational(c, f"{where}[{i}]") for i, c in enumerate(value)))


def _integer(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ProblemFileError(f"{where}: expected an integer.", {"value": value})
    return value


def _require(data: Dict[str, Any], key: str, where: str) -> Any:
    if not isinstance(data, dict):
        raise ProblemFileError(f"{where}: expected an object.")
    if key not in data:
        raise ProblemFileError(f"{where}: missing key {key!r}.")
    return data[key]


def _ray_index(key: Any, where: str) -> int:
    if not isinstance(key, str) or not RAY_KEY.fullmatch(key):
        raise ProblemFileError(f"{where}: ray index {key!r} is not a canonical decimal integer.")
    return int(key)


def _unique_keys(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    for key, value in pairs:
        if key in data:
            raise ProblemFileError(f"Duplicate key {key!r}.")
        data[key] = value
    return data


def _coefficient_map(value: Any, where: str, ray_count: int) -> Dict[int, Fraction]:
    if not isinstance(value, dict):
        raise ProblemFileError(f"{where}: expected an object mapping ray index to rational.")
    coefficients = {}
    for key, raw in value.items():
        index = _ray_index(key, where)
        if index >= ray_count:
            raise ProblemFileError(f"{where}: ray index {index} out of range.", {"rays": ray_count})
        coefficients[index] = _rational(raw, f"{where}[{key}]")
    return coefficients


@dataclass
class ToricProblem:
    dimension: int
    rays: List[List[int]]
    max_cones: List[List[int]]
    boundary: Dict[int, Fraction] = field(default_factory=dict)
    aux: Optional[Dict[int, Fraction]] = None
    twist: Optional[RationalVector] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ToricProblem":
        dimension = _integer(_require(data, "dimension", "toric"), "toric.dimension")
        rays_raw = _require(data, "rays", "toric")
        cones_raw = _require(data, "max_cones", "toric")
        if not isinstance(rays_raw, list) or not isinstance(cones_raw, list):
            raise ProblemFileError("toric: rays and max_cones must be lists.")
        rays = []
        for i, ray in enumerate(rays_raw):
            if not isinstance(ray, list):
                raise ProblemFileError(f"toric.rays[{i}]: expected a list of integers.")
            rays.append([_integer(c, f"toric.rays[{i}]") for c in ray])
        cones = []
        for i, cone in enumerate(cones_raw):
            if not isinstance(cone, list):
                raise ProblemFileError(f"toric.max_cones[{i}]: expected a list of ray indices.")
            indices = [_integer(c, f"toric.max_cones[{i}]") for c in cone]
            if any(c < 0 or c >= len(rays) for c in indices):
                raise ProblemFileError(f"toric.max_cones[{i}]: ray index out of range.", {"rays": len(rays)})
            cones.append(indices)
        boundary = _coefficient_map(data.get("boundary", {}), "toric.boundary", len(rays))
        aux = None
        if data.get("aux") is not None:
            aux = _coefficient_map(data["aux"], "toric.aux", len(rays))
        twist = None
        if data.get("twist") is not None:
            twist = _rational_vector(data["twist"], "toric.twist")
        return cls(dimension, rays, cones, boundary, aux, twist)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "dimension": self.dimension,
            "rays": self.rays,
            "max_cones": self.max_cones,
            "boundary": {str(k): format_rational(v) for k, v in sorted(self.boundary.items())},
        }
        if self.aux is not None:
            data["aux"] = {str(k): format_rational(v) for k, v in sorted(self.aux.items())}
        if self.twist is not None:
            data["twist"] = self.twist.to_strings()
        return data

    def fan(self) -> Fan:
        return Fan.from_vectors(self.dimension, self.rays, self.max_cones)

    def pair(self) -> PairData:
        fan = self.fan()
        aux = None if self.aux is None else TDivisor.from_mapping(fan, self.aux)
        return PairData(fan, TDivisor.from_mapping(fan, self.boundary), aux)


def _record_from_dict(data: Any, where: str) -> FixedPointRecord:
    cotangent_raw = _require(data, "cotangent", where)
    mults_raw = _require(data, "boundary_mults", where)
    if not isinstance(cotangent_raw, list) or not isinstance(mults_raw, list):
        raise ProblemFileError(f"{where}: cotangent and boundary_mults must be lists.")
    aux_coeffs_raw = data.get("aux_coeffs", [])
    aux_mults_raw = data.get("aux_mults", [])
    if not isinstance(aux_coeffs_raw, list) or not isinstance(aux_mults_raw, list):
        raise ProblemFileError(f"{where}: aux_coeffs and aux_mults must be lists.")
    rows = []
    for j, row in enumerate(aux_mults_raw):
        if not isinstance(row, list):
            raise ProblemFileError(f"{where}.aux_mults[{j}]: expected a list of integers.")
        rows.append(tuple(_integer(m, f"{where}.aux_mults[{j}]") for m in row))
    try:
        return FixedPointRecord(
            cotangent=tuple(_rational_vector(v, f"{where}.cotangent[{i}]") for i, v in enumerate(cotangent_raw)),
            boundary_mults=tuple(_rational(d, f"{where}.boundary_mults[{i}]") for i, d in enumerate(mults_raw)),
            aux_coeffs=tuple(_rational(a, f"{where}.aux_coeffs[{j}]") for j, a in enumerate(aux_coeffs_raw)),
            aux_mults=tuple(rows),
        )
    except ProblemFileError:
        raise
    except ValidationError as e:
        raise ProblemFileError(f"{where}: {e.message}", e.details) from e


def _record_to_dict(record: FixedPointRecord) -> Dict[str, Any]:
    return {
        "cotangent": [nu.to_strings() for nu in record.cotangent],
        "boundary_mults": [format_rational(d) for d in record.boundary_mults],
        "aux_coeffs": [format_rational(a) for a in record.aux_coeffs],
        "aux_mults": [list(row) for row in record.aux_mults],
    }


@dataclass
class FixedPointsProblem:
    records: List[FixedPointRecord]
    twist: Optional[RationalVector] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FixedPointsProblem":
        records_raw = _require(data, "records", "fixedpoints")
        if not isinstance(records_raw, list) or not records_raw:
            raise ProblemFileError("fixedpoints.records: expected a nonempty list.")
        records = [_record_from_dict(r, f"fixedpoints.records[{i}]") for i, r in enumerate(records_raw)]
        twist = None
        if data.get("twist") is not None:
            twist = _rational_vector(data["twist"], "fixedpoints.twist")
        return cls(records, twist)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"records": [_record_to_dict(r) for r in self.records]}
        if self.twist is not None:
            data["twist"] = self.twist.to_strings()
        return data


@dataclass
class ProblemFile:
    """A parsed problem; exactly one of `toric` and `fixedpoints` is set."""
    mode: str
    toric: Optional[ToricProblem] = None
    fixedpoints: Optional[FixedPointsProblem] = None

    @classmethod
    def from_dict(cls, data: Any) -> "ProblemFile":
        schema = _require(data, "schema", "problem")
        if type(schema) is not int or schema != SCHEMA_VERSION:
            raise ProblemFileError(f"Unsupported schema {schema!r}; expected {SCHEMA_VERSION}.")
        mode = _require(data, "mode", "problem")
        if mode not in MODES:
            raise ProblemFileError(f"Unknown mode {mode!r}.", {"modes": ", ".join(MODES)})
        populated = [m for m in MODES if data.get(m) is not None]
        if populated != [mode]:
            raise ProblemFileError("Exactly the section named by `mode` must be present.", {"mode": mode, "present": populated})
        if mode == "toric":
            return cls(mode, toric=ToricProblem.from_dict(data["toric"]))
        return cls(mode, fixedpoints=FixedPointsProblem.from_dict(data["fixedpoints"]))

    @classmethod
    def loads(cls, text: str) -> "ProblemFile":
        try:
            data = json.loads(text, object_pairs_hook=_unique_keys)
        except json.JSONDecodeError as e:
            raise ProblemFileError(f"Invalid JSON: {e.msg}", {"line": e.lineno, "column": e.colno}) from e
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str) -> "ProblemFile":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise ProblemFileError(f"Cannot read {path}: {e.strerror}") from e
        return cls.loads(text)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"schema": SCHEMA_VERSION, "mode": self.mode}
        if self.toric is not None:
            data["toric"] = self.toric.to_dict()
        if self.fixedpoints is not None:
            data["fixedpoints"] = self.fixedpoints.to_dict()
        return data

    def emit(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @property
    def twist(self) -> Optional[RationalVector]:
        section = self.toric if self.toric is not None else self.fixedpoints
        return section.twist if section is not None else None
