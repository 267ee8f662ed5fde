import json

import pytest

from eqnv.cli.main import EXIT_EXPECT_MISMATCH, EXIT_INCONSISTENT, EXIT_INVALID, EXIT_OK, main
from eqnv.cli.problem import ProblemFile
from eqnv.convexcore.polytope import convex_hull
from eqnv.core.config import EngineConfig
from eqnv.core.errors import ConfigurationError, EqnvError, InternalInconsistencyError, ProblemFileError
from eqnv.core.models import as_fraction, vector
from eqnv.verdict.checker import NonVanishingChecker
from eqnv.verdict.models import YES, InvariantSectionCertificate, SeparatingCertificate, Verdict
from eqnv.verdict.pipeline import verify_verdict

LINE = {"dimension": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}
PLANE = {"dimension": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]}


def toric_problem(fan, boundary=None, **extra):
    section = dict(fan, boundary=boundary or {})
    section.update(extra)
    return {"schema": 1, "mode": "toric", "toric": section}


def line_records(a):
    return {"schema": 1, "mode": "fixedpoints", "fixedpoints": {"records": [
        {"cotangent": [["1"]], "boundary_mults": [a]},
        {"cotangent": [["-1"]], "boundary_mults": ["0"]},
    ]}}


@pytest.fixture
def write_problem(tmp_path):
    def write(data, name="problem.json"):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)
    return write


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def parse_vector(strings):
    return vector(as_fraction(s) for s in strings)


class TestCheck:
    def test_half_boundary_is_yes(self, write_problem, capsys):
        path = write_problem(toric_problem(LINE, {"0": "1/2"}))
        code, report = run_json(capsys, ["check", path, "--expect", "yes"])
        assert code == EXIT_OK
        assert report["answer"] == "yes"
        assert report["moment_polytope"]["vertices"] == [["-1/2"], ["1"]]
        assert report["certificate"]["multiplicities"] == [2, 1]
        assert report["flags"]["sub_lc"] is True
        assert report["tool"]["name"] == "eqnv"

    def test_three_halves_is_no(self, write_problem, capsys):
        path = write_problem(toric_problem(LINE, {"0": "3/2"}))
        code, report = run_json(capsys, ["check", path, "--expect", "no"])
        assert code == EXIT_OK
        assert report["certificate"] == {"kind": "separating_functional", "phi": ["1"]}
        assert report["flags"]["nef"] is True and report["flags"]["sub_lc"] is False

    def test_expect_mismatch(self, write_problem, capsys):
        path = write_problem(toric_problem(LINE, {"0": "3/2"}))
        assert main(["check", path, "--expect", "yes"]) == EXIT_EXPECT_MISMATCH

    def test_zero_denominator(self, write_problem, capsys):
        path = write_problem(toric_problem(LINE, {"0": "1/0"}))
        assert main(["check", path]) == EXIT_INVALID
        assert "Zero denominator" in capsys.readouterr().err

    def test_float_is_rejected(self, write_problem, capsys):
        path = write_problem(toric_problem(LINE, {"0": 0.5}))
        assert main(["check", path]) == EXIT_INVALID
        assert "floats are not allowed" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["check", str(tmp_path / "absent.json")]) == EXIT_INVALID

    def test_broken_json(self, write_problem):
        assert main(["check", write_problem("{not json")]) == EXIT_INVALID

    def test_singular_fan(self, write_problem, capsys):
        fan = {"dimension": 2, "rays": [[1, 0], [1, 2]], "max_cones": [[0, 1]]}
        assert main(["check", write_problem(toric_problem(fan))]) == EXIT_INVALID
        assert "not smooth" in capsys.readouterr().err

    def test_fixedpoints_mode(self, write_problem, capsys):
        code, report = run_json(capsys, ["check", write_problem(line_records("1/2"))])
        assert code == EXIT_OK
        assert report["answer"] == "yes"
        assert report["mode"] == "fixedpoints"
        assert report["flags"]["nef"] == "unverified"
        assert "section_polytope" not in report

    def test_degrees(self, write_problem, capsys):
        path = write_problem(toric_problem(PLANE))
        code, report = run_json(capsys, ["check", path, "--degrees", "3"])
        assert code == EXIT_OK
        assert report["invariant_dims"] == {
            "degrees": [1, 2, 3], "invariant_dims": [1, 1, 1], "kappa_lower": "0", "kappa_bundle": 2,
        }

    def test_degrees_must_be_positive(self, write_problem):
        assert main(["check", write_problem(toric_problem(PLANE)), "--degrees", "0"]) == EXIT_INVALID

    def test_degrees_need_a_toric_problem(self, write_problem):
        assert main(["check", write_problem(line_records("1/2")), "--degrees", "2"]) == EXIT_INVALID

    def test_text_format(self, write_problem, capsys):
        path = write_problem(toric_problem(LINE, {"0": "3/2"}))
        assert main(["check", path, "--format", "text"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("answer: no\n")
        assert "min_v phi(v) = 1/2 > 0" in out

    def test_output_is_deterministic(self, write_problem, tmp_path):
        path = write_problem(toric_problem(PLANE, {"0": "1/3", "2": "-1/2"}, aux={"1": "1"}))
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["check", path, "--output", str(first)]) == EXIT_OK
        assert main(["check", path, "--output", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        assert json.loads(first.read_text())["answer"] == "yes"

    def test_guarantee_violation_maps_to_exit_three(self, write_problem, capsys, monkeypatch):
        def broken(*args, **kwargs):
            raise InternalInconsistencyError("forced")

        monkeypatch.setattr(NonVanishingChecker, "run_pipeline", broken)
        assert main(["check", write_problem(toric_problem(LINE))]) == EXIT_INCONSISTENT
        assert "internal inconsistency" in capsys.readouterr().err


class TestPolytope:
    def test_plane_moment_polytope(self, write_problem, capsys):
        code, data = run_json(capsys, ["polytope", write_problem(toric_problem(PLANE))])
        assert code == EXIT_OK
        assert data["polytope"]["vertices"] == [["-1", "-1"], ["-1", "2"], ["2", "-1"]]
        assert data["polytope"]["dimension"] == 2
        assert len(data["polytope"]["halfspaces"]) == 3

    def test_line_section_polytope(self, write_problem, capsys):
        code, data = run_json(capsys, ["polytope", write_problem(toric_problem(LINE)), "--which", "section"])
        assert code == EXIT_OK
        assert data["which"] == "section"
        assert data["polytope"]["vertices"] == [["-1"], ["1"]]

    def test_empty_section_polytope(self, write_problem, capsys):
        code, data = run_json(capsys, ["polytope", write_problem(toric_problem(LINE, {"0": "3"})), "--which", "section"])
        assert code == EXIT_OK
        assert data["polytope"] is None

    def test_fixedpoints_moment_polytope(self, write_problem, capsys):
        code, data = run_json(capsys, ["polytope", write_problem(line_records("1/2"))])
        assert data["polytope"]["vertices"] == [["-1/2"], ["1"]]

    def test_section_needs_toric_mode(self, write_problem):
        assert main(["polytope", write_problem(line_records("1/2")), "--which", "section"]) == EXIT_INVALID

    def test_plot_data(self, write_problem, capsys):
        path = write_problem(toric_problem(PLANE))
        code, data = run_json(capsys, ["polytope", path, "--plot-data"])
        assert data["polytope"]["plot"] == [["-1", "-1"], ["2", "-1"], ["-1", "2"]]

    def test_twisted_polytope_text(self, write_problem, capsys):
        path = write_problem(toric_problem(LINE, twist=["3"]))
        assert main(["polytope", path, "--format", "text"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "  (2)\n  (4)\n" in out


class TestCertificate:
    def test_plane(self, write_problem, capsys):
        code, data = run_json(capsys, ["certificate", write_problem(toric_problem(PLANE))])
        assert code == EXIT_OK
        assert data["certificate"]["multiplicities"] == [1, 1, 1]
        assert data["verification"][-1] == "sum_i k_i = 3 >= 1"

    def test_separating_functional(self, write_problem, capsys):
        code, data = run_json(capsys, ["certificate", write_problem(toric_problem(LINE, {"0": "3/2"}))])
        assert data["answer"] == "no"
        assert data["certificate"]["phi"] == ["1"]
        assert data["verification"][-1] == "min_v phi(v) = 1/2 > 0"

    def test_boundary_at_one(self, write_problem, capsys):
        code, data = run_json(capsys, ["certificate", write_problem(toric_problem(LINE, {"0": "1"}))])
        assert data["certificate"]["multiplicities"] == [1, 0]
        assert data["certificate"]["witness_degree"] == 1

    def test_text(self, write_problem, capsys):
        assert main(["certificate", write_problem(toric_problem(LINE)), "--format", "text"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "k = (1, 1)" in out
        assert "witness degree = 2" in out

    @pytest.mark.parametrize("problem", [
        toric_problem(LINE, {"0": "1/2"}),
        toric_problem(LINE, {"0": "3/2"}),
        toric_problem(PLANE),
        toric_problem(PLANE, {"0": "2", "1": "2"}),
        line_records("1/3"),
    ])
    def test_emitted_certificate_checks_again(self, write_problem, capsys, problem):
        code, data = run_json(capsys, ["certificate", write_problem(problem)])
        assert code == EXIT_OK
        polytope = convex_hull([parse_vector(v) for v in data["moment_polytope"]["vertices"]])
        raw = data["certificate"]
        if data["answer"] == YES:
            certificate = InvariantSectionCertificate(
                tuple(raw["multiplicities"]), tuple(parse_vector(w) for w in raw["weights"]), raw["witness_degree"],
            )
        else:
            certificate = SeparatingCertificate(parse_vector(raw["phi"]))
        assert verify_verdict(Verdict(data["answer"], certificate, polytope)) == data["verification"]


class TestProblemFile:
    def test_emit_parses_back(self):
        for data in (toric_problem(PLANE, {"0": "1/3"}, aux={"2": "2"}, twist=["1", "-1/2"]), line_records("1/2")):
            problem = ProblemFile.from_dict(data)
            assert ProblemFile.loads(problem.emit()) == problem

    def test_emit_is_canonical(self):
        problem = ProblemFile.from_dict(toric_problem(LINE, {"0": "2/4"}))
        assert '"0": "1/2"' in problem.emit()
        assert problem.emit().endswith("}\n")

    def test_schema_version(self):
        with pytest.raises(ProblemFileError, match="schema"):
            ProblemFile.from_dict(dict(toric_problem(LINE), schema=2))

    def test_mode_section_must_match(self):
        data = toric_problem(LINE)
        data["fixedpoints"] = line_records("0")["fixedpoints"]
        with pytest.raises(ProblemFileError):
            ProblemFile.from_dict(data)

    def test_unknown_mode(self):
        with pytest.raises(ProblemFileError):
            ProblemFile.from_dict({"schema": 1, "mode": "other"})

    def test_ray_index_out_of_range(self):
        with pytest.raises(ProblemFileError, match="out of range"):
            ProblemFile.from_dict(toric_problem(LINE, {"5": "1"}))

    @pytest.mark.parametrize("key", ["00", "+0", " 0", "-1", "0x1", "1.0"])
    def test_ray_keys_must_be_canonical(self, key):
        with pytest.raises(ProblemFileError, match="canonical"):
            ProblemFile.from_dict(toric_problem(LINE, {key: "1/2"}))

    def test_padded_key_cannot_shadow_a_ray(self, write_problem, capsys):
        path = write_problem(toric_problem(LINE, {"0": "1/2", "00": "3/2"}))
        assert main(["check", path]) == EXIT_INVALID
        assert "canonical" in capsys.readouterr().err

    def test_duplicate_json_keys(self, write_problem, capsys):
        text = (
            '{"schema": 1, "mode": "toric", "toric": {"dimension": 1, "rays": [[1], [-1]],'
            ' "max_cones": [[0], [1]], "boundary": {"0": "1/2", "0": "3/2"}}}'
        )
        assert main(["check", write_problem(text)]) == EXIT_INVALID
        assert "Duplicate key" in capsys.readouterr().err

    @pytest.mark.parametrize("schema", [True, 1.0, "1"])
    def test_schema_must_be_an_integer(self, schema):
        with pytest.raises(ProblemFileError, match="schema"):
            ProblemFile.from_dict(dict(toric_problem(LINE), schema=schema))

    def test_bad_record(self):
        data = line_records("1/2")
        data["fixedpoints"]["records"][0]["aux_coeffs"] = ["1"]
        with pytest.raises(ProblemFileError):
            ProblemFile.from_dict(data)


class TestConfig:
    def test_from_env(self, monkeypatch):
        monkeypatch.setenv("EQNV_SEED", "7")
        monkeypatch.setenv("EQNV_LOG_LEVEL", "debug")
        config = EngineConfig.from_env()
        assert config.seed == 7
        assert config.log_level == "DEBUG"

    def test_bad_seed(self, monkeypatch):
        monkeypatch.setenv("EQNV_SEED", "seven")
        with pytest.raises(ConfigurationError):
            EngineConfig.from_env()

    def test_bad_seed_exits_invalid(self, write_problem, monkeypatch):
        monkeypatch.setenv("EQNV_SEED", "seven")
        assert main(["check", write_problem(toric_problem(LINE))]) == EXIT_INVALID

    def test_bad_log_level(self):
        with pytest.raises(ConfigurationError):
            EngineConfig(log_level="LOUD")

    def test_error_rendering(self):
        assert str(EqnvError("boom", {"k": 1})) == "boom (k=1)"
        assert str(EqnvError("boom")) == "boom"
