import datetime
import json
import re

import pytest

from common.python.version import get_version
from commands.base import Options
from main import main, run_command
from report import EXIT_INPUT_ERROR, EXIT_PASS, EXIT_VIOLATION


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "3", "4", "lie")
    assert code == EXIT_PASS
    assert out == "degree 1: 3\ndegree 2: 3\ndegree 3: 8\ndegree 4: 18\n"


def test_dims_almost_flavor_flag(capsys):
    code, out, _ = run(capsys, "dims", "3", "4", "--flavor", "almost")
    assert code == EXIT_PASS
    assert out.splitlines()[-1] == "degree 4: 30"


@pytest.mark.parametrize("argv", [["dims", "3"], ["dims", "a", "2"], ["dims", "3", "2", "jordan"], ["dims", "0", "2"]])
def test_dims_rejects_bad_arguments(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert err.startswith("falg: error:")


def test_expand_chi_plane(capsys):
    code, out, _ = run(capsys, "expand", "--spec", "chi_plane")
    lines = out.splitlines()
    assert code == EXIT_PASS
    assert lines[0] == "# expand chi_plane.json"
    assert "e2: chi ∂y" in lines
    assert "[e1,[e1,e2]]: (4*x^-6 - 6*x^-4)*chi ∂y" in lines
    assert lines[-1] == "generic rank: 2"


def test_expand_is_deterministic(capsys):
    first = run(capsys, "expand", "--spec", "chi_plane", "--depth", "3")[1]
    second = run(capsys, "expand", "--spec", "chi_plane", "--depth", "3")[1]
    assert first == second


def test_published_corpus_names(capsys):
    code, out, _ = run(capsys, "check-compat", "--spec", "example3_5.json", "--tensor", "g")
    assert code == EXIT_PASS
    assert out.splitlines()[-1] == "PASS (3 identities)"
    code, out, _ = run(capsys, "expand", "--spec", "example3_4.json", "--depth", "3")
    assert code == EXIT_PASS
    assert "[e1,[e1,e2]]: (4*x^-6 - 6*x^-4)*chi ∂y" in out.splitlines()


def test_validate_euclidean(capsys):
    code, out, _ = run(capsys, "validate", "--spec", "euclidean_rotations")
    lines = out.splitlines()
    assert code == EXIT_PASS
    assert lines[0] == "# validate euclidean_rotations.json"
    assert lines[1] == "chart (x, y, z)"
    assert "phi: anchor and connection preserved: 0" in lines
    assert lines[-1] == "PASS (57 identities)"


def test_check_compat_metric(capsys):
    code, out, _ = run(capsys, "check-compat", "--spec", "euclidean_rotations", "--tensor", "g")
    assert code == EXIT_PASS
    assert out.splitlines()[1:] == ["E-nabla_e1 g: 0", "E-nabla_e2 g: 0", "E-nabla_e3 g: 0", "PASS (3 identities)"]


def test_check_compat_dx_dx_fails(capsys):
    code, out, _ = run(capsys, "check-compat", "--spec", "euclidean_rotations", "--tensor", "dx_dx")
    lines = out.splitlines()
    assert code == EXIT_VIOLATION
    assert lines[1] == "E-nabla_e1 dx_dx: 0"
    assert lines[2] == "E-nabla_e2 dx_dx: -dx⊗dy - dy⊗dx"
    assert lines[-1] == "FAIL (2 of 3 identities nonzero)"


def test_check_compat_on_target(capsys):
    code, out, _ = run(capsys, "check-compat", "--spec", "euclidean_rotations", "--tensor", "g", "--target", "iso3")
    assert code == EXIT_PASS
    assert "iso3: E-nabla_e6 g: 0" in out.splitlines()


def test_check_compat_needs_tensor(capsys):
    code, _, err = run(capsys, "check-compat", "--spec", "euclidean_rotations")
    assert code == EXIT_INPUT_ERROR
    assert "--tensor" in err


def test_unknown_tensor(capsys):
    code, _, err = run(capsys, "check-compat", "--spec", "euclidean_rotations", "--tensor", "h")
    assert code == EXIT_INPUT_ERROR
    assert "no tensor named 'h'" in err


def test_check_cartan_noncartan(capsys):
    code, out, _ = run(capsys, "check-cartan", "--spec", "noncartan_rank2")
    lines = out.splitlines()
    assert code == EXIT_VIOLATION
    assert "abelian: S(e1,e2): dy⊗e2" in lines
    assert "abelian: S(e1,e2) curvature - sections: 0" in lines
    assert lines[-1].startswith("FAIL (1 of ")


def test_check_cartan_euclidean(capsys):
    code, out, _ = run(capsys, "check-cartan", "--spec", "euclidean_rotations", "--flavor", "almost")
    assert code == EXIT_PASS
    assert out.splitlines()[-1].startswith("PASS (")


def test_check_jacobi(capsys):
    code, out, _ = run(capsys, "check-jacobi", "--spec", "noncartan_rank2")
    assert code == EXIT_PASS
    assert out.splitlines()[-1] == "PASS (4 identities)"


def test_check_invariance(capsys):
    code, out, _ = run(capsys, "check-invariance", "--spec", "euclidean_rotations", "--tensor", "dx_dx", "--depth", "2")
    assert code == EXIT_VIOLATION
    assert out.splitlines()[1] == "nabla_e1: 0"


def test_check_rep(capsys):
    code, out, _ = run(capsys, "check-rep", "--spec", "euclidean_rotations", "--tensor", "g", "--depth", "2")
    assert code == EXIT_PASS
    assert out.splitlines()[-1].startswith("PASS (")


def test_morphism(capsys):
    code, out, _ = run(capsys, "morphism", "--spec", "euclidean_rotations", "--target", "iso3")
    lines = out.splitlines()
    assert code == EXIT_PASS
    assert "phi~([e1,e2]) = e2" in lines
    assert "phi~([[e1,e2],e2]) = -e1" in lines


def test_morphism_needs_a_declared_morphism(capsys):
    code, _, err = run(capsys, "morphism", "--spec", "noncartan_rank2")
    assert code == EXIT_INPUT_ERROR
    assert "no morphism" in err


def test_json_report(capsys):
    code, out, _ = run(capsys, "check-compat", "--spec", "euclidean_rotations", "--tensor", "dx_dx", "--json")
    doc = json.loads(out)
    assert code == EXIT_VIOLATION
    assert doc["command"] == "check-compat"
    assert doc["spec"] == "euclidean_rotations.json"
    assert doc["passed"] is False
    assert [e["zero"] for e in doc["entries"]] == [True, False, False]


def test_missing_spec_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", "--spec", str(tmp_path / "nowhere.json"))
    assert code == EXIT_INPUT_ERROR
    assert "not found" in err


def test_spec_is_required(capsys):
    code, _, err = run(capsys, "validate")
    assert code == EXIT_INPUT_ERROR
    assert "--spec" in err


@pytest.mark.parametrize("content, location", [
    ("{not json", "broken.json:1:2"),
    ('{"chart": {"coordinates": ["x"]}, "bundle": {"anchor": [["1"]]}, "tensors": {"t": {"type": [0, 1], '
     '"components": {"1": "x +"}}}}', "tensors.t"),
    ('{"chart": {"coordinates": ["x"]}, "bundle": {"anchor": [["1", "0"]]}}', "bundle"),
    ('{"chart": {"coordinates": ["x"]}, "bundle": {"anchor": [["1"]]}, "depth": "abc"}', "depth"),
    ('{"chart": {"coordinates": ["x"]}, "bundle": {"anchor": [["1"]]}, "connections": ["nabla"]}', "connections[0]"),
    ('{"chart": {"coordinates": ["x"]}, "bundle": {"anchor": [["1"]]}, "tensors": ["g"]}', "tensors"),
    ('{"chart": {"coordinates": ["x"]}, "bundle": {"anchor": [["1"]]}, "targets": {"a": "iso3"}}', "targets.a"),
    ('{"chart": ["x"], "bundle": {"anchor": [["1"]]}}', "chart"),
])
def test_malformed_spec(capsys, tmp_path, content, location):
    path = tmp_path / "broken.json"
    path.write_text(content, encoding="utf-8")
    code, out, err = run(capsys, "validate", "--spec", str(path))
    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert location in err


def test_unknown_command_exits_through_argparse(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_version_banner():
    banner = get_version("FALG", datetime.date(2026, 10, 17))
    assert re.fullmatch(r"FALG v\w+\.61017\.\S+", banner)


def test_verbose_keeps_stdout_clean(capsys):
    code, out, _ = run(capsys, "dims", "2", "2", "--verbose")
    assert code == EXIT_PASS
    assert out == "degree 1: 2\ndegree 2: 1\n"
    run(capsys, "dims", "2", "2")


def test_run_command_returns_the_report():
    code, report = run_command("noncartan_rank2", "check-cartan", Options())
    assert code == EXIT_VIOLATION
    assert [e.identity for e in report.failures] == ["abelian: S(e1,e2)"]
