import json

import pytest

from hecke_affine import simple_character
from hecke_core import trivial_character
from hecke_modules import character_module
from main import EXIT_ERROR, EXIT_OK, build_parser, main
from reports import dumps


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


def test_frobenius_command(capsys):
    assert main(["frobenius", "--group", "gl:2:2", "--coeff", "fp:2"]) == EXIT_OK
    document = _stdout_json(capsys)
    assert document["kind"] == "report"
    assert document["summary"] == {"total": 3, "passed": 3, "failed": 0}


def test_out_writes_the_report(tmp_path, capsys):
    out = tmp_path / "coxeter.json"
    assert main(["coxeter", "--group", "gl:3:2", "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["suite"] == "coxeter"


@pytest.mark.parametrize("argv", [
    ["coxeter", "--group", "gl:9:2"],
    ["frobenius", "--group", "gl:2:6"],
    ["frobenius", "--coeff", "fp:4"],
    ["coxeter", "--jobs", "0"],
    ["affine", "mul", "--type", "gl2", "--p", "3"],
])
def test_errors_exit_with_status_two(argv, capsys):
    assert main(argv) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("[Error]")


def test_unknown_command_is_a_usage_error():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["bogus"])


def test_oracle_command(capsys):
    assert main(["oracle", "--group", "gl:2:2"]) == EXIT_OK
    document = _stdout_json(capsys)
    assert document["presentation_mismatches"] == []
    assert document["algebra"]["kind"] == "unipotent_hecke_algebra"


def test_affine_mul(capsys):
    argv = ["affine", "mul", "--type", "gl2", "--p", "3", "--coeff", "fp:3", "--expr", "t[1,0]*t[1,0]"]
    assert main(argv) == EXIT_OK
    document = _stdout_json(capsys)
    assert document["algebra"] == "gl2:3/J=-/fp:3"
    assert [(term["length"], term["coefficient"]) for term in document["terms"]] == [(2, 1)]


def test_affine_quadratic_relation(capsys):
    assert main(["affine", "mul", "--type", "sl2", "--p", "3", "--expr", "s0*s0"]) == EXIT_OK
    lengths = sorted(term["length"] for term in _stdout_json(capsys)["terms"])
    assert lengths and lengths[-1] == 1


def test_affine_characters_and_describe(capsys):
    assert main(["affine", "characters", "--type", "gl2", "--p", "2"]) == EXIT_OK
    assert len(_stdout_json(capsys)["characters"]) >= 2
    assert main(["affine", "describe", "--type", "sl2", "--p", "3"]) == EXIT_OK
    document = _stdout_json(capsys)
    assert document["kind"] == "pro_p_iwahori_hecke_algebra"
    assert set(document["simple"]) == {"s0", "s1"}


def test_classify_supersingular_module(tmp_path, capsys, affine):
    H = affine("sl2", 3, "fp:3")
    path = tmp_path / "module.json"
    path.write_text(dumps(simple_character(H, {"s0": 0, "s1": -1})))
    assert main(["classify", "--module", str(path)]) == EXIT_OK
    document = _stdout_json(capsys)
    assert document["supersingular"] is True
    assert document["rank"] == 1
    assert len(document["triples"]) == 1


def test_classify_rejects_finite_modules(tmp_path, capsys, finite_algebra):
    path = tmp_path / "module.json"
    path.write_text(dumps(character_module(trivial_character(finite_algebra("gl:2:2", "fp:2")))))
    assert main(["classify", "--module", str(path)]) == EXIT_ERROR
    assert "pro-p Iwahori" in capsys.readouterr().err


def test_classify_reports_schema_errors(tmp_path, capsys):
    path = tmp_path / "module.json"
    path.write_text("{")
    assert main(["classify", "--module", str(path)]) == EXIT_ERROR
    assert "[Error]" in capsys.readouterr().err
