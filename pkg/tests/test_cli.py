import json
from fractions import Fraction

import pytest

from conecalc import io
from conecalc.cli import main
from conecalc.relative import build_relative_fan, builtin_config

QUADRANT = {"dim": 2, "generators": {"rays": [[1, 0], [0, 1]]}}


@pytest.fixture
def cone_file(tmp_path):
    p = tmp_path / "quadrant.json"
    p.write_text(json.dumps(QUADRANT))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parsers():
    assert io.vector("1, -2/3") == (1, Fraction(-2, 3))
    assert io.vector(["1/2", 3]) == (Fraction(1, 2), 3)
    assert str(io.complex_scalar("1/2 - 3*I")) == str(io.complex_scalar("1/2-3*I"))
    with pytest.raises(io.InputError):
        io.rational("one")
    with pytest.raises(io.InputError):
        io.cone_from_json({"inequalities": [[1, 0]]})
    with pytest.raises(io.InputError):
        io.cone_from_json({"dim": 2, "inequalities": [[1, 0, 0]]})


def test_dumps_is_canonical():
    text = io.dumps({"b": Fraction(1, 3), "a": [Fraction(2)]})
    assert text == '{\n  "a": [\n    "2"\n  ],\n  "b": "1/3"\n}\n'


def test_form_parser():
    fan = build_relative_fan(builtin_config("gl1_in_gl2_corner"))
    form = io.form_from_json({"cells": {"({1},{2})": [{"lambda_re": ["-2"], "q": "1"}]}}, fan)
    assert len(list(form.items())) == 1
    with pytest.raises(io.InputError):
        io.form_from_json({"cells": {"({1},{2})": [{"lambda_re": ["-2", "1"]}]}}, fan)
    with pytest.raises(io.InputError):
        io.form_from_json({"cells": {"nowhere": []}}, fan)


def test_verify_passes(capsys, cone_file):
    code, out, _ = run(capsys, "verify", "--identity", "bgs_angle", "--cone", cone_file, "--samples", "100")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_malformed_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "inequalities": [[1, 0]')
    code, _, err = run(capsys, "verify", "--identity", "euler", "--cone", str(bad))
    assert code == 2
    assert "line" in err and "column" in err


def test_bad_fan_is_input_error(capsys, cone_file, tmp_path):
    fan = tmp_path / "fan.json"
    fan.write_text(json.dumps([{"dim": 2, "generators": {"rays": [[1, 0], [0, 1]]}},
                               {"dim": 2, "generators": {"rays": [[1, 0], [1, 1]]}}]))
    code, _, _ = run(capsys, "verify", "--identity", "gamma_fan_refinement", "--cone", cone_file,
                     "--fan", str(fan))
    assert code == 2


def test_transform(capsys, cone_file):
    code, out, _ = run(capsys, "transform", "--cone", cone_file, "--lambda=-1,-2", "--gamma", "--T=1,1")
    data = json.loads(out)
    assert code == 0
    assert data["value"] == "1/2"
    assert data["purely_polynomial_part"] == "1/2"


def test_fan_outputs(capsys, tmp_path):
    svg, js = tmp_path / "f.svg", tmp_path / "f.json"
    code, _, _ = run(capsys, "fan", "--config", "gl2_in_gl3_plane", "--emit-svg", str(svg),
                     "--emit-json", str(js))
    assert code == 0
    assert svg.read_bytes().startswith(b"<?xml")
    assert len(json.loads(js.read_text())["cells"]) == 8
    code, out, _ = run(capsys, "--output", "svg", "fan", "--config", "gl1_in_gl2_corner")
    assert out.startswith("<?xml")


def test_unknown_config(capsys):
    code, _, err = run(capsys, "fan", "--config", "gl9")
    assert code == 2 and "built-in" in err


def test_period_and_eisenstein(capsys, tmp_path):
    form = tmp_path / "form.json"
    form.write_text(json.dumps({"cells": {"({1},{2})": [{"lambda_re": ["-2"], "lambda_im": ["0"],
                                                         "q": "1", "c_re": "1", "c_im": "0"}]}}))
    code, out, _ = run(capsys, "period", "--config", "gl1_in_gl2_corner", "--form", str(form),
                       "--expansion", "--check-integrability")
    data = json.loads(out)
    assert code == 0 and data["regularized_period"] == "2/3" and data["integrable"]
    code, out, _ = run(capsys, "eisenstein", "--config", "gl2_diag_in_gl2xgl2", "--c", "1", "--T", "1,0")
    data = json.loads(out)
    assert code == 0 and data["poles"] == ["0"] and data["poles_match_roots"]


def test_irregular_period_exit_1(capsys, tmp_path):
    form = tmp_path / "form.json"
    form.write_text(json.dumps({"cells": {"({1},{2})": [{"lambda_re": ["-1/2"]}]}}))
    code, out, _ = run(capsys, "period", "--config", "gl1_in_gl2_corner", "--form", str(form))
    assert code == 1 and json.loads(out)["xi_regular"] is False


def test_figure_and_suite(capsys, tmp_path, monkeypatch):
    out = tmp_path / "fig8.svg"
    assert run(capsys, "figure", "fig8", "--out", str(out))[0] == 0
    assert out.exists()
    assert run(capsys, "figure", "fig42")[0] == 2
    code, text, _ = run(capsys, "suite", "gamma")
    assert code == 0 and json.loads(text)["passed"]
    monkeypatch.setenv("CONECALC_SEED", "11")
    code, text, _ = run(capsys, "suite", "eisenstein")
    assert code == 0 and json.loads(text)["seed"] == 11
    assert run(capsys, "suite", "nope")[0] == 2
