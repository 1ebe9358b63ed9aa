import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, strategies as st

from curvedfold import io
from curvedfold.builtins import EXAMPLES, helix
from curvedfold.cli import ConfigError, main, number, parse_alpha
from curvedfold.strip import build_origami_map, build_strip, sample_mesh


def _run(tmp_path, *argv):
    return main([argv[0], "--out", str(tmp_path), *argv[1:]])


def _report(tmp_path, command):
    return json.loads((tmp_path / command / f"{command}.json").read_text())


def test_number_parsing():
    assert number("10pi/24") == pytest.approx(10 * np.pi / 24)
    assert number("-1/2") == -0.5
    assert number("sqrt(2)") == pytest.approx(np.sqrt(2))
    with pytest.raises(ConfigError):
        number("__import__('os')")


def test_parse_alpha_forms():
    c = helix(n=64)
    assert np.allclose(parse_alpha("const(pi/4)", c), np.pi / 4)
    assert np.allclose(parse_alpha("linear(2, 1)", c), 2 * c.s + 1)
    with pytest.raises(ConfigError):
        parse_alpha("spline(1)", c)


def test_examples_listing(tmp_path, capsys):
    assert _run(tmp_path, "examples") == 0
    text = capsys.readouterr().out
    for name in EXAMPLES:
        assert name in text
    rows = _report(tmp_path, "examples")["examples"]
    assert [r["name"] for r in rows] == list(EXAMPLES)
    assert all(r["anchor"] for r in rows)


def test_classify_arctan(tmp_path):
    code = _run(tmp_path, "classify", "--example", "arctan_curve",
                "--alpha", "linear(pi/24, 10pi/24)", "--n", "512")
    assert code == 0
    r = _report(tmp_path, "classify")
    assert r["N"] == 4 and r["n_right_classes"] == 4 and r["agrees"]
    assert r["fired_case"] == "B1_no_symmetries"


def test_develop_circle(tmp_path):
    assert _run(tmp_path, "develop", "--example", "circle", "--alpha", "const(pi/4)") == 0
    r = _report(tmp_path, "develop")
    assert abs(r["length"] - 2 * np.pi) < 1e-4
    assert abs(r["circle_fit"]["radius"] - np.sqrt(2)) < 1e-4
    root = ET.parse(tmp_path / "develop" / "pattern.svg").getroot()
    assert root.tag.endswith("svg")


def test_build_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["build", "--out", str(d), "--example", "quarter_circle", "--n", "256"]) == 0
    for f in ("strip.obj", "origami.obj", "build.json"):
        assert (a / "build" / f).read_bytes() == (b / "build" / f).read_bytes()


def test_isomers_writes_four_meshes(tmp_path):
    assert _run(tmp_path, "isomers", "--example", "helix", "--n", "256") == 0
    r = _report(tmp_path, "isomers")
    assert r["n_right_classes"] == 2
    for name in r["names"]:
        assert (tmp_path / "isomers" / f"{name}.obj").exists()


def test_samples_file_input(tmp_path):
    path = tmp_path / "helix.txt"
    np.savetxt(path, helix(n=400).points)
    code = _run(tmp_path, "build", "--samples", str(path), "--alpha", "const(pi/4)", "--n", "256")
    assert code == 0
    r = _report(tmp_path, "build")
    assert abs(r["length"] - 4.0) < 1e-6


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"example": "helix", "alpha": "const(pi/3)", "n": 128}))
    assert main(["build", "--config", str(cfg), "--out", str(tmp_path), "--alpha", "const(pi/4)"]) == 0
    assert _report(tmp_path, "build")["alpha"]["mean"] == pytest.approx(np.pi / 4)


@pytest.mark.parametrize("argv", [
    ["build", "--example", "nope"],
    ["build", "--example", "helix", "--alpha", "wiggle(1)"],
    ["build", "--example", "helix", "--tol", "bogus=1"],
    ["build", "--example", "helix", "--n-v", "4"],
    ["build"],
])
def test_config_errors_exit_2(tmp_path, argv):
    assert _run(tmp_path, *argv) == 2


def test_unknown_config_key_exit_2(tmp_path):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"example": "helix", "colour": "red"}))
    assert main(["build", "--config", str(cfg), "--out", str(tmp_path)]) == 2


@pytest.mark.parametrize("argv,err", [
    (["build", "--example", "helix", "--alpha", "const(0)", "--n", "64"], "AlphaOutOfRange"),
    (["census", "--example", "helix", "--n", "64"], "NotClosed"),
    (["isomers", "--example", "arctan_curve", "--alpha", "const(0.01)", "--n", "64"], "NotAdmissible"),
])
def test_geometry_errors_exit_3(tmp_path, capsys, argv, err):
    assert _run(tmp_path, *argv) == 3
    assert err in capsys.readouterr().err


def test_obj_text_structure():
    F = build_strip(helix(n=32), np.pi / 4)
    m = sample_mesh(F, 3)
    text = io.obj_text([m], ["F"], polyline=F.crease.points)
    lines = text.splitlines()
    assert sum(l.startswith("v ") for l in lines) == 33 * 3 + 33
    assert sum(l.startswith("f ") for l in lines) == 32 * 2 * 2
    assert lines[-1].startswith("l 100 ")
    assert "-0.000000" not in text


def test_svg_has_pattern_and_ticks():
    phi = build_origami_map(build_strip(helix(n=96), np.pi / 4))
    svg = io.svg_text(phi)
    assert svg.count("<polyline") >= 1 and svg.count("<line") > 10


@given(st.dictionaries(st.text(min_size=1, max_size=5),
                       st.floats(allow_nan=False, allow_infinity=False), max_size=5))
def test_json_text_roundtrip_sorted(d):
    text = io.json_text(d)
    back = json.loads(text)
    assert list(back) == sorted(d)
    for k, v in d.items():
        assert back[k] == pytest.approx(v, rel=1e-11, abs=1e-300)


def test_csv_and_read_samples_roundtrip(tmp_path):
    rows = [[0.1, 0.2, 0.3], [1.0, -2.0, 3.5]]
    p = tmp_path / "pts.csv"
    io.write_text(p, io.csv_text(["x", "y", "z"], rows))
    assert np.allclose(io.read_samples(p), rows)
