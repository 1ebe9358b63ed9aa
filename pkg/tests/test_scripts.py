import importlib.util
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def _load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


@pytest.mark.parametrize("name,argv,product", [
    ("reproduce_examples", ["--n", "256"], "arctan_curve.json"),
    ("closed_census", ["--n", "256", "--grid-b", "2"], "census.csv"),
    ("equal_mean_curvature", ["--n", "256"], "tau.csv"),
])
def test_script_runs(tmp_path, capsys, name, argv, product):
    _load(name).main(argv + ["--out", str(tmp_path)])
    assert (tmp_path / product).exists()
    assert capsys.readouterr().out
