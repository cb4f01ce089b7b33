import json

import numpy as np
import pytest

from dispersive_lamb import FIGURE_ONE, eval_bidirectional, make_relation, uniform_grid
from dispersive_lamb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_catalog_json(capsys):
    code, out = run(capsys, "catalog", "--json")
    assert code == 0
    data = json.loads(out.out)
    names = [r["name"] for r in data["relations"]]
    assert len(names) == 9 and "sqrt_abs_k" in names
    sqrt = data["relations"][names.index("sqrt_abs_k")]
    assert sqrt["regularity"]["bidirectional"]["regime"] == "fractal-candidate"


def test_catalog_text(capsys):
    code, out = run(capsys, "catalog")
    assert code == 0 and "water_wave" in out.out


def test_simulate_writes_profile(tmp_path, capsys):
    code, _ = run(capsys, "simulate", "--dispersion", "sqrt_abs_k", "--t", "2.5", "--modes", "300",
                  "--grid", "4096", "--out", str(tmp_path), "--quiet")
    assert code == 0
    text = (tmp_path / "profile_t2p5.csv").read_text()
    rows = text.splitlines()
    assert rows[0] == "x,u" and len(rows) == 4097 and "\r" not in text
    data = np.loadtxt(tmp_path / "profile_t2p5.csv", delimiter=",", skiprows=1)
    ref = eval_bidirectional(FIGURE_ONE, make_relation("sqrt_abs_k"), 300, 2.5, uniform_grid(4096))
    assert np.array_equal(data[:, 0], ref.x) and np.array_equal(data[:, 1], ref.u)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["outputs"] == ["profile_t2p5.csv"]


def test_manifest_replay_is_bitwise(tmp_path, capsys):
    first = tmp_path / "a"
    run(capsys, "simulate", "--model", "uni", "--dispersion", "klein_gordon", "--param", "kg_mass=2",
        "--t", "1,3", "--modes", "200", "--grid", "256", "--out", str(first), "--quiet")
    second = tmp_path / "b"
    code, _ = run(capsys, "simulate", "--from-manifest", str(first / "manifest.json"),
                  "--out", str(second), "--quiet")
    assert code == 0
    for name in ("profile_t1.csv", "profile_t3.csv", "manifest.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_simulate_oracle(tmp_path, capsys):
    code, out = run(capsys, "simulate", "--t", "2", "--modes", "2000", "--grid", "512", "--oracle",
                    "--out", str(tmp_path), "--json")
    assert code == 0
    report = json.loads(out.out)["report"]
    assert report["oracle_sup_norm"]["2"] < 1e-2


def test_simulate_extras(tmp_path, capsys):
    code, _ = run(capsys, "simulate", "--dispersion", "quadratic", "--t", "5", "--modes", "200",
                  "--grid", "1024", "--fractal", "--converge", "100,200,300", "--gnuplot",
                  "--out", str(tmp_path), "--quiet")
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["convergence"]["5"]["verdict"] == "converging"
    assert report["fractal"]["5"]["dimension"] < 1.1
    assert "profile_t5.csv" in (tmp_path / "plot.gp").read_text()


@pytest.mark.parametrize("argv", [
    ["simulate", "--dispersion", "quadratic", "--t", "1", "--oracle"],
    ["simulate", "--t", "-1"],
    ["simulate", "--t", "1", "--beta", "3"],
    ["simulate", "--t", "1", "--param", "nonsense"],
    ["simulate", "--t", "1", "--dispersion", "power_law", "--param", "m_pow=9"],
    ["frobnicate"],
    ["converge", "--t", "1", "--modes", "100"],
])
def test_usage_errors(argv, tmp_path, capsys):
    code, _ = run(capsys, *argv, *(["--out", str(tmp_path)] if argv[0] == "simulate" else []))
    assert code == 2
    assert not list(tmp_path.iterdir())


def test_line_compare(tmp_path, capsys):
    code, out = run(capsys, "line", "--t", "4", "--n-quad", "8192", "--grid", "121", "--compare",
                    "--out", str(tmp_path), "--json")
    assert code == 0
    assert json.loads(out.out)["4"]["sup_vs_closed_form"] < 5e-3
    assert (tmp_path / "line_t4.csv").exists()


def test_fractal_and_converge(capsys):
    code, out = run(capsys, "fractal", "--t", "30", "--modes", "2000", "--json")
    assert code == 0
    assert 1.0 < json.loads(out.out)["30"]["dimension"] < 2.0
    code, out = run(capsys, "converge", "--dispersion", "regularized_boussinesq", "--t", "10",
                    "--modes", "200,400", "--json")
    assert code == 0 and json.loads(out.out)["10"]["verdict"] == "oscillatory"


def test_verify_subset(capsys):
    code, out = run(capsys, "verify", "--only", "identities", "--json", "--sigma-variant")
    payload = json.loads(out.out)
    assert code == 0 and payload["passed"]
    assert len(payload["checks"]) == 1
    assert min(payload["sigma_variant"].values()) > 1e-4
