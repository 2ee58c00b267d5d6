import json
from fractions import Fraction as F

import pytest

from fuzzdyn import load_scenario
from fuzzdyn.cli import main
from fuzzdyn.errors import ScenarioInvalid
from fuzzdyn.scenario import read_scenario


def test_defaults():
    sc = load_scenario()
    assert sc.system.describe() == "tent_grid(k=5)"
    assert sc.epsilon == F(1, 2) and sc.delta == F(1, 16)
    assert sc.lattice.values == (F(1, 4), F(1, 2), 1)
    assert sc.echo()["schema"] == "fuzzdyn/1"


@pytest.mark.parametrize("data,field", [
    ({"bogus": 1}, "bogus"),
    ({"schema": "other/2"}, "schema"),
    ({"epsilon": 0.5}, "epsilon"),
    ({"delta": "-1/2"}, "delta"),
    ({"system": {"kind": "torus"}}, "system.kind"),
    ({"system": {"kind": "explicit", "dist": [[0, 1], [2, 0]], "map": [0, 1]}}, "system"),
    ({"g": "wiggle"}, "g"),
    ({"lattice": ["1/2"]}, "lattice"),
    ({"horizon": -1}, "horizon"),
    ({"engine": "fast"}, "engine"),
])
def test_invalid_fields_are_named(data, field):
    with pytest.raises(ScenarioInvalid) as info:
        load_scenario(data)
    assert info.value.field == field


def test_explicit_system_and_echo_normalization():
    sc = load_scenario({"system": {"kind": "explicit", "dist": [[0, "1/2"], ["1/2", 0]],
                                   "map": [1, 0]}, "epsilon": "2/4"})
    assert sc.system.map.table == (1, 0)
    assert sc.echo()["epsilon"] == "1/2"


def test_env_cap(monkeypatch):
    monkeypatch.setenv("FUZZDYN_CAP", "100")
    assert load_scenario().cap == 100
    assert load_scenario({"cap": 50}).cap == 50


def test_read_scenario_errors(tmp_path):
    p = tmp_path / "s.json"
    p.write_text("{not json")
    with pytest.raises(ScenarioInvalid):
        read_scenario(p)
    with pytest.raises(ScenarioInvalid):
        read_scenario(tmp_path / "missing.json")


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_verify_example(capsys):
    code, out, _ = run_cli(["verify", "--suite", "example31"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == "fuzzdyn/1" and rep["tool"] == "fuzzdyn"
    w = rep["checks"][0]["witness"]
    assert w["top_cut"] == "[1/2,1] grid" and w["f_image"] == "{1}"
    assert rep["checks"][0]["timing"] is None


def test_cli_text_and_out(tmp_path, capsys):
    out = tmp_path / "r.txt"
    code, _, _ = run_cli(["report", "--suite", "example31", "--format", "text", "--timing",
                          "--out", str(out)], capsys)
    assert code == 0
    assert out.read_text() == "top-cut-grows-under-cap2x\tpass\ttop-cut-counterexample\n"


def test_cli_invalid_scenario_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"horizon": "ten"}))
    code, _, err = run_cli(["verify", "--scenario", str(p)], capsys)
    assert code == 2 and "horizon" in err


def test_cli_cap_exceeded(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("FUZZDYN_CAP", "5")
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"system": {"kind": "rotation", "p": 1, "q": 5}, "g": "identity"}))
    # the Hausdorff-ball basis needs all 31 subsets, more than the cap allows
    code, _, err = run_cli(["transitivity", "--scenario", str(p), "--check", "theorem61"], capsys)
    assert code == 2 and "cap" in err
    # sensitivity falls back to sampled probes instead of failing
    code, out, _ = run_cli(["sensitivity", "--scenario", str(p), "--level", "hyper",
                            "--horizon", "4"], capsys)
    assert code == 0 and json.loads(out)["probe_mode"].startswith("sampled")


def test_cli_sensitivity(tmp_path, capsys):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"system": {"kind": "rotation", "p": 1, "q": 8}}))
    code, out, _ = run_cli(["sensitivity", "--scenario", str(p), "--level", "base",
                            "--epsilon", "1/4", "--delta", "1/16", "--horizon", "10"], capsys)
    v = json.loads(out)
    assert code == 0 and v["status"] == "refuted_at_horizon" and v["failing_center"] == 0
    code, out, _ = run_cli(["sensitivity", "--level", "base", "--family", "multi:2",
                            "--delta", "1/8"], capsys)
    assert json.loads(out)["status"] == "certified"
    code, _, err = run_cli(["sensitivity", "--family", "sometimes:3"], capsys)
    assert code == 2


def test_cli_transitivity(tmp_path, capsys):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"system": {"kind": "rotation", "p": 1, "q": 5}, "g": "identity"}))
    code, out, _ = run_cli(["transitivity", "--scenario", str(p), "--check", "transitive",
                            "--horizon", "20"], capsys)
    v = json.loads(out)
    assert v["status"] == "holds_at_horizon" and v["min_block"] == 5
    code, out, _ = run_cli(["transitivity", "--scenario", str(p), "--check", "theorem63"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["checks"][0]["status"] == "skipped"
    assert "xi_g(z) = z" in rep["checks"][0]["witness"]["reason"]
    code, out, _ = run_cli(["transitivity", "--scenario", str(p), "--check", "theorem61",
                            "--format", "text"], capsys)
    assert code == 0 and out.startswith("hyper-weak-mixing-or-blocking-pair\tpass")


def test_cli_engine_both(capsys):
    code, out, _ = run_cli(["sensitivity", "--level", "fuzzy", "--engine", "both",
                            "--horizon", "6", "--format", "text"], capsys)
    assert code == 0 and "status\tcertified" in out
