import json

import numpy as np
import pytest

from spectral_perturb.cli import main
from spectral_perturb.io import write_matrix_json


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def identity_files(tmp_path):
    write_matrix_json(tmp_path / "m.json", np.eye(3))
    (tmp_path / "a.csv").write_text("0.3,0.4,0\n")
    return tmp_path / "m.json", tmp_path / "a.csv"


def test_bounds_identity_tight(capsys, identity_files):
    m, a = identity_files
    code, out, _ = run(capsys, "bounds", "--input", m, "--vector", a, "--c", 1)
    assert code == 0
    rep = {b["method"]: b for b in json.loads(out)["bounds"]}["lili"]
    assert rep["lower"] == pytest.approx(1.5, abs=1e-14)
    assert rep["upper"] == pytest.approx(1.5, abs=1e-14)
    assert rep["exact"] == pytest.approx(1.5, abs=1e-12)


def test_bounds_zero_border(capsys, tmp_path):
    write_matrix_json(tmp_path / "m.json", np.diag([2.0, 1.0]))
    (tmp_path / "a.csv").write_text("0,0\n")
    code, out, _ = run(capsys, "bounds", "--input", tmp_path / "m.json", "--vector", tmp_path / "a.csv", "--c", 0.5)
    rep = {b["method"]: b for b in json.loads(out)["bounds"]}
    assert code == 0
    assert rep["lili"]["lower"] == rep["lili"]["upper"] == 2.0
    assert rep["lili_literature"]["lower"] == rep["lili_literature"]["upper"] == 2.0


def test_emitted_fixtures_have_nonnegative_slack(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--seed", 5, "--trials", 3, "--dim", 4, "--emit", tmp_path)
    assert code == 0
    for entry in json.loads((tmp_path / "index.json").read_text()):
        code, out, _ = run(capsys, "bounds", "--input", tmp_path / entry["m"],
                           "--vector", tmp_path / entry["a"], "--c", repr(entry["c"]))
        assert code == 0 and json.loads(out)["all_hold"]


def test_secular(capsys, identity_files):
    m, a = identity_files
    code, out, _ = run(capsys, "secular", "--input", m, "--vector", a, "--c", 1)
    res = json.loads(out)
    assert code == 0 and res["agree"]
    assert res["largest"] == pytest.approx(1.5, abs=1e-14)


def test_graph_delete(capsys, tmp_path):
    (tmp_path / "p3.txt").write_text("3 2\n0 1\n1 2\n")
    code, out, _ = run(capsys, "graph", "--edges", tmp_path / "p3.txt", "--delete", 0, 1)
    res = json.loads(out)
    assert code == 0
    assert res["report"]["method"] == "edge_delete_connectivity"
    assert res["report"]["lower"] <= res["report"]["exact"] == 0


C4 = {"graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}, "pinned": [0],
      "sigma": 1.0, "f_bound": 0.2, "q_norm": 1.0, "qb_min": 2.0}


def test_pinning_sweep_csv(capsys, tmp_path):
    (tmp_path / "c4.json").write_text(json.dumps(C4))
    code, out, _ = run(capsys, "pinning", "--problem", tmp_path / "c4.json",
                       "--kappa-sweep", "2.5:10:0.5", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "kappa,iterative_bound,sound_bound,lambda_min,margin,controllable"
    assert len(lines) == 1 + 16
    rows = [dict(zip(lines[0].split(","), ln.split(","))) for ln in lines[1:]]
    assert all(float(r["sound_bound"]) <= float(r["lambda_min"]) for r in rows)


def test_pinning_summary(capsys, tmp_path):
    (tmp_path / "c4.json").write_text(json.dumps(C4))
    code, out, _ = run(capsys, "pinning", "--problem", tmp_path / "c4.json", "--kappa", 4, "--best-pins", 1)
    res = json.loads(out)
    assert code == 0
    assert res["kappa_threshold"] == pytest.approx(2 + 2 / 1.8)
    assert res["iterative_bound"] == pytest.approx(1.0)
    assert len(res["best_pins"]) == 4


def test_cs_reproducible(capsys, tmp_path):
    args = ["cs", "--gen", "gaussian", "--n", 20, "--p", 40, "--s", 4, "--trials", 300, "--seed", 42]
    run(capsys, *args, "--out", tmp_path / "a.json")
    run(capsys, *args, "--out", tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    res = json.loads((tmp_path / "a.json").read_text())
    assert res["bound_violations"] == 0 and res["trials"] == 300


def test_verify_zero_trials_warns(capsys):
    code, out, err = run(capsys, "verify", "--trials", 0)
    assert code == 0 and "warning" in err


def test_verify_fault_injection(capsys, tmp_path):
    code, out, err = run(capsys, "verify", "--trials", 4, "--dim", 3, "--inject-fault",
                         "--dump", tmp_path / "bad.json")
    assert code == 1
    dumped = json.loads((tmp_path / "bad.json").read_text())
    assert len(dumped) == 4 and "lili_sandwich" in dumped[0]["failed"]


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "bounds", "--input", tmp_path / "none.csv", "--vector", "x", "--c", 1)
    assert code == 2 and err.startswith("error:")
    code, _, _ = run(capsys, "verify", "--dim", 40, "--trials", 1)
    assert code == 2
    code, _, _ = run(capsys, "verify", "--trials", 1, "--tol", -1)
    assert code == 2
