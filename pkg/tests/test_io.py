import json
import warnings

import numpy as np
import pytest

from spectral_perturb.errors import InputError
from spectral_perturb.graph import Graph
from spectral_perturb.io import (
    dumps,
    load_graph,
    load_pinning_problem,
    load_symmetric,
    load_vector,
    write_graph,
    write_matrix_json,
)


def test_dumps_17_digits():
    assert dumps(0.1) == "0.10000000000000001"
    assert dumps({"a": [1, 2.5, None, True], "b": float("nan")}) == '{"a": [1, 2.5, null, true], "b": null}'
    assert json.loads(dumps(np.arange(3.0))) == [0, 1, 2]


def test_dumps_round_trips(rng):
    vals = rng.standard_normal(50)
    assert np.array_equal(np.array(json.loads(dumps(vals))), vals)


def test_matrix_json_round_trip(tmp_path, rng):
    g = rng.standard_normal((4, 4))
    m = g + g.T
    write_matrix_json(tmp_path / "m.json", m)
    np.testing.assert_array_equal(load_symmetric(tmp_path / "m.json"), m)


def test_csv_and_symmetry_warning(tmp_path):
    (tmp_path / "m.csv").write_text("1,2\n2.1,1\n")
    with pytest.warns(UserWarning):
        m = load_symmetric(tmp_path / "m.csv")
    assert m[0, 1] == pytest.approx(2.05)
    (tmp_path / "s.csv").write_text("1,2\n2,1\n")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        load_symmetric(tmp_path / "s.csv")


def test_bad_inputs(tmp_path):
    (tmp_path / "r.csv").write_text("1,2\n3\n")
    with pytest.raises(InputError):
        load_symmetric(tmp_path / "r.csv")
    (tmp_path / "n.csv").write_text("1,x\n")
    with pytest.raises(InputError):
        load_vector(tmp_path / "n.csv")
    (tmp_path / "d.json").write_text('{"dim": 3, "entries": [[1, 0], [0, 1]]}')
    with pytest.raises(InputError):
        load_symmetric(tmp_path / "d.json")
    with pytest.raises(InputError):
        load_vector(tmp_path / "missing.csv")


def test_vector_column_csv(tmp_path):
    (tmp_path / "a.csv").write_text("1\n2\n3\n")
    np.testing.assert_array_equal(load_vector(tmp_path / "a.csv"), [1, 2, 3])


def test_graph_formats(tmp_path):
    g = Graph.cycle(5)
    write_graph(tmp_path / "g.txt", g)
    assert load_graph(tmp_path / "g.txt") == g
    (tmp_path / "g.json").write_text('{"n": 3, "edges": [[0, 1], [1, 2]]}')
    assert load_graph(tmp_path / "g.json") == Graph.path(3)
    (tmp_path / "bad.txt").write_text("3 2\n0 1\n")
    with pytest.raises(InputError):
        load_graph(tmp_path / "bad.txt")


def test_pinning_file(tmp_path):
    obj = {"graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}, "pinned": [0],
           "sigma": 1.0, "f_bound": 0.2, "Q": [[1, 0], [0, 1]], "B": [[1, 0], [0, 2]]}
    (tmp_path / "p.json").write_text(json.dumps(obj))
    p = load_pinning_problem(tmp_path / "p.json")
    assert p.q_norm == 1.0 and p.qb_min == pytest.approx(2.0) and p.kappa is None
    del obj["sigma"]
    (tmp_path / "q.json").write_text(json.dumps(obj))
    with pytest.raises(InputError):
        load_pinning_problem(tmp_path / "q.json")
