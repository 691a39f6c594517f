import math

import numpy as np
import pytest

from spectral_perturb.errors import InputError
from spectral_perturb.graph import (
    Graph,
    algebraic_connectivity,
    all_graphs,
    component_count,
    connectivity_lower_from_complement,
    edge_append_bound,
    incidence,
    laplacian,
    laplacian_spectrum,
)


def random_graph(rng, n, p=0.5):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def test_incidence_single_edge():
    np.testing.assert_array_equal(incidence(Graph(2, [(0, 1)])), [[1], [-1]])
    assert incidence(Graph(3)).shape == (3, 0)


def test_incidence_factors_laplacian(rng):
    g = random_graph(rng, 8)
    inc = incidence(g)
    np.testing.assert_array_equal(inc @ inc.T, laplacian(g))


def test_laplacian_small():
    np.testing.assert_array_equal(laplacian(Graph.complete(2)), [[1, -1], [-1, 1]])
    np.testing.assert_array_equal(laplacian(Graph(4)), np.zeros((4, 4)))
    np.testing.assert_allclose(laplacian_spectrum(Graph.path(3)), [3, 1, 0], atol=1e-14)


def test_graph_validation():
    with pytest.raises(InputError):
        Graph(3, [(0, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 3)])
    with pytest.raises(InputError):
        Graph(3, [(1, 0), (0, 1)])
    assert Graph(3, [(1, 0)]).edges == frozenset({(0, 1)})


def test_algebraic_connectivity():
    assert algebraic_connectivity(Graph.complete(4)) == pytest.approx(4.0)
    assert algebraic_connectivity(Graph(4, [(0, 1), (2, 3)])) == 0.0
    assert algebraic_connectivity(Graph.path(3)) == pytest.approx(1.0)
    assert algebraic_connectivity(Graph.path(4)) == pytest.approx(2 - math.sqrt(2))


def test_complement_bound():
    assert connectivity_lower_from_complement(Graph.complete(5)) == 5.0
    assert connectivity_lower_from_complement(Graph.path(3)) == pytest.approx(1.0)


def test_complement_bound_random(rng):
    for _ in range(50):
        g = random_graph(rng, int(rng.integers(2, 11)))
        assert connectivity_lower_from_complement(g) <= algebraic_connectivity(g) + 1e-9


def test_edge_delete_disconnects_k2():
    rep = edge_append_bound(Graph.complete(2), 0, 1)
    assert rep.exact == 0.0
    assert rep.lower <= 0.0


def test_edge_delete_cycle_to_path():
    rep = edge_append_bound(Graph.cycle(4), 0, 3)
    assert rep.exact == pytest.approx(2 - math.sqrt(2))
    assert rep.lower <= rep.exact + 1e-12


def test_edge_delete_requires_edge():
    with pytest.raises(InputError):
        edge_append_bound(Graph.path(3), 0, 2)


def test_edge_delete_random(rng):
    for _ in range(50):
        g = random_graph(rng, int(rng.integers(2, 11)), 0.6)
        if g.m == 0:
            continue
        u, v = g.sorted_edges()[int(rng.integers(g.m))]
        rep = edge_append_bound(g, u, v)
        assert rep.holds(1e-9)


def test_zero_multiplicity_small():
    for g in all_graphs(4):
        lam = laplacian_spectrum(g)
        assert np.count_nonzero(np.abs(lam) <= 1e-9 * (1 + lam[0])) == component_count(g)


def test_all_graphs_count():
    assert sum(1 for _ in all_graphs(4)) == 64
