"""Graph Laplacians and edge-deletion bounds on algebraic connectivity.

Deleting an edge ``e`` from ``G`` is the same as appending ``e`` to the
complement. Since ``a(H) >= n - lambda_1(L_{H^c})`` for every graph ``H``, an
upper bound on the top Laplacian eigenvalue of ``G^c + e`` is a lower bound on
``a(G - e)``. The top eigenvalue of ``L_{G^c + e} = I I^T + i_e i_e^T`` equals
that of the bordered Gram matrix ``[i_e, I]^T [i_e, I]`` whose corner is
``i_e^T i_e = 2`` and whose border is ``I^T i_e``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bounds import BoundReport, LiLiInputs, lili_two_sided
from .errors import InputError
from .linalg import as_symmetric, jacobi_eigen

__all__ = [
    "Graph",
    "edge_vector",
    "incidence",
    "adjacency",
    "degrees",
    "laplacian",
    "laplacian_spectrum",
    "component_count",
    "algebraic_connectivity",
    "connectivity_lower_from_complement",
    "edge_append_bound",
    "all_graphs",
]


def _norm_edge(u, v):
    u, v = int(u), int(v)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0 .. n-1``."""

    n: int
    edges: frozenset

    def __init__(self, n, edges=()):
        n = int(n)
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        es = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            e = _norm_edge(u, v)
            if e in es:
                raise InputError(f"duplicate edge {e}")
            es.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(es))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self):
        return sorted(self.edges)

    def has_edge(self, u, v) -> bool:
        return _norm_edge(u, v) in self.edges

    def complement(self) -> "Graph":
        full = itertools.combinations(range(self.n), 2)
        return Graph(self.n, [e for e in full if e not in self.edges])

    def add_edge(self, u, v) -> "Graph":
        return Graph(self.n, list(self.edges) + [_norm_edge(u, v)])

    def remove_edge(self, u, v) -> "Graph":
        e = _norm_edge(u, v)
        if e not in self.edges:
            raise InputError(f"edge {e} not in graph")
        return Graph(self.n, self.edges - {e})

    @classmethod
    def complete(cls, n):
        return cls(n, itertools.combinations(range(n), 2))

    @classmethod
    def path(cls, n):
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n):
        return cls(n, [(i, (i + 1) % n) for i in range(n)])


def edge_vector(n, u, v) -> np.ndarray:
    """``i_e``: ``-1`` at ``u``, ``+1`` at ``v``."""
    out = np.zeros(n)
    out[u] = -1.0
    out[v] = 1.0
    return out


def incidence(g: Graph) -> np.ndarray:
    """Vertex-by-edge incidence matrix; the lower-indexed end is positive."""
    out = np.zeros((g.n, g.m))
    for k, (u, v) in enumerate(g.sorted_edges()):
        out[u, k] = 1.0
        out[v, k] = -1.0
    return out


def adjacency(g: Graph) -> np.ndarray:
    out = np.zeros((g.n, g.n))
    for u, v in g.edges:
        out[u, v] = out[v, u] = 1.0
    return out


def degrees(g: Graph) -> np.ndarray:
    out = np.zeros(g.n)
    for u, v in g.edges:
        out[u] += 1
        out[v] += 1
    return out


def laplacian(g: Graph) -> np.ndarray:
    return as_symmetric(np.diag(degrees(g)) - adjacency(g))


def laplacian_spectrum(g: Graph) -> np.ndarray:
    """Laplacian eigenvalues, descending."""
    return jacobi_eigen(laplacian(g)).eigenvalues


def component_count(g: Graph) -> int:
    parent = list(range(g.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return sum(1 for i in range(g.n) if find(i) == i)


def algebraic_connectivity(g: Graph) -> float:
    """Second-smallest Laplacian eigenvalue (zero iff ``g`` is disconnected)."""
    if g.n < 2:
        raise InputError("algebraic connectivity needs at least 2 vertices")
    lam = laplacian_spectrum(g)
    val = float(lam[g.n - 2])
    # kernel eigenvalues come back as rounding noise
    return 0.0 if abs(val) <= 1e-10 * (1.0 + lam[0]) else val


def _top_laplacian(g: Graph) -> float:
    if g.m == 0:
        return 0.0
    return float(laplacian_spectrum(g)[0])


def connectivity_lower_from_complement(g: Graph) -> float:
    if g.n < 2:
        raise InputError("need at least 2 vertices")
    return g.n - _top_laplacian(g.complement())


def edge_append_bound(g: Graph, u: int, v: int) -> BoundReport:
    """Lower bound on ``a(G - e)`` for ``e = (u, v)`` in ``g``.

    The Li-Li upper bound on ``lambda_1(L_{G^c + e})`` is turned into a
    connectivity bound through ``a(H) >= n - lambda_1(L_{H^c})``. The exact
    field holds ``a(G - e)`` from the eigensolver.
    """
    if not g.has_edge(u, v):
        raise InputError(f"edge ({u}, {v}) is not in the graph")
    gc = g.complement()
    lam1 = _top_laplacian(gc)
    border = incidence(gc).T @ edge_vector(g.n, u, v)
    a_norm = float(np.linalg.norm(border))
    top_upper = lili_two_sided(LiLiInputs(lam1, 2.0, a_norm, 0.0)).upper
    exact = algebraic_connectivity(g.remove_edge(u, v))
    return BoundReport("edge_delete_connectivity", lower=g.n - top_upper, exact=exact)


def all_graphs(n):
    """Every simple graph on ``n`` labelled vertices (``2^(n choose 2)`` of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [e for k, e in enumerate(pairs) if mask >> k & 1])
