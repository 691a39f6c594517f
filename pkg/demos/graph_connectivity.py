"""
Algebraic connectivity under edge changes
=========================================

``a(G) >= n - lambda_1(L of the complement)``, and deleting an edge is a
bordered perturbation of the complement's Laplacian.
"""

import numpy as np

from spectral_perturb.graph import (
    Graph,
    algebraic_connectivity,
    connectivity_lower_from_complement,
    edge_append_bound,
)

for name, g in [("P3", Graph.path(3)), ("C6", Graph.cycle(6)), ("K5", Graph.complete(5))]:
    print(f"{name}: a(G) = {algebraic_connectivity(g):.6f}, "
          f"complement bound = {connectivity_lower_from_complement(g):.6f}")

# delete each edge of a random dense graph in turn
rng = np.random.default_rng(1)
n = 8
g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.7])
print(f"\nrandom graph, n={n}, m={g.m}, a(G)={algebraic_connectivity(g):.4f}")
for u, v in g.sorted_edges()[:6]:
    rep = edge_append_bound(g, u, v)
    print(f"  delete ({u},{v}): bound {rep.lower:+.4f}  exact {rep.exact:.4f}")
