"""
Exact extremes from the secular function
========================================

The arrowhead form of a bordered matrix has its largest eigenvalue at the
root of ``f(t) = c - t + sum_j b_j^2 / (t - d_j)`` above the top pole.
"""

import numpy as np

from spectral_perturb.bounds import lili_radius
from spectral_perturb.linalg import BorderedSpec, assemble_bordered, jacobi_eigen
from spectral_perturb.secular import (
    from_bordered,
    largest_eigenvalue,
    secular_eval,
    smallest_eigenvalue,
    upper_root_bound,
)

rng = np.random.default_rng(3)
g = rng.standard_normal((6, 6))
spec = BorderedSpec((g + g.T) / 2, rng.standard_normal(6), -0.2)
prob = from_bordered(spec)

top = largest_eigenvalue(prob)
star = upper_root_bound(prob.poles[0], prob.c, prob.weights.sum())
print("top pole       :", prob.poles[0])
print("root           :", top, " f(root) =", secular_eval(prob, top))
print("bracket end    :", star)

lam = jacobi_eigen(assemble_bordered(spec)).eigenvalues
print("oracle extremes:", lam[0], lam[-1])
print("secular        :", top, smallest_eigenvalue(prob))

# a tiny border against a large gap moves the root by about ||a||^2 / gap;
# the bound radius resolves it even where the root itself cannot
print("\nradius for ||a|| = 1e-6, gap 1e3:", lili_radius(1e3, 1e-12))
