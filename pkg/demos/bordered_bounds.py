"""
Bounding the top eigenvalue of a bordered matrix
=================================================

Append a row/column ``(c, a)`` to a symmetric ``M`` and compare the
closed-form bounds with the exact answer.
"""

import numpy as np

from spectral_perturb import BorderedSpec, assemble_bordered, bordered_bounds, jacobi_eigen

rng = np.random.default_rng(0)
g = rng.standard_normal((5, 5))
spec = BorderedSpec((g + g.T) / 2, 0.3 * rng.standard_normal(5), 0.5)

print("lambda_1(M) =", jacobi_eigen(spec.m).eigenvalues[0])
print("lambda_1(A) =", jacobi_eigen(assemble_bordered(spec)).eigenvalues[0])

# every bound carries its exact value and slack
for name, rep in bordered_bounds(spec).items():
    print(f"{name:26s} lower={rep.lower!s:22s} upper={rep.upper!s:22s} exact={rep.exact:.6f}")

# the two-sided bound is tight for M = I, c = 1: lambda_max = 1 + ||a||
a = np.array([0.3, 0.4, 0.0])
tight = bordered_bounds(BorderedSpec(np.eye(3), a, 1.0))["lili"]
print("\nidentity border:", tight.lower, tight.upper, tight.exact)
