"""Dense symmetric linear algebra and the bordered-matrix construction.

Everything here works on plain numpy arrays. A "symmetric matrix" is a square
float array that is exactly symmetric (``m[i, j] == m[j, i]`` bitwise) and
finite; :func:`as_symmetric` produces one. Eigenvalues are always ordered
descending, ``lam[0] >= lam[1] >= ...``.

The Jacobi solver in this module is the reference oracle the rest of the
package is checked against, so it deliberately avoids LAPACK.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import InputError, NumericalError

__all__ = [
    "as_vector",
    "as_symmetric",
    "BorderedSpec",
    "Spectrum",
    "assemble_bordered",
    "jacobi_eigen",
    "to_arrowhead",
    "arrowhead_matrix",
    "rank_one_update",
    "operator_norm",
    "leading_projection_norm",
]


def _frozen(arr):
    arr.setflags(write=False)
    return arr


def as_vector(x) -> np.ndarray:
    v = np.array(x, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise InputError("vector has non-finite entries")
    return _frozen(v)


def as_symmetric(m, *, check: float | None = None) -> np.ndarray:
    """Return ``(m + m.T) / 2`` as a read-only float array.

    If ``check`` is given, an :class:`InputError` is raised when the input's
    largest asymmetry ``max |m - m.T|`` exceeds it.
    """
    a = np.array(m, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise InputError("matrix dimension must be positive")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    if check is not None:
        asym = float(np.max(np.abs(a - a.T)))
        if asym > check:
            raise InputError(f"matrix is not symmetric (max asymmetry {asym:.3g})")
    return _frozen((a + a.T) / 2.0)


@dataclass(frozen=True)
class BorderedSpec:
    """The triple ``(M, a, c)`` describing ``A = [[c, a^T], [a, M]]``."""

    m: np.ndarray
    a: np.ndarray
    c: float

    def __post_init__(self):
        m = as_symmetric(self.m)
        a = as_vector(self.a)
        if a.shape[0] != m.shape[0]:
            raise InputError(
                f"border vector has length {a.shape[0]}, matrix has dimension {m.shape[0]}"
            )
        c = float(self.c)
        if not np.isfinite(c):
            raise InputError("corner value c must be finite")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)

    @property
    def dim(self) -> int:
        return self.m.shape[0]

    @classmethod
    def from_columns(cls, x, X):
        """Gram form: ``A = (x, X)^T (x, X)``."""
        x = np.asarray(x, dtype=float).reshape(-1)
        X = np.asarray(X, dtype=float)
        return cls(X.T @ X, X.T @ x, float(x @ x))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def assemble_bordered(spec: BorderedSpec) -> np.ndarray:
    d = spec.dim
    out = np.empty((d + 1, d + 1))
    out[0, 0] = spec.c
    out[0, 1:] = spec.a
    out[1:, 0] = spec.a
    out[1:, 1:] = spec.m
    return _frozen(out)


@njit(cache=True)
def _offdiag_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            acc += a[i, j] * a[i, j]
    return math.sqrt(2.0 * acc)


@njit(cache=True)
def _jacobi_sweeps(a, v, tol, max_sweeps):
    # In-place cyclic-by-row sweeps; returns (sweeps used, final off-norm).
    n = a.shape[0]
    off = _offdiag_norm(a)
    sweeps = 0
    while off >= tol and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                cs = 1.0 / math.sqrt(t * t + 1.0)
                sn = t * cs
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = cs * akp - sn * akq
                    a[k, q] = sn * akp + cs * akq
                for k in range(n):
                    a[p, k] = a[k, p]
                    a[q, k] = a[k, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = cs * vkp - sn * vkq
                    v[k, q] = sn * vkp + cs * vkq
        sweeps += 1
        off = _offdiag_norm(a)
    return sweeps, off


def jacobi_eigen(m, max_sweeps: int = 100) -> Spectrum:
    """Cyclic-by-row Jacobi eigensolver.

    Converges when the off-diagonal Frobenius norm drops below
    ``1e-12 * (1 + ||m||_F)``. Each eigenvector is signed so that its
    largest-magnitude entry (lowest index on ties) is positive.
    """
    a = np.array(as_symmetric(m))
    n = a.shape[0]
    v = np.eye(n)
    tol = 1e-12 * (1.0 + float(np.linalg.norm(a)))
    _, off = _jacobi_sweeps(a, v, tol, max_sweeps)
    if off >= tol:
        raise NumericalError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})",
            residual=off,
        )

    lam = np.diag(a).copy()
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    v = v[:, order]
    pivots = np.argmax(np.abs(v), axis=0)
    signs = np.where(v[pivots, np.arange(n)] < 0.0, -1.0, 1.0)
    v = v * signs
    return Spectrum(_frozen(lam), _frozen(v))


def to_arrowhead(spec: BorderedSpec):
    """Reduce ``A`` to arrowhead form ``B = [[c, b^T], [b, diag(d)]]``.

    Returns ``(d, b, c)`` where ``d`` are the eigenvalues of ``M`` (descending)
    and ``b[j] = <a, V_j>``. ``A`` and ``B`` are orthogonally similar.
    """
    sp = jacobi_eigen(spec.m)
    b = sp.eigenvectors.T @ spec.a
    return sp.eigenvalues, _frozen(b), spec.c


def arrowhead_matrix(d, b, c) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    return assemble_bordered(BorderedSpec(np.diag(d), b, c))


def rank_one_update(m, x) -> np.ndarray:
    m = as_symmetric(m)
    x = as_vector(x)
    if x.shape[0] != m.shape[0]:
        raise InputError(f"vector length {x.shape[0]} != matrix dimension {m.shape[0]}")
    return as_symmetric(m + np.outer(x, x))


def operator_norm(m) -> float:
    lam = jacobi_eigen(m).eigenvalues
    return float(max(abs(lam[0]), abs(lam[-1])))


def leading_projection_norm(spectrum: Spectrum, a, rtol: float = 1e-10) -> float:
    """Norm of the projection of ``a`` onto the eigenspace of the top eigenvalue.

    Eigenvalues within ``rtol * (1 + |lam_1|)`` of ``lam_1`` count as the same
    eigenvalue. For a simple top eigenvalue this is ``|<a, V_1>|``.
    """
    lam = spectrum.eigenvalues
    k = int(np.count_nonzero(lam[0] - lam <= rtol * (1.0 + abs(lam[0]))))
    return float(np.linalg.norm(spectrum.eigenvectors[:, :k].T @ np.asarray(a, dtype=float)))
