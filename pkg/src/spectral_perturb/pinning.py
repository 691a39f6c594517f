"""Spectral sufficient conditions for pinning control of a network.

The network of ``N`` coupled oscillators with Laplacian ``L``, coupling
``sigma`` and pinning matrix ``P = sum_{i pinned} e_i e_i^T`` is controllable
when

    0.5 * lambda_min(sigma L + kappa P) * lambda_min(QB + B^T Q^T) > sup ||F|| * ||Q||.

The matrices ``Q``, ``B`` and the nonlinearity ``F`` enter only through the
scalars ``q_norm = ||Q||``, ``qb_min = lambda_min(QB + B^T Q^T)`` and
``f_bound = sup ||F||``; :func:`scalars_from_matrices` derives the first two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .bounds import lili_radius
from .errors import InputError
from .graph import Graph, component_count, degrees, laplacian
from .linalg import as_symmetric, jacobi_eigen, operator_norm

__all__ = [
    "PinningProblem",
    "Controllability",
    "ThresholdResult",
    "lambda_min_positive",
    "laplacian_min_positive",
    "pinned_matrix",
    "controllability_condition",
    "required_level",
    "iterative_pinning_lower_bound",
    "single_pin_lower_bound",
    "sound_pinning_lower_bound",
    "kappa_threshold",
    "scalars_from_matrices",
    "best_pin_sets",
]


@dataclass(frozen=True)
class PinningProblem:
    graph: Graph
    pinned: frozenset
    sigma: float
    kappa: float | None = None
    f_bound: float = 0.0
    q_norm: float = 1.0
    qb_min: float = 0.0

    def __post_init__(self):
        pinned = frozenset(int(i) for i in self.pinned)
        if any(not 0 <= i < self.graph.n for i in pinned):
            raise InputError("pinned vertex out of range")
        if not self.sigma > 0.0:
            raise InputError("sigma must be positive")
        if self.f_bound < 0.0:
            raise InputError("f_bound must be nonnegative")
        if not self.q_norm > 0.0:
            raise InputError("q_norm must be positive")
        if self.qb_min < 0.0:
            raise InputError("qb_min must be nonnegative (QB + B^T Q^T must be PSD)")
        object.__setattr__(self, "pinned", pinned)

    def with_kappa(self, kappa: float) -> "PinningProblem":
        return replace(self, kappa=float(kappa))

    def _kappa(self) -> float:
        if self.kappa is None:
            raise InputError("this operation needs kappa")
        return float(self.kappa)


def lambda_min_positive(m) -> float:
    """Smallest nonzero eigenvalue of a PSD matrix.

    Eigenvalues at or below ``1e-9 * (1 + lambda_1)`` count as zero. Returns
    0.0 for the zero matrix.
    """
    lam = jacobi_eigen(m).eigenvalues
    pos = lam[lam > 1e-9 * (1.0 + lam[0])]
    return float(pos[-1]) if pos.size else 0.0


def laplacian_min_positive(g: Graph) -> float:
    if g.m == 0:
        return 0.0
    return lambda_min_positive(laplacian(g))


def pinned_matrix(n, pinned) -> np.ndarray:
    p = np.zeros((n, n))
    for i in pinned:
        p[i, i] = 1.0
    return p


def _coupled(p: PinningProblem) -> np.ndarray:
    n = p.graph.n
    return as_symmetric(p.sigma * laplacian(p.graph) + p._kappa() * pinned_matrix(n, p.pinned))


def required_level(p: PinningProblem) -> float:
    """``2 f_bound ||Q|| / lambda_min(QB + B^T Q^T)`` (inf when ``qb_min == 0``)."""
    num = 2.0 * p.f_bound * p.q_norm
    if p.qb_min == 0.0:
        return 0.0 if num == 0.0 else float("inf")
    return num / p.qb_min


class Controllability(NamedTuple):
    holds: bool
    margin: float
    lambda_min: float


def controllability_condition(p: PinningProblem) -> Controllability:
    """Evaluate the sufficient condition with the exact smallest eigenvalue.

    ``margin`` is ``0.5 * lambda_min * qb_min - f_bound * q_norm``.
    """
    lam = float(jacobi_eigen(_coupled(p)).eigenvalues[-1])
    margin = 0.5 * lam * p.qb_min - p.f_bound * p.q_norm
    return Controllability(margin > 0.0, margin, lam)


def iterative_pinning_lower_bound(p: PinningProblem) -> float | None:
    """``sigma a - sum_i deg_i / (kappa - sigma a)`` with ``a = lambda_min>0(L)``.

    ``None`` when ``kappa <= sigma a``. This is the closed form as usually
    stated; it is *not* a valid lower bound in general (for the path on three
    vertices pinned at an end it exceeds the true value once kappa >= 2.5).
    :func:`sound_pinning_lower_bound` is the corrected counterpart.
    """
    base = p.sigma * laplacian_min_positive(p.graph)
    kappa = p._kappa()
    if kappa <= base:
        return None
    deg = degrees(p.graph)
    total = float(sum(deg[i] for i in p.pinned))
    return base - total / (kappa - base)


def single_pin_lower_bound(g: Graph, sigma: float, kappa: float, node: int) -> float:
    """Lower bound on ``lambda_min>0(sigma L + kappa e_i e_i^T)``.

    Writes ``sigma L + kappa e_i e_i^T`` as ``[x, X][x, X]^T`` with
    ``x = sqrt(kappa) e_i`` and ``X = sqrt(sigma)`` times the incidence
    matrix, then applies the smallest-nonzero bordered bound: corner
    ``kappa``, border norm squared ``sigma kappa deg_i``, smallest nonzero
    eigenvalue of ``X^T X`` equal to ``sigma lambda_min>0(L)``. Valid for
    connected ``g``, but positive only when ``deg_i < lambda_min>0(L)``,
    which in practice means complete graphs; elsewhere it returns <= 0.
    """
    base = sigma * laplacian_min_positive(g)
    s = sigma * kappa * float(degrees(g)[node])
    return min(kappa, base) - lili_radius(abs(kappa - base), s)


def sound_pinning_lower_bound(p: PinningProblem) -> float | None:
    """Best single-pin bound over the pinned set.

    Adding further pins adds a PSD term, so ``lambda_min`` can only grow; the
    largest single-pin bound is therefore valid for the whole set. ``None``
    when nothing is pinned or the graph is disconnected.
    """
    if not p.pinned or component_count(p.graph) > 1:
        return None
    kappa = p._kappa()
    return max(single_pin_lower_bound(p.graph, p.sigma, kappa, i) for i in sorted(p.pinned))


class ThresholdResult(NamedTuple):
    feasible: bool
    kappa: float | None
    margin: float


def kappa_threshold(p: PinningProblem) -> ThresholdResult:
    """Smallest kappa for which the closed-form chain certifies controllability.

    ``margin = sigma lambda_min>0(L) - required_level(p)``; the problem is
    infeasible when it is not positive or ``qb_min == 0``.
    """
    base = p.sigma * laplacian_min_positive(p.graph)
    level = required_level(p)
    margin = base - level
    if p.qb_min == 0.0 or not margin > 0.0:
        return ThresholdResult(False, None, margin)
    deg = degrees(p.graph)
    total = float(sum(deg[i] for i in p.pinned))
    return ThresholdResult(True, total / margin + base, margin)


def scalars_from_matrices(q, b):
    """``(||Q||, lambda_min(QB + B^T Q^T))`` after checking the PSD requirement."""
    q = np.asarray(q, dtype=float)
    b = np.asarray(b, dtype=float)
    if q.shape != b.shape or q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise InputError("Q and B must be square matrices of the same size")
    qs = as_symmetric(q, check=1e-8)
    if jacobi_eigen(qs).eigenvalues[-1] <= 0.0:
        raise InputError("Q must be positive definite")
    qb = as_symmetric(q @ b + b.T @ q.T)
    qb_min = float(jacobi_eigen(qb).eigenvalues[-1])
    if qb_min < -1e-10:
        raise InputError(f"QB + B^T Q^T is not PSD (lambda_min = {qb_min:.3g})")
    return operator_norm(qs), max(qb_min, 0.0)


def best_pin_sets(p: PinningProblem, r: int, top: int = 5):
    """Exhaustively rank all ``r``-subsets of vertices by ``lambda_min(sigma L + kappa P)``."""
    if p.graph.n > 12:
        raise InputError("exhaustive pin enumeration is limited to N <= 12")
    scored = []
    for subset in itertools.combinations(range(p.graph.n), r):
        lam = controllability_condition(replace(p, pinned=frozenset(subset))).lambda_min
        scored.append((lam, subset))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return scored[:top]
