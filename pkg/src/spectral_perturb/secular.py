"""Extreme eigenvalues of an arrowhead matrix from its secular function.

For ``B = [[c, b^T], [b, diag(lam)]]`` the eigenvalues that are not poles are
the roots of

    f(t) = c - t + sum_j b_j**2 / (t - lam_j).

``f`` is strictly decreasing between consecutive poles and to the right of the
largest one, so the top eigenvalue is bracketed by the largest live pole and
the closed-form root of the two-term surrogate ``c - t + ||b||^2 / (t - lam_1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .linalg import BorderedSpec, to_arrowhead

__all__ = [
    "SecularProblem",
    "secular_eval",
    "secular_derivative",
    "upper_root_bound",
    "largest_eigenvalue",
    "smallest_eigenvalue",
    "negate",
    "from_bordered",
]

DEFLATION_RTOL = 1e-14


@dataclass(frozen=True)
class SecularProblem:
    poles: np.ndarray
    weights: np.ndarray
    c: float

    def __post_init__(self):
        poles = np.array(self.poles, dtype=float).reshape(-1)
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if poles.shape != weights.shape:
            raise InputError("poles and weights must have the same length")
        if poles.size == 0:
            raise InputError("need at least one pole")
        if not (np.all(np.isfinite(poles)) and np.all(np.isfinite(weights))):
            raise InputError("non-finite pole or weight")
        if np.any(weights < 0.0):
            raise InputError("weights must be nonnegative")
        if np.any(np.diff(poles) > 0.0):
            raise InputError("poles must be sorted in descending order")
        poles.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "c", float(self.c))

    @property
    def scale(self) -> float:
        return 1.0 + abs(self.poles[0]) + abs(self.poles[-1]) + abs(self.c) + float(
            np.sqrt(self.weights.sum())
        )


def from_bordered(spec: BorderedSpec) -> SecularProblem:
    d, b, c = to_arrowhead(spec)
    return SecularProblem(d, b * b, c)


def negate(p: SecularProblem) -> SecularProblem:
    """Problem whose arrowhead matrix is ``-B``."""
    return SecularProblem(-p.poles[::-1], p.weights[::-1], -p.c)


def secular_eval(p: SecularProblem, lam: float) -> float:
    live = p.weights > 0.0
    gap = lam - p.poles[live]
    tol = 1e-14 * (1.0 + abs(lam))
    if np.any(np.abs(gap) <= tol):
        raise InputError(f"secular function evaluated at a pole ({lam!r})")
    return float(p.c - lam + np.sum(p.weights[live] / gap))


def secular_derivative(p: SecularProblem, lam: float) -> float:
    live = p.weights > 0.0
    gap = lam - p.poles[live]
    return float(-1.0 - np.sum(p.weights[live] / (gap * gap)))


def upper_root_bound(lambda1: float, c: float, b_norm_sq: float) -> float:
    """Largest root of ``(t - c)(t - lambda1) = ||b||^2``."""
    return 0.5 * (c + lambda1) + 0.5 * math.sqrt((c - lambda1) ** 2 + 4.0 * b_norm_sq)


def _reduce(p: SecularProblem):
    # Merge coincident poles, then drop negligible weights.
    tol = 1e-14 * (1.0 + float(np.max(np.abs(p.poles))))
    poles, weights = [], []
    for lam, w in zip(p.poles, p.weights):
        if poles and poles[-1] - lam <= tol:
            weights[-1] += w
        else:
            poles.append(float(lam))
            weights.append(float(w))
    poles = np.array(poles)
    weights = np.array(weights)
    total = weights.sum()
    weights[weights < DEFLATION_RTOL * total] = 0.0
    return poles, weights


def _top_root(poles, weights, c):
    """Root of the secular function to the right of the largest pole.

    ``poles``/``weights`` contain live poles only (all weights > 0).
    """
    lam1 = poles[0]
    total = float(weights.sum())
    scale = 1.0 + abs(lam1) + abs(c) + math.sqrt(total)

    def f(t):
        return c - t + float(np.sum(weights / (t - poles)))

    def fprime(t):
        g = t - poles
        return -1.0 - float(np.sum(weights / (g * g)))

    lo = lam1 + 1e-13 * scale
    hi = upper_root_bound(lam1, c, total)
    # root within the pole offset: nothing finer is representable
    if hi <= lo:
        return hi
    if f(lo) <= 0.0:
        return lo
    if f(hi) >= 0.0:
        return hi

    # bisection down to a coarse bracket, then safeguarded Newton
    while hi - lo > 1e-6 * scale:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid

    t = 0.5 * (lo + hi)
    for _ in range(100):
        ft = f(t)
        if ft > 0.0:
            lo = t
        elif ft < 0.0:
            hi = t
        else:
            return t
        step = ft / fprime(t)
        nxt = t - step
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - t) <= 4e-16 * max(abs(t), 1.0) or hi - lo <= 4e-16 * scale:
            t = nxt
            break
        t = nxt
    return t


def largest_eigenvalue(p: SecularProblem) -> float:
    """Largest eigenvalue of the arrowhead matrix described by ``p``."""
    poles, weights = _reduce(p)
    live = weights > 0.0
    if not np.any(live):
        return max(p.c, float(poles[0]))
    root = _top_root(poles[live], weights[live], p.c)
    dead = poles[~live]
    if dead.size:
        return max(root, float(dead[0]))
    return root


def smallest_eigenvalue(p: SecularProblem) -> float:
    return -largest_eigenvalue(negate(p))
