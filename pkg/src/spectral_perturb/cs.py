"""Column-subset experiments on compressed-sensing design matrices.

A design ``X`` (``n x p``) with unit-norm columns is probed through random
column subsets ``T``. Appending column ``j`` to ``X_T`` borders the Gram
matrix ``X_T^T X_T`` with ``a = X_T^T X_j`` and ``c = X_j^T X_j``, so the
bordered-matrix bounds control the top eigenvalue of the enlarged Gram.

Randomness comes only from :mod:`spectral_perturb.rng`; trial ``i`` draws from
substream ``i`` of the seed, so results do not depend on scheduling.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import (
    BoundReport,
    LiLiInputs,
    lili_two_sided,
    mathias_arrowhead,
    weyl_arrowhead,
)
from .errors import InputError
from .linalg import BorderedSpec, assemble_bordered, jacobi_eigen, leading_projection_norm, operator_norm
from .rng import SplitMix64, substream

__all__ = [
    "DesignMatrix",
    "SubsetExperiment",
    "normalize_columns",
    "gaussian_design",
    "bernoulli_design",
    "coherence",
    "spectral_norm_sq",
    "max_subset_size",
    "gram_deviation",
    "append_column_bounds",
    "append_column_trials",
    "cross_gram_tail",
    "thread_count",
]

NORM_TOL = 1e-10


@dataclass(frozen=True)
class DesignMatrix:
    x: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        if x.ndim != 2 or x.size == 0:
            raise InputError("design matrix must be a nonempty 2-D array")
        if not np.all(np.isfinite(x)):
            raise InputError("design matrix has non-finite entries")
        if self.normalized:
            norms = np.linalg.norm(x, axis=0)
            if np.any(np.abs(norms - 1.0) > NORM_TOL):
                raise InputError("columns flagged as normalized do not have unit norm")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]


@dataclass(frozen=True)
class SubsetExperiment:
    s: int
    trials: int
    seed: int
    t: float = 0.1
    rho: float = 0.25
    c_const: float = 0.125

    def __post_init__(self):
        if self.s < 1:
            raise InputError("subset size must be at least 1")
        if self.trials < 0:
            raise InputError("trials must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must be an unsigned 64-bit integer")


def normalize_columns(x) -> DesignMatrix:
    x = np.array(x, dtype=float)
    norms = np.linalg.norm(x, axis=0)
    if np.any(norms == 0.0):
        raise InputError("cannot normalize a zero column")
    return DesignMatrix(x / norms, normalized=True)


def _generate(n, p, seed, draw):
    rng = SplitMix64(seed)
    cols = [[draw(rng) for _ in range(n)] for _ in range(p)]
    return normalize_columns(np.array(cols).T)


def gaussian_design(n: int, p: int, seed: int) -> DesignMatrix:
    """i.i.d. standard normal entries (column-major draw order), columns normalized."""
    return _generate(n, p, seed, SplitMix64.normal)


def bernoulli_design(n: int, p: int, seed: int) -> DesignMatrix:
    """i.i.d. +-1 entries, columns normalized."""
    return _generate(n, p, seed, SplitMix64.sign)


def coherence(dm: DesignMatrix) -> float:
    if dm.p < 2:
        raise InputError("coherence needs at least two columns")
    g = np.abs(dm.x.T @ dm.x)
    np.fill_diagonal(g, 0.0)
    return float(g.max())


def spectral_norm_sq(dm: DesignMatrix) -> float:
    """``||X||^2`` as the top eigenvalue of ``X^T X`` (Jacobi)."""
    return float(jacobi_eigen(dm.x.T @ dm.x).eigenvalues[0])


def max_subset_size(dm: DesignMatrix, c_const: float) -> int:
    if dm.p < 3:
        raise InputError("need p >= 3 so that log p > 1")
    if c_const < 0.0:
        raise InputError("C must be nonnegative")
    val = dm.p / math.log(dm.p) * c_const / spectral_norm_sq(dm)
    return max(int(math.floor(val)), 0)


def _columns(dm, t_set):
    idx = [int(i) for i in t_set]
    if not idx:
        raise InputError("column subset must be nonempty")
    if any(not 0 <= i < dm.p for i in idx):
        raise InputError("column index out of range")
    return dm.x[:, idx]


def gram_deviation(dm: DesignMatrix, t_set) -> float:
    """``||X_T^T X_T - I||``."""
    xt = _columns(dm, t_set)
    return operator_norm(xt.T @ xt - np.eye(xt.shape[1]))


def append_column_bounds(dm: DesignMatrix, t_set, j: int) -> dict[str, BoundReport]:
    """Weyl, Mathias (if defined) and Li-Li bounds on ``lambda_1`` of the Gram of ``X_{T + j}``."""
    if int(j) in {int(i) for i in t_set}:
        raise InputError(f"column {j} is already in the subset")
    xt = _columns(dm, t_set)
    xj = _columns(dm, [j])[:, 0]
    spec = BorderedSpec(xt.T @ xt, xt.T @ xj, float(xj @ xj))
    sp = jacobi_eigen(spec.m)
    lam1 = float(sp.eigenvalues[0])
    a_norm = float(np.linalg.norm(spec.a))
    proj = min(leading_projection_norm(sp, spec.a), a_norm)
    exact = float(jacobi_eigen(assemble_bordered(spec)).eigenvalues[0])

    out = {
        "weyl": BoundReport("weyl", upper=weyl_arrowhead(lam1, spec.c, a_norm), exact=exact),
        "lili": lili_two_sided(LiLiInputs(lam1, spec.c, a_norm, proj)).with_exact(exact),
    }
    mat = mathias_arrowhead(lam1, spec.c, a_norm)
    if mat is not None:
        out["mathias"] = BoundReport("mathias", upper=mat, exact=exact)
    return out


def thread_count() -> int:
    """Worker cap from ``SPECTRAL_PERTURB_THREADS`` (0 or unset: CPU count)."""
    raw = os.environ.get("SPECTRAL_PERTURB_THREADS", "0")
    try:
        val = int(raw)
    except ValueError:
        raise InputError(f"SPECTRAL_PERTURB_THREADS must be an integer, got {raw!r}")
    if val < 0:
        raise InputError("SPECTRAL_PERTURB_THREADS must be >= 0")
    return val or (os.cpu_count() or 1)


def _map_trials(fn, trials):
    workers = min(thread_count(), max(trials, 1))
    if workers <= 1:
        return [fn(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(trials)))


def _draw(seed, i, p, s):
    # s subset columns followed by one extra column outside the subset
    idx = substream(seed, i).partial_shuffle(p, s + 1)
    return idx[:s], idx[s]


def append_column_trials(dm: DesignMatrix, s: int, trials: int, seed: int, atol: float = 1e-9):
    """Check every append-column bound on ``trials`` random (T, j) draws."""
    if not 1 <= s <= dm.p - 1:
        raise InputError("need 1 <= s <= p - 1")

    def one(i):
        t_set, j = _draw(seed, i, dm.p, s)
        reps = append_column_bounds(dm, t_set, j)
        bad = [k for k, r in reps.items() if not r.holds(atol * (1.0 + abs(r.exact)))]
        return bad, min(r.slack_upper for r in reps.values()), reps["lili"].slack_lower

    results = _map_trials(one, trials)
    violations = sum(len(b) for b, _, _ in results)
    return {
        "trials": trials,
        "bound_violations": violations,
        "violating_trials": [i for i, (b, _, _) in enumerate(results) if b],
        "min_slack_upper": min((r[1] for r in results), default=None),
        "min_slack_lower_lili": min((r[2] for r in results), default=None),
    }


def cross_gram_tail(dm: DesignMatrix, exp: SubsetExperiment) -> dict:
    """Monte Carlo frequencies for ``||X_T^T X_j||^2`` against its tail thresholds.

    The tail bound is evaluated as ``2 exp(-t^2 / (2 mu^2 (s ||X||^2 / p + t/3)))``;
    the form with a positive exponent exceeds 1 and is not a probability
    bound, which the report records under ``tail_bound_note``.
    """
    if not dm.normalized:
        raise InputError("cross_gram_tail expects a column-normalized design")
    if exp.s > dm.p - 1:
        raise InputError("need s <= p - 1")
    p, s = dm.p, exp.s
    logp = math.log(p)
    norm_sq = spectral_norm_sq(dm)
    mu = coherence(dm)
    thr_small = 1.0 / (4.0 * logp)
    thr_tail = s / p * norm_sq + exp.t

    def one(i):
        t_set, j = _draw(exp.seed, i, p, s)
        xt = dm.x[:, t_set]
        v = xt.T @ dm.x[:, j]
        return float(v @ v), gram_deviation(dm, t_set)

    results = _map_trials(one, exp.trials)
    sq = np.array([r[0] for r in results])
    dev = np.array([r[1] for r in results])
    n_tr = max(exp.trials, 1)

    if mu > 0.0:
        expo = exp.t ** 2 / (2.0 * mu ** 2 * (s * norm_sq / p + exp.t / 3.0))
        tail = min(1.0, 2.0 * math.exp(-expo))
        prob_small = 1.0 - 2.0 * math.exp(-3.0 / (64.0 * mu ** 2 * logp))
    else:
        tail, prob_small = 0.0, 1.0

    return {
        "n": dm.n,
        "p": p,
        "s": s,
        "trials": exp.trials,
        "seed": exp.seed,
        "coherence": mu,
        "norm_sq": norm_sq,
        "max_subset_size": max_subset_size(dm, exp.c_const) if p >= 3 else None,
        "c_const": exp.c_const,
        "c_const_le_eighth": exp.c_const <= 0.125,
        "threshold_small": thr_small,
        "freq_below_small": float(np.count_nonzero(sq <= thr_small)) / n_tr,
        "prob_small": prob_small,
        "t": exp.t,
        "threshold_tail": thr_tail,
        "freq_tail_exceed": float(np.count_nonzero(sq >= thr_tail)) / n_tr,
        "tail_bound": tail,
        "tail_bound_note": "exponent negated; the positive-exponent form is not a tail bound",
        "rho": exp.rho,
        "freq_rip": float(np.count_nonzero(dev <= exp.rho)) / n_tr,
        "max_cross_gram_sq": float(sq.max()) if sq.size else None,
    }
