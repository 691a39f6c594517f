"""Randomized invariant battery for the bordered-matrix bounds.

Each check compares a closed-form bound or a secular-equation value against
the Jacobi oracle on one random instance. :func:`run_battery` drives many
instances and collects per-invariant counts plus replayable failures.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .bounds import (
    LiLiInputs,
    ipsen_nadler,
    ipsen_nadler_inputs,
    lili_inputs,
    lili_literature_form,
    lili_two_sided,
    mathias_arrowhead,
    opnorm_bounds,
    smallest_nonzero_corollaries,
    smallest_nonzero_lower,
    weyl_arrowhead,
    weyl_rank_one,
)
from .linalg import (
    BorderedSpec,
    arrowhead_matrix,
    assemble_bordered,
    jacobi_eigen,
    rank_one_update,
    to_arrowhead,
)
from .secular import SecularProblem, largest_eigenvalue, smallest_eigenvalue, upper_root_bound

__all__ = [
    "random_spec",
    "random_psd_spec",
    "check_spec",
    "check_psd_spec",
    "check_rank_one",
    "run_battery",
    "INVARIANTS",
]

INVARIANTS = (
    "similarity",
    "interlacing",
    "secular_oracle",
    "secular_bracket",
    "lili_sandwich",
    "dominance",
    "lili_literature",
    "shift_invariance",
    "opnorm",
    "opnorm_comparison",
    "smallest_nonzero",
    "ipsen_nadler",
    "weyl_rank_one",
)


def random_spec(rng: np.random.Generator, d: int) -> BorderedSpec:
    g = rng.standard_normal((d, d))
    return BorderedSpec((g + g.T) / 2.0, rng.standard_normal(d), float(rng.standard_normal()))


def random_psd_spec(rng: np.random.Generator, d: int, r: int) -> BorderedSpec:
    """``M = X^T X`` with ``X`` of shape ``r x d`` (rank ``r`` almost surely)."""
    x = rng.standard_normal((r, d))
    return BorderedSpec(x.T @ x, rng.standard_normal(d), float(rng.standard_normal()))


def _scale(lam):
    return 1.0 + float(np.max(np.abs(lam)))


def check_spec(spec: BorderedSpec, corrupt: bool = False) -> dict[str, bool]:
    """Invariants for a general symmetric ``M``.

    ``corrupt`` deliberately breaks the Li-Li upper bound (fault injection).
    """
    res = {}
    sp = jacobi_eigen(spec.m)
    lam_m = sp.eigenvalues
    lam_a = jacobi_eigen(assemble_bordered(spec)).eigenvalues
    sc = _scale(lam_a)
    exact = float(lam_a[0])

    d, b, c = to_arrowhead(spec)
    lam_b = jacobi_eigen(arrowhead_matrix(d, b, c)).eigenvalues
    res["similarity"] = bool(np.all(np.abs(lam_a - lam_b) <= 1e-9 * sc))

    tol = 1e-10 * sc
    res["interlacing"] = bool(lam_a[0] >= lam_m[0] - tol and lam_a[-1] <= lam_m[-1] + tol)

    prob = SecularProblem(d, b * b, c)
    top = largest_eigenvalue(prob)
    bot = smallest_eigenvalue(prob)
    res["secular_oracle"] = bool(
        abs(top - exact) <= 1e-9 * sc and abs(bot - lam_a[-1]) <= 1e-9 * sc
    )
    star = upper_root_bound(float(d[0]), c, float(b @ b))
    if b[0] != 0.0:
        res["secular_bracket"] = bool(d[0] < top <= star + 1e-12 * sc)
    else:
        res["secular_bracket"] = bool(d[0] <= top <= star + 1e-12 * sc)

    li = lili_inputs(spec, sp)
    clean = lili_two_sided(li)
    rep = clean
    if corrupt:
        rep = type(rep)(rep.method, rep.lower, max(spec.c, li.lambda1) - 1e-3)
    rep = rep.with_exact(exact)
    res["lili_sandwich"] = rep.holds(1e-9 * sc)

    base = max(spec.c, li.lambda1)
    weyl = weyl_arrowhead(li.lambda1, spec.c, li.a_norm)
    mat = mathias_arrowhead(li.lambda1, spec.c, li.a_norm)
    ok = rep.upper <= weyl + 1e-12 * sc and rep.lower >= base
    if mat is not None:
        ok = ok and rep.upper <= mat + 1e-12 * sc
    res["dominance"] = bool(ok and weyl >= exact - 1e-9 * sc and (mat is None or mat >= exact - 1e-9 * sc))

    rad = lili_literature_form(li.lambda1, spec.c, li.a_norm)
    res["lili_literature"] = bool(abs(exact - base) <= rad + 1e-9 * sc)

    shift_ok = True
    for t in (1.0, 10.0):
        moved = lili_two_sided(LiLiInputs(li.lambda1 + t, spec.c + t, li.a_norm, li.a_dot_v1))
        shift_ok &= abs(moved.upper - t - clean.upper) <= 1e-12 * (sc + t)
        shift_ok &= abs(moved.lower - t - clean.lower) <= 1e-12 * (sc + t)
    res["shift_invariance"] = bool(shift_ok)

    m_norm = float(max(abs(lam_m[0]), abs(lam_m[-1])))
    a_opnorm = float(max(abs(lam_a[0]), abs(lam_a[-1])))
    if m_norm > 0.0:
        ob = opnorm_bounds(m_norm, spec.c, li.a_norm, li.lambda1)
        res["opnorm"] = all(v is None or v >= a_opnorm - 1e-9 * sc for v in ob)
        remark = True
        ac = abs(spec.c)
        if ob.b2 is not None and li.a_norm <= m_norm - ac:
            remark &= ob.b2 <= ob.b1 + 1e-12 * sc
        if ac / 2.0 + (li.a_norm ** 2 + spec.c ** 2 / 8.0) / m_norm <= li.a_norm:
            remark &= ob.b3 <= ob.b1 + 1e-12 * sc
        res["opnorm_comparison"] = bool(remark)
    return res


def check_psd_spec(spec: BorderedSpec, r: int) -> dict[str, bool]:
    """Smallest-nonzero bounds for PSD ``M`` of rank ``r``."""
    lam_m = jacobi_eigen(spec.m).eigenvalues
    lam_a = jacobi_eigen(assemble_bordered(spec)).eigenvalues
    sc = _scale(lam_a)
    lam_r = float(lam_m[r - 1])
    a_norm = float(np.linalg.norm(spec.a))
    target = float(lam_a[r])
    main = smallest_nonzero_lower(lam_r, spec.c, a_norm, r)
    weyl, mathias = smallest_nonzero_corollaries(lam_r, spec.c, a_norm)
    ok = main <= target + 1e-9 * sc and weyl <= main + 1e-12 * sc
    if mathias is not None:
        ok = ok and mathias <= main + 1e-12 * sc
    return {"smallest_nonzero": bool(ok)}


def check_rank_one(mt, x) -> dict[str, bool]:
    """Ipsen-Nadler sandwich and the rank-one Weyl bound for ``mt + x x^T``."""
    lam = jacobi_eigen(rank_one_update(mt, x)).eigenvalues
    sc = _scale(lam)
    inp = ipsen_nadler_inputs(mt, x)
    rep = ipsen_nadler(inp).with_exact(float(lam[0]))
    weyl = weyl_rank_one(inp.lambda1, inp.x_norm_sq)
    return {
        "ipsen_nadler": rep.holds(1e-9 * sc),
        "weyl_rank_one": bool(weyl >= lam[0] - 1e-9 * sc),
    }


def run_battery(seed: int, trials: int, dim: int, corrupt: bool = False) -> dict:
    """Run every invariant on ``trials`` instances of dimension ``dim``.

    Returns ``{"checks": {name: count}, "violations": {name: count},
    "failures": [replayable instances]}``.
    """
    rng = np.random.default_rng(seed)
    checks, violations = Counter(), Counter()
    failures = []
    for i in range(trials):
        spec = random_spec(rng, dim)
        results = check_spec(spec, corrupt=corrupt)
        extra = {}
        if dim >= 2:
            r = int(rng.integers(1, dim))
            psd_spec = random_psd_spec(rng, dim, r)
            results.update(check_psd_spec(psd_spec, r))
            g = rng.standard_normal((dim, dim))
            mt, x = (g + g.T) / 2.0, rng.standard_normal(dim)
            results.update(check_rank_one(mt, x))
            extra = {
                "psd": {"m": psd_spec.m.tolist(), "a": psd_spec.a.tolist(), "c": psd_spec.c, "rank": r},
                "rank_one": {"m": mt.tolist(), "x": x.tolist()},
            }
        for name, ok in results.items():
            checks[name] += 1
            if not ok:
                violations[name] += 1
        bad = sorted(k for k, ok in results.items() if not ok)
        if bad:
            failures.append(
                {
                    "trial": i,
                    "seed": seed,
                    "dim": dim,
                    "failed": bad,
                    "m": spec.m.tolist(),
                    "a": spec.a.tolist(),
                    "c": spec.c,
                    **extra,
                }
            )
    return {
        "seed": seed,
        "trials": trials,
        "dim": dim,
        "checks": {k: checks[k] for k in INVARIANTS if k in checks},
        "violations": {k: violations[k] for k in INVARIANTS if k in checks},
        "total_violations": sum(violations.values()),
        "failures": failures,
    }
