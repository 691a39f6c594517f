"""Exit criteria. Each test prints one PASS/FAIL line."""

import time

import numpy as np
import pytest

from spectral_perturb.bounds import (
    bordered_bounds,
    ipsen_nadler,
    ipsen_nadler_inputs,
    lili_inputs,
    lili_two_sided,
    mathias_arrowhead,
    opnorm_bounds,
    smallest_nonzero_corollaries,
    smallest_nonzero_lower,
    weyl_arrowhead,
)
from spectral_perturb.cs import append_column_trials, gaussian_design
from spectral_perturb.graph import (
    Graph,
    all_graphs,
    component_count,
    connectivity_lower_from_complement,
    incidence,
    laplacian,
    laplacian_spectrum,
    algebraic_connectivity,
)
from spectral_perturb.io import dumps
from spectral_perturb.linalg import BorderedSpec, arrowhead_matrix, assemble_bordered, jacobi_eigen, rank_one_update
from spectral_perturb.pinning import (
    PinningProblem,
    _coupled,
    iterative_pinning_lower_bound,
    kappa_threshold,
    lambda_min_positive,
    laplacian_min_positive,
    required_level,
)
from spectral_perturb.secular import SecularProblem, largest_eigenvalue, upper_root_bound
from spectral_perturb.verify import random_spec

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(num, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")

    return emit


def _scale(vals):
    return 1.0 + float(np.max(np.abs(vals)))


def _suite_instances():
    rng = np.random.default_rng(1)
    return [random_spec(rng, int(rng.integers(2, 9))) for _ in range(1000)]


@pytest.fixture(scope="module")
def suite():
    out = []
    start = time.perf_counter()
    for spec in _suite_instances():
        sp = jacobi_eigen(spec.m)
        li = lili_inputs(spec, sp)
        rep = lili_two_sided(li)
        lam_a = jacobi_eigen(assemble_bordered(spec)).eigenvalues
        out.append((spec, li, rep.with_exact(float(lam_a[0])), _scale(lam_a)))
    return out, time.perf_counter() - start


def test_c1_sandwich(suite, report):
    rows, elapsed = suite
    worst = min(min(r.slack_lower, r.slack_upper) / sc for _, _, r, sc in rows)
    bad = sum(not r.holds(1e-9 * sc) for _, _, r, sc in rows)
    ok = bad == 0 and elapsed < 5.0
    report(1, ok, f"{bad}/1000 outside the two-sided bound, worst relative slack {worst:.3g}, {elapsed:.2f}s")
    assert ok


def test_c2_sharpness(report):
    rng = np.random.default_rng(2)
    err = 0.0
    for d in (2, 5, 8):
        for _ in range(20):
            a = rng.standard_normal(d)
            spec = BorderedSpec(np.eye(d), a, 1.0)
            target = 1.0 + float(np.linalg.norm(a))
            exact = jacobi_eigen(assemble_bordered(spec)).eigenvalues[0]
            upper = lili_two_sided(lili_inputs(spec)).upper
            err = max(err, abs(exact - target), abs(upper - target))
    ok = err <= 1e-12
    report(2, ok, f"max |lambda_max - (1 + ||a||)| over oracle and upper bound = {err:.3g}")
    assert ok


def test_c3_dominance(suite, report):
    rows, _ = suite
    bad = 0
    for spec, li, rep, sc in rows:
        good = rep.upper <= weyl_arrowhead(li.lambda1, spec.c, li.a_norm) + 1e-12 * sc
        mat = mathias_arrowhead(li.lambda1, spec.c, li.a_norm)
        if mat is not None:
            good &= rep.upper <= mat + 1e-12 * sc
        good &= rep.lower >= max(spec.c, li.lambda1)
        bad += not good
    report(3, bad == 0, f"{bad}/1000 dominance or interlacing failures")
    assert bad == 0


def test_c4_secular(report):
    rng = np.random.default_rng(4)
    bad, worst = 0, 0.0
    for _ in range(200):
        k = int(rng.integers(1, 9))
        poles = np.sort(rng.standard_normal(k))[::-1]
        p = SecularProblem(poles, rng.standard_normal(k) ** 2, float(rng.standard_normal()))
        lam = jacobi_eigen(arrowhead_matrix(p.poles, np.sqrt(p.weights), p.c)).eigenvalues
        top = largest_eigenvalue(p)
        rel = abs(top - lam[0]) / _scale(lam)
        star = upper_root_bound(float(poles[0]), p.c, float(p.weights.sum()))
        worst = max(worst, rel)
        bad += not (rel <= 1e-9 and poles[0] < top <= star)
    report(4, bad == 0, f"{bad}/200 failures, worst relative error {worst:.3g}")
    assert bad == 0


def test_c5_smallest_nonzero(report):
    rng = np.random.default_rng(5)
    bad = 0
    for _ in range(500):
        d = int(rng.integers(2, 9))
        r = int(rng.integers(1, d))
        x = rng.standard_normal((r, d))
        spec = BorderedSpec(x.T @ x, rng.standard_normal(d), float(rng.standard_normal()))
        lam_m = jacobi_eigen(spec.m).eigenvalues
        lam_a = jacobi_eigen(assemble_bordered(spec)).eigenvalues
        a_norm = float(np.linalg.norm(spec.a))
        target = lam_a[r] + 1e-9 * _scale(lam_a)
        vals = [smallest_nonzero_lower(float(lam_m[r - 1]), spec.c, a_norm, r)]
        vals += [v for v in smallest_nonzero_corollaries(float(lam_m[r - 1]), spec.c, a_norm) if v is not None]
        bad += any(v > target for v in vals)
    report(5, bad == 0, f"{bad}/500 instances with a bound above lambda_(r+1)")
    assert bad == 0


def test_c6_operator_norm(report):
    rng = np.random.default_rng(6)
    bad = remarks = 0
    for _ in range(500):
        spec = random_spec(rng, int(rng.integers(2, 9)))
        lam_m = jacobi_eigen(spec.m).eigenvalues
        lam_a = jacobi_eigen(assemble_bordered(spec)).eigenvalues
        m_norm = float(max(abs(lam_m[0]), abs(lam_m[-1])))
        a_opnorm = float(max(abs(lam_a[0]), abs(lam_a[-1])))
        a_norm = float(np.linalg.norm(spec.a))
        sc = _scale(lam_a)
        ob = opnorm_bounds(m_norm, spec.c, a_norm, float(lam_m[0]))
        good = all(v is None or v >= a_opnorm - 1e-9 * sc for v in ob)
        ac = abs(spec.c)
        if ob.b2 is not None and a_norm <= m_norm - ac:
            remarks += 1
            good &= ob.b2 <= ob.b1 + 1e-12 * sc
        if ac / 2 + (a_norm**2 + spec.c**2 / 8) / m_norm <= a_norm:
            remarks += 1
            good &= ob.b3 <= ob.b1 + 1e-12 * sc
        bad += not good
    report(6, bad == 0, f"{bad}/500 failures, {remarks} conditional comparisons exercised")
    assert bad == 0


def test_c7_ipsen_nadler(report):
    rng = np.random.default_rng(7)
    bad = 0
    for _ in range(500):
        g = rng.standard_normal((5, 5))
        mt, x = (g + g.T) / 2, rng.standard_normal(5)
        lam = jacobi_eigen(rank_one_update(mt, x)).eigenvalues
        bad += not ipsen_nadler(ipsen_nadler_inputs(mt, x)).with_exact(float(lam[0])).holds(1e-9 * _scale(lam))
    # repeated top eigenvalue: gap_2 = 0
    q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    mt = q @ np.diag([2.0, 2.0, 1.0, 0.0, -1.0]) @ q.T
    x = rng.standard_normal(5)
    inp = ipsen_nadler_inputs(mt, x)
    dev = abs(ipsen_nadler(inp).upper - inp.lambda1 - inp.x_norm_sq)
    ok = bad == 0 and dev <= 1e-12
    report(7, ok, f"{bad}/500 sandwich failures; zero-gap |delta_max - ||x||^2| = {dev:.3g}")
    assert ok


def test_c8_graphs(report):
    start = time.perf_counter()
    count = bad = 0
    for n in range(1, 6):
        for g in all_graphs(n):
            count += 1
            inc = incidence(g)
            good = np.array_equal(inc @ inc.T, laplacian(g))
            lam = laplacian_spectrum(g)
            zeros = int(np.count_nonzero(np.abs(lam) <= 1e-9 * (1 + lam[0])))
            good &= zeros == component_count(g)
            if n >= 2:
                good &= connectivity_lower_from_complement(g) <= algebraic_connectivity(g) + 1e-9
            bad += not good
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 30.0
    report(8, ok, f"{bad}/{count} graphs failed, {elapsed:.2f}s")
    assert ok


def _random_connected(rng, n):
    edges = {(int(rng.integers(i)), i) for i in range(1, n)}
    edges |= {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.25}
    return Graph(n, edges)


def test_c9_pinning(report):
    rng = np.random.default_rng(9)
    above = chain_bad = 0
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 11))
        g = _random_connected(rng, n)
        pins = rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False).tolist()
        sigma = float(rng.uniform(0.5, 2.0))
        base = sigma * laplacian_min_positive(g)
        kappa = float(rng.uniform(1.0 + 1e-6, 10.0) * base)
        p = PinningProblem(g, pins, sigma, kappa=kappa, f_bound=0.1 * base, q_norm=1.0, qb_min=1.0)
        exact = lambda_min_positive(_coupled(p))
        bound = iterative_pinning_lower_bound(p)
        if bound > exact + 1e-9 * (1 + exact):
            above += 1
            worst = max(worst, bound - exact)

        thr = kappa_threshold(p)
        level = required_level(p)
        for k in (thr.kappa, 2 * thr.kappa):
            val = iterative_pinning_lower_bound(p.with_kappa(k))
            chain_bad += not (val is not None and val >= level - 1e-12 * (1 + base))
    ok = above == 0 and chain_bad == 0
    report(
        9,
        ok,
        f"closed-form bound above oracle on {above}/200 (worst excess {worst:.3g}); "
        f"threshold chain failed {chain_bad}/400",
    )
    assert ok


def test_c10_compressed_sensing(report):
    dm = gaussian_design(20, 40, 42)
    first = append_column_trials(dm, 5, 500, 42)
    second = append_column_trials(dm, 5, 500, 42)
    same = dumps(first).encode() == dumps(second).encode()
    ok = first["bound_violations"] == 0 and same
    report(10, ok, f"{first['bound_violations']} bound violations in 500 trials, byte-identical rerun: {same}")
    assert ok
