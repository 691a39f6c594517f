"""Command-line front end.

Exit codes: 0 success, 1 a bound or invariant was violated, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import io
from .bounds import bordered_bounds
from .cs import (
    DesignMatrix,
    SubsetExperiment,
    append_column_trials,
    bernoulli_design,
    cross_gram_tail,
    gaussian_design,
    normalize_columns,
)
from .errors import InputError, NumericalError
from .graph import (
    algebraic_connectivity,
    component_count,
    connectivity_lower_from_complement,
    edge_append_bound,
)
from .linalg import BorderedSpec, assemble_bordered, jacobi_eigen
from .pinning import (
    best_pin_sets,
    controllability_condition,
    iterative_pinning_lower_bound,
    kappa_threshold,
    laplacian_min_positive,
    required_level,
    sound_pinning_lower_bound,
)
from .secular import from_bordered, largest_eigenvalue, smallest_eigenvalue, upper_root_bound
from .verify import random_spec, run_battery

COMMANDS = ("bounds", "secular", "graph", "pinning", "cs", "verify")
MAX_VERIFY_DIM = 12


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    trials: int = 0
    out: str | None = None
    fmt: str = "json"
    tol: float = 1e-9

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if not self.tol > 0.0:
            raise InputError("--tol must be positive")
        if not 0 <= self.seed < 2**64:
            raise InputError("--seed must be an unsigned 64-bit integer")
        if self.trials < 0:
            raise InputError("--trials must be nonnegative")


def _emit(cfg: RunConfig, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_spec(args) -> BorderedSpec:
    if args.input is None or args.vector is None or args.c is None:
        raise InputError("--input, --vector and --c are required")
    return BorderedSpec(io.load_symmetric(args.input), io.load_vector(args.vector), args.c)


def cmd_bounds(args, cfg):
    spec = _load_spec(args)
    lam_a = jacobi_eigen(assemble_bordered(spec)).eigenvalues
    prob = from_bordered(spec)
    reports = bordered_bounds(spec)
    sc = 1.0 + float(np.max(np.abs(lam_a)))
    ok = all(r.holds(cfg.tol * sc) for r in reports.values())
    payload = {
        "dim": spec.dim,
        "c": spec.c,
        "a_norm": float(np.linalg.norm(spec.a)),
        "exact": {
            "lambda_max_oracle": float(lam_a[0]),
            "lambda_min_oracle": float(lam_a[-1]),
            "lambda_max_secular": largest_eigenvalue(prob),
            "lambda_min_secular": smallest_eigenvalue(prob),
            "opnorm_oracle": float(max(abs(lam_a[0]), abs(lam_a[-1]))),
        },
        "bounds": [r.to_dict() for r in reports.values()],
        "all_hold": ok,
    }
    _emit(cfg, io.dumps(payload))
    return 0 if ok else 1


def cmd_secular(args, cfg):
    spec = _load_spec(args)
    prob = from_bordered(spec)
    lam_a = jacobi_eigen(assemble_bordered(spec)).eigenvalues
    top, bot = largest_eigenvalue(prob), smallest_eigenvalue(prob)
    sc = 1.0 + float(np.max(np.abs(lam_a)))
    ok = abs(top - lam_a[0]) <= cfg.tol * sc and abs(bot - lam_a[-1]) <= cfg.tol * sc
    payload = {
        "poles": prob.poles,
        "weights": prob.weights,
        "c": prob.c,
        "largest": top,
        "smallest": bot,
        "upper_root_bound": upper_root_bound(float(prob.poles[0]), prob.c, float(prob.weights.sum())),
        "oracle_largest": float(lam_a[0]),
        "oracle_smallest": float(lam_a[-1]),
        "agree": bool(ok),
    }
    _emit(cfg, io.dumps(payload))
    return 0 if ok else 1


def cmd_graph(args, cfg):
    g = io.load_graph(args.edges)
    payload = {
        "n": g.n,
        "m": g.m,
        "components": component_count(g),
        "algebraic_connectivity": algebraic_connectivity(g),
        "complement_lower": connectivity_lower_from_complement(g),
    }
    ok = payload["complement_lower"] <= payload["algebraic_connectivity"] + cfg.tol
    if args.delete:
        u, v = args.delete
        rep = edge_append_bound(g, u, v)
        payload["delete"] = [u, v]
        payload["report"] = rep.to_dict()
        ok = ok and rep.holds(cfg.tol * (1.0 + g.n))
    _emit(cfg, io.dumps(payload))
    return 0 if ok else 1


def _parse_sweep(text):
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise InputError("--kappa-sweep must look like start:stop:step") from None
    if step <= 0.0 or stop < start:
        raise InputError("--kappa-sweep needs step > 0 and stop >= start")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def _pinning_row(p):
    cond = controllability_condition(p)
    return {
        "kappa": p.kappa,
        "iterative_bound": iterative_pinning_lower_bound(p),
        "sound_bound": sound_pinning_lower_bound(p),
        "lambda_min": cond.lambda_min,
        "margin": cond.margin,
        "controllable": cond.holds,
    }


def _fmt_csv(val):
    if val is None:
        return ""
    if isinstance(val, bool):
        return "1" if val else "0"
    return format(float(val), ".17g")


def cmd_pinning(args, cfg):
    p = io.load_pinning_problem(args.problem)
    if args.kappa is not None:
        p = p.with_kappa(args.kappa)
    thr = kappa_threshold(p)
    if args.kappa_sweep:
        rows = [_pinning_row(p.with_kappa(k)) for k in _parse_sweep(args.kappa_sweep)]
        if cfg.fmt == "csv":
            cols = list(rows[0])
            lines = [",".join(cols)] + [",".join(_fmt_csv(r[c]) for c in cols) for r in rows]
            _emit(cfg, "\n".join(lines))
        else:
            _emit(cfg, io.dumps(rows))
        return 0
    payload = {
        "n": p.graph.n,
        "pinned": sorted(p.pinned),
        "sigma": p.sigma,
        "lambda_min_pos_L": laplacian_min_positive(p.graph),
        "required_level": required_level(p),
        "threshold_feasible": thr.feasible,
        "kappa_threshold": thr.kappa,
        "threshold_margin": thr.margin,
    }
    if p.kappa is not None:
        payload.update(_pinning_row(p))
    if args.best_pins is not None:
        if p.kappa is None:
            raise InputError("--best-pins needs a kappa (file or --kappa)")
        payload["best_pins"] = [
            {"pinned": list(s), "lambda_min": lam} for lam, s in best_pin_sets(p, args.best_pins)
        ]
    _emit(cfg, io.dumps(payload))
    return 0


def cmd_cs(args, cfg):
    if args.input:
        x = io.load_matrix(args.input)
        dm = normalize_columns(x) if args.normalize else DesignMatrix(x)
    elif args.gen:
        gen = gaussian_design if args.gen == "gaussian" else bernoulli_design
        dm = gen(args.n, args.p, cfg.seed)
    else:
        raise InputError("give --input or --gen")
    exp = SubsetExperiment(
        s=args.s, trials=cfg.trials, seed=cfg.seed, t=args.t, rho=args.rho, c_const=args.C
    )
    report = cross_gram_tail(dm, exp)
    trials = append_column_trials(dm, exp.s, cfg.trials, cfg.seed, atol=cfg.tol)
    report["bound_violations"] = trials["bound_violations"]
    report["violating_trials"] = trials["violating_trials"]
    report["min_slack_upper"] = trials["min_slack_upper"]
    report["min_slack_lower_lili"] = trials["min_slack_lower_lili"]
    _emit(cfg, io.dumps(report))
    return 0 if trials["bound_violations"] == 0 else 1


def _emit_fixtures(directory, seed, dim, count):
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    index = []
    for i in range(count):
        spec = random_spec(rng, dim)
        m_path, a_path = out / f"instance_{i}_m.json", out / f"instance_{i}_a.csv"
        io.write_matrix_json(m_path, spec.m)
        a_path.write_text(",".join(format(v, ".17g") for v in spec.a) + "\n")
        index.append({"m": m_path.name, "a": a_path.name, "c": spec.c})
    (out / "index.json").write_text(io.dumps(index) + "\n")


def cmd_verify(args, cfg):
    if not 1 <= args.dim <= MAX_VERIFY_DIM:
        raise InputError(f"--dim must be between 1 and {MAX_VERIFY_DIM}")
    if cfg.trials == 0:
        print("warning: --trials 0, nothing to verify", file=sys.stderr)
    summary = run_battery(cfg.seed, cfg.trials, args.dim, corrupt=args.inject_fault)
    if args.emit:
        _emit_fixtures(args.emit, cfg.seed, args.dim, args.emit_count)
    if summary["failures"]:
        dump = Path(args.dump) if args.dump else None
        text = io.dumps(summary["failures"])
        if dump:
            dump.write_text(text + "\n")
        print(f"{summary['total_violations']} violation(s); first failing trial "
              f"{summary['failures'][0]['trial']}", file=sys.stderr)
    _emit(cfg, io.dumps(summary))
    return 0 if summary["total_violations"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-perturb",
        description="Eigenvalue bounds for bordered symmetric matrices and their applications.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=0)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    common.add_argument("--tol", type=float, default=1e-9, help="relative slack tolerance")

    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("bounds", "secular"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--input", help="matrix M (CSV or JSON)")
        sp.add_argument("--vector", help="border vector a (CSV or JSON)")
        sp.add_argument("--c", type=float, help="corner value c")

    sp = sub.add_parser("graph", parents=[common])
    sp.add_argument("--edges", required=True, help="edge list or JSON graph")
    sp.add_argument("--delete", nargs=2, type=int, metavar=("U", "V"))

    sp = sub.add_parser("pinning", parents=[common])
    sp.add_argument("--problem", required=True, help="JSON problem file")
    sp.add_argument("--kappa", type=float)
    sp.add_argument("--kappa-sweep", metavar="START:STOP:STEP")
    sp.add_argument("--best-pins", type=int, metavar="R")

    sp = sub.add_parser("cs", parents=[common])
    sp.add_argument("--input", help="design matrix CSV")
    sp.add_argument("--normalize", action="store_true")
    sp.add_argument("--gen", choices=("gaussian", "bernoulli"))
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--p", type=int, default=40)
    sp.add_argument("--s", type=int, default=4)
    sp.add_argument("--t", type=float, default=0.1)
    sp.add_argument("--rho", type=float, default=0.25)
    sp.add_argument("--C", type=float, default=0.125)

    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("--dim", type=int, default=6)
    sp.add_argument("--emit", metavar="DIR", help="also write random fixture files here")
    sp.add_argument("--emit-count", type=int, default=5)
    sp.add_argument("--dump", help="write failing instances to this file")
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


HANDLERS = {
    "bounds": cmd_bounds,
    "secular": cmd_secular,
    "graph": cmd_graph,
    "pinning": cmd_pinning,
    "cs": cmd_cs,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.seed, args.trials, args.out, args.fmt, args.tol)
        return HANDLERS[args.command](args, cfg)
    except (InputError, NumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
