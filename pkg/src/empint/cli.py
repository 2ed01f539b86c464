"""Command line driver.

Subcommands:

    verify     run the self-verification suites; exit 0 iff all pass,
               else the code of the first failing suite
               (10 diagram, 11 expectation, 12 norms, 13 moments,
                14 dominance, 15 constants)
    tails      Monte Carlo tail estimation for a configured kernel;
               writes tails.csv, self_check.csv and a run manifest
    constants  export the exact constant tables as CSV
    bounds     tabulate the closed-form tail bounds over a level grid

All seeds come from configuration; nothing reads the clock.  Configuration
errors (bad JSON, float mode for identity suites, missing fields) exit 2.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from . import combinatorics, montecarlo, verify
from .errors import EmpintError
from .kernels import canonical_project, indicator_kernel, kernel_from_json, kernel_to_json, l2_norm
from .scalars import format_scalar
from .space import AtomSpace, make_space

DEFAULT_SEED = 12345
REPORT_SCHEMA = 1
_SELF_CHECK_OFFSET = 2 * 10**9


class ConfigError(Exception):
    pass


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e


def space_to_json(space: AtomSpace) -> dict:
    return {"weights": [format_scalar(w) for w in space.weights]}


def space_from_json(doc: dict) -> AtomSpace:
    if "weights" not in doc:
        raise ConfigError("space descriptor needs a 'weights' list")
    return make_space(doc["weights"])


def _kernel_hash(space: AtomSpace, kernel_doc: dict) -> str:
    payload = json.dumps({"space": space_to_json(space), "kernel": kernel_doc},
                         sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


# -- verify -----------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    mode = cfg.get("mode", "exact")
    if mode != "exact":
        raise ConfigError(f"identity suites require exact mode, got {mode!r}")
    seed = int(cfg.get("seed", DEFAULT_SEED))
    suites = cfg.get("suites")
    results = verify.run_all(seed, suites)
    report = {"schema": REPORT_SCHEMA, "seed": seed, "mode": mode,
              "results": [r.as_dict() for r in results]}
    text = json.dumps(report, indent=2)
    if args.report:
        Path(args.report).write_text(text + "\n")
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name:12s} {status}  checks={r.checks} failures={r.failures} "
              f"worst={r.worst:.3e}")
    failing = [r for r in results if not r.passed]
    return failing[0].exit_code if failing else 0


# -- tails ------------------------------------------------------------------

def _build_kernel(cfg: dict):
    if "space" not in cfg or "kernel" not in cfg:
        raise ConfigError("tails config needs 'space' and 'kernel' descriptors")
    space = space_from_json(cfg["space"])
    f = kernel_from_json(space, cfg["kernel"])
    if cfg.get("canonicalize"):
        f = canonical_project(f)
    return space, f


def cmd_tails(args) -> int:
    cfg = _load_config(args.config)
    for key in ("replicates", "n"):
        if key not in cfg:
            raise ConfigError(f"tails config needs {key!r}")
    space, f = _build_kernel(cfg)
    seed = int(cfg.get("seed", DEFAULT_SEED))
    mc = montecarlo.McConfig(int(cfg["replicates"]), seed, int(cfg["n"]),
                             tuple(cfg.get("x_grid", ())), cfg.get("target", "integral"))
    if not mc.x_grid:
        grid = montecarlo.auto_grid(f, mc, points=int(cfg.get("grid_points", 12)))
        mc = montecarlo.McConfig(mc.replicates, mc.seed, mc.n, grid, mc.target)
    est = montecarlo.estimate_tail(f, mc, workers=args.workers)
    if est.sigma == 0.0:
        # zero kernel: the statistic vanishes identically, so the exact
        # tail is zero and there is nothing to fit
        p13 = p16 = None
    else:
        try:
            p13 = montecarlo.fit_constants(est, "two_regime")
            p16 = montecarlo.fit_constants(est, "bernstein")
        except EmpintError as e:
            raise ConfigError(f"cannot fit bound constants: {e}") from e

    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "tails.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "p_hat", "stderr", "bound13", "bound16"])
        for x, p, se in zip(est.x_grid, est.p_hat, est.stderr):
            if p13 is None:
                b13 = b16 = 0.0
            else:
                b13 = bounds_mod.two_regime_tail_bound(x, est.k, est.sigma, est.n, p13)
                b16 = bounds_mod.bernstein_tail_bound(x, est.k, est.sigma, est.n, p16)
            w.writerow([repr(x), repr(p), repr(se), repr(b13), repr(b16)])

    # self check: the arity-1 centered indicator has an exact binomial tail
    w0 = space.weights[0]
    ind = canonical_project(indicator_kernel(space, 0))
    sc_mc = montecarlo.McConfig(mc.replicates, seed, mc.n, (), "integral")
    sc_values = montecarlo.replicate_values(ind, sc_mc, workers=args.workers,
                                           base_offset=_SELF_CHECK_OFFSET)
    sigma1 = l2_norm(ind)
    sc_grid = tuple(sigma1 * t for t in (0.5, 1.0, 1.5, 2.0, 3.0))
    exact = montecarlo.binomial_tail_oracle(Fraction(w0), mc.n, sc_grid)
    import numpy as np
    with open(outdir / "self_check.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "p_hat", "p_exact", "stderr", "z"])
        absvals = np.abs(sc_values)
        for x, pe in zip(sc_grid, exact):
            p = float(np.count_nonzero(absvals > x)) / mc.replicates
            se = (p * (1 - p) / mc.replicates) ** 0.5
            z = abs(p - pe) / se if se > 0 else 0.0
            w.writerow([repr(x), repr(p), repr(pe), repr(se), repr(z)])

    manifest = {"seed": seed, "replicates": mc.replicates, "n": mc.n,
                "kernel_hash": _kernel_hash(space, cfg["kernel"])}
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {outdir}/tails.csv, self_check.csv, manifest.json")
    return 0


# -- constants --------------------------------------------------------------

def cmd_constants(args) -> int:
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    table = combinatorics.moment_constant_table(args.k_max, args.m_max)
    with open(outdir / "moment_constants.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "m", "D", "Cbar"])
        for k, m, d, cbar in table.rows:
            w.writerow([k, m, str(d), str(cbar)])
    with open(outdir / "expectation_constants.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        # B_nk is the exact rational b with scaled constant = b * n^{-k/2}
        w.writerow(["n", "k", "B_nk"])
        for n in range(2, args.n_max + 1):
            for k in range(1, args.k_max + 1):
                b = combinatorics.expectation_coefficient(n, k) * Fraction(n) ** k
                w.writerow([n, k, str(b)])
    print(f"wrote {outdir}/moment_constants.csv, expectation_constants.csv")
    return 0


# -- bounds -----------------------------------------------------------------

def _parse_grid(text: str) -> tuple[float, ...]:
    if ":" in text:
        lo, hi, num = text.split(":")
        lo, hi, num = float(lo), float(hi), int(num)
        if num < 1 or hi <= lo:
            raise ConfigError(f"bad grid spec {text!r}")
        step = (hi / lo) ** (1.0 / max(num - 1, 1))
        return tuple(lo * step**i for i in range(num))
    return tuple(float(t) for t in text.split(","))


def cmd_bounds(args) -> int:
    params = bounds_mod.BoundParams()
    if args.constants_file:
        doc = _load_config(args.constants_file)
        params = bounds_mod.BoundParams(
            C=float(doc.get("C", 1.0)), alpha=float(doc.get("alpha", 1.0)),
            c1=float(doc.get("c1", 1.0)), c2=float(doc.get("c2", 1.0)))
    grid = _parse_grid(args.x_grid)
    rows = bounds_mod.regime_report(args.k, args.sigma, args.n, grid, params)
    out = Path(args.out)
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "bound13", "bound16", "active_branch", "log_ratio"])
        for x, b13, b16, branch, lr in rows:
            w.writerow([repr(x), repr(b13), repr(b16), branch, repr(lr)])
    print(f"wrote {out}")
    return 0


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="empint",
        description="Exact and Monte Carlo analysis of empirical-measure multiple integrals.",
        epilog="verify exit codes: 10 diagram, 11 expectation, 12 norms, "
               "13 moments, 14 dominance, 15 constants; config errors exit 2.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the self-verification suites")
    p.add_argument("--config", help="JSON config with seed/mode/suites")
    p.add_argument("--report", help="where to write the JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tails", help="Monte Carlo tail estimation")
    p.add_argument("--config", required=True, help="JSON run configuration")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_tails)

    p = sub.add_parser("constants", help="export exact constant tables")
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("bounds", help="tabulate tail bounds over a grid")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x-grid", required=True, help="lo:hi:num (geometric) or x1,x2,...")
    p.add_argument("--constants-file", help="JSON with C/alpha/c1/c2")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bounds)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    except EmpintError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
