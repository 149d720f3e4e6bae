"""Command-line harness: every experiment is one subcommand, one CSV.

Output is plain CSV with a single leading comment line echoing the tool
version and the full configuration, so an artifact is self-describing and
byte-identical across reruns and thread counts for a fixed seed.  Exit
codes: 0 success, 2 configuration error, 3 numerical failure (conflict or
degenerate normalizer).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .combiners import ConflictError, combiner_family
from .core import DegenerateContourError, GridSpec, interval
from .diagnostics import (
    JointSampler,
    conditional_validity,
    coverage_length,
    validity_cdf,
)
from .models import MvNormalModel, ScalarNormalModel, vacuous_contour_mv, vacuous_contour_scalar
from .priors import (
    FiniteCredalSet,
    IntervalPrior,
    interval_compatible,
    normal_compatible,
    parse_prior,
)
from .sparse import (
    SparseDemoConfig,
    region_area,
    sparse_tnorm_contour,
    sparse_validified_contour,
)
from .validify import GeneratorContour, ValidifyConfig, build_transform

_CONTOUR_GRID = "-1:3:0.005"

PRESETS = {
    "1a": dict(cmd="contour", y="1.5", combiners="vacuous,hose:0.5", grid=_CONTOUR_GRID),
    "1b": dict(cmd="contour", y="1.1", combiners="vacuous,hose:0.5", grid=_CONTOUR_GRID),
    "1c": dict(cmd="contour", y="0.9", combiners="vacuous,hose:0.5", grid=_CONTOUR_GRID),
    "1d": dict(cmd="contour", y="0.5", combiners="vacuous,hose:0.5", grid=_CONTOUR_GRID),
    "2a": dict(cmd="cond-validity", assertion="1,5", prior="credal:0,1", reps=100_000),
    "2b": dict(cmd="cond-validity", assertion="1,1.5", prior="credal:0,1", reps=100_000),
    "3": dict(
        cmd="validity-cdf",
        combiners="vacuous,hose:0.5,dempster,tnorm:product",
        reps=100_000,
    ),
    "4a": dict(cmd="contour", y="1.5", combiners="vacuous,tnorm:product,dempster", grid=_CONTOUR_GRID),
    "4b": dict(cmd="contour", y="1.1", combiners="vacuous,tnorm:product,dempster", grid=_CONTOUR_GRID),
    "4c": dict(cmd="contour", y="0.9", combiners="vacuous,tnorm:product,dempster", grid=_CONTOUR_GRID),
    "4d": dict(cmd="contour", y="0.5", combiners="vacuous,tnorm:product,dempster", grid=_CONTOUR_GRID),
    "5a": dict(cmd="validify", y="0.9", generator="tnorm:product", grid=_CONTOUR_GRID),
    "5b": dict(cmd="validify", y="1.1", generator="tnorm:product", grid=_CONTOUR_GRID),
    "6": dict(cmd="sparse-demo", y="1,0.3", varpi=0.5, dim=2, grid="-2.5:4.5:0.05"),
}


def _parse_model(spec: str):
    kind, _, arg = spec.partition(":")
    try:
        if kind == "normal":
            return ScalarNormalModel(int(arg))
        if kind == "mvnormal":
            return MvNormalModel(int(arg))
    except ValueError as exc:
        raise ValueError(f"bad model spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown model kind {kind!r} (want normal:n or mvnormal:d)")


def _parse_range(spec: str):
    try:
        lo, hi, step = (float(v) for v in spec.split(":"))
    except ValueError:
        raise ValueError(f"bad grid spec {spec!r} (want lo:hi:step)") from None
    return lo, hi, step


def _default_scalar_grid(model, prior, y: float) -> GridSpec:
    lo = y - 4.0 * model.sd
    hi = y + 4.0 * model.sd
    if isinstance(prior, IntervalPrior):
        lo = min(lo, prior.a - 0.5)
        hi = max(hi, prior.b + 0.5)
    return GridSpec.make(lo, hi, 0.005)


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("IM_SEED")
    if env is not None:
        try:
            args.seed = int(env)
        except ValueError:
            raise ValueError(f"IM_SEED must be an integer, got {env!r}") from None
        return args.seed
    raise ValueError("a seed is required: pass --seed or set IM_SEED")


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _write_csv(out, comment: str, names, columns) -> None:
    rows = zip(*columns)
    lines = [f"# valim {__version__} | {comment}", ",".join(names)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _echo(args, keys) -> str:
    parts = [args.cmd]
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            parts.append(f"{k.replace('_', '-')}={v}")
    return " ".join(parts)


# --- subcommands -------------------------------------------------------------


def cmd_contour(args) -> int:
    model = _parse_model(args.model)
    if args.sparse:
        if not isinstance(model, MvNormalModel):
            model = MvNormalModel(args.dim)
        y = tuple(float(v) for v in args.y.split(","))
        lo, hi, step = _parse_range(args.grid or "-2.5:4.5:0.05")
        grid = GridSpec(tuple((lo, hi, step) for _ in range(model.dim)))
        cfg = SparseDemoConfig(dim=model.dim, varpi=args.varpi, y=y, grid=grid)
        pts = grid.points()
        cols = [pts[:, 0], pts[:, 1]]
        names = ["theta", "theta2"]
        for name, c in (
            ("vacuous", vacuous_contour_mv(model, y)),
            ("tnorm_product", sparse_tnorm_contour(cfg)),
        ):
            cols.append(np.asarray(c(pts)))
            names.append(f"contour_{name}")
        _write_csv(args.out, _echo(args, ("model", "prior", "y", "grid", "varpi")), names, cols)
        return 0

    prior = parse_prior(args.prior) if args.prior else None
    y = float(args.y)
    if args.grid:
        grid = GridSpec.make(*_parse_range(args.grid))
    else:
        grid = _default_scalar_grid(model, prior, y)
    pts = grid.points()
    names = ["theta"]
    cols = [pts]
    for spec in args.combiners.split(","):
        fam = combiner_family(spec.strip(), model, prior)
        if fam.build is None:
            raise ValueError(f"combiner {fam.name!r} defines no contour to tabulate")
        cols.append(np.asarray(fam.build(y)(pts)))
        names.append(f"contour_{fam.name}")
    _write_csv(args.out, _echo(args, ("model", "prior", "combiners", "y", "grid")), names, cols)
    return 0


def _qstar_list(args, prior):
    out = []
    for spec in (args.qstar or ["mix"]):
        if spec == "mix":
            if not isinstance(prior, IntervalPrior):
                raise ValueError("qstar 'mix' needs an interval prior")
            out.append(interval_compatible(prior))
        else:
            kind, _, rest = spec.partition(":")
            if kind != "normal":
                raise ValueError(f"unknown qstar spec {spec!r} (want mix or normal:m,v)")
            m, v = (float(x) for x in rest.split(","))
            out.append(normal_compatible(m, v))
    return out


def cmd_validity_cdf(args) -> int:
    model = _parse_model(args.model)
    prior = parse_prior(args.prior)
    seed = _resolve_seed(args)
    grid = np.round(np.arange(*_alpha_range(args)), 10)
    names = ["alpha"]
    cols = [grid]
    fams = [combiner_family(s.strip(), model, prior) for s in args.combiners.split(",")]
    samplers = _qstar_list(args, prior)
    for fam in fams:
        if fam.paired is None:
            raise ValueError(f"combiner {fam.name!r} has no contour; cannot trace its CDF")
        # envelope over the chosen compatible priors: worst (largest) CDF wins
        cdf = np.full(grid.shape, -1.0)
        stderr = np.zeros(grid.shape)
        for q in samplers:
            js = JointSampler(prior=q, model=model, reps=args.reps, seed=seed)
            rep = validity_cdf(fam, js, grid=grid, threads=args.threads)
            take = rep.cdf > cdf
            cdf = np.where(take, rep.cdf, cdf)
            stderr = np.where(take, rep.stderr, stderr)
        names += [f"cdf_{fam.name}", f"stderr_{fam.name}"]
        cols += [cdf, stderr]
    _write_csv(
        args.out,
        _echo(args, ("model", "prior", "combiners", "reps", "seed", "alpha_grid")),
        names,
        cols,
    )
    return 0


def _alpha_range(args):
    lo, hi, step = _parse_range(args.alpha_grid)
    return lo, hi + step * 1e-9, step


def cmd_cond_validity(args) -> int:
    model = _parse_model(args.model)
    prior = parse_prior(args.prior)
    if not isinstance(prior, FiniteCredalSet) or len(prior.members) != 1:
        raise ValueError("conditional validity needs a single precise prior (credal:m,v)")
    mean, var = prior.members[0]
    seed = _resolve_seed(args)
    lo, hi = (float(v) for v in args.assertion.split(","))
    a = interval(lo, hi)
    from .combiners import gbayes_upper_each

    def post_prob(ys):
        return gbayes_upper_each(prior, model, a, ys)

    grid = np.round(np.arange(*_alpha_range(args)), 10)
    rep = conditional_validity(
        post_prob,
        normal_compatible(mean, var),
        model,
        a,
        grid=grid,
        reps=args.reps,
        seed=seed,
        threads=args.threads,
    )
    if rep.low_hits:
        print(f"warning: only {rep.hits} conditioning hits; error bars doubled", file=sys.stderr)
    _write_csv(
        args.out,
        _echo(args, ("model", "prior", "assertion", "reps", "seed", "alpha_grid")) +
        f" hits={rep.hits}",
        ["alpha", "H_A", "stderr"],
        [grid, rep.cdf, rep.stderr],
    )
    return 0


def cmd_coverage(args) -> int:
    model = _parse_model(args.model)
    prior = parse_prior(args.prior)
    seed = _resolve_seed(args)
    samplers = _qstar_list(args, prior)
    names = ["im", "alpha", "coverage", "mean_length", "stderr_cov", "stderr_len", "reps", "seed"]
    rows = []
    for spec in args.combiners.split(","):
        fam = combiner_family(spec.strip(), model, prior)
        if fam.build is None:
            raise ValueError(f"combiner {fam.name!r} has no contour; no region to cover")
        for q in samplers:
            js = JointSampler(prior=q, model=model, reps=args.reps, seed=seed)
            rep = coverage_length(fam, js, args.alpha, threads=args.threads)
            rows.append([fam.name, rep.alpha, rep.coverage, rep.mean_length,
                         rep.stderr_cov, rep.stderr_len, rep.reps, rep.seed])
    comment = _echo(args, ("model", "prior", "combiners", "alpha", "reps", "seed"))
    lines = [f"# valim {__version__} | {comment}", ",".join(names)]
    lines.extend(",".join([r[0]] + [_fmt(v) for v in r[1:]]) for r in rows)
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_validify(args) -> int:
    model = _parse_model(args.model)
    prior = parse_prior(args.prior)
    seed = _resolve_seed(args)
    y = float(args.y)
    gen_fam = combiner_family(args.generator, model, prior)
    if gen_fam.paired is None:
        raise ValueError(f"generator {gen_fam.name!r} has no contour")
    cfg = ValidifyConfig(mc_reps=args.mc_reps, seed=seed)
    tr = build_transform(GeneratorContour.from_family(gen_fam), prior, model, cfg)
    if args.grid:
        grid = GridSpec.make(*_parse_range(args.grid))
    else:
        grid = _default_scalar_grid(model, prior, y)
    pts = grid.points()
    vac = combiner_family("vacuous", model, prior)
    gen_vals = gen_fam.paired(np.full(pts.shape, y), pts)
    vals, stderr = tr.apply_with_stderr(gen_vals)
    _write_csv(
        args.out,
        _echo(args, ("model", "prior", "generator", "y", "mc_reps", "seed", "grid")),
        ["theta", "contour_vacuous", f"contour_{gen_fam.name}",
         "contour_validified", "stderr_validified"],
        [pts, np.asarray(vac.build(y)(pts)), np.asarray(gen_vals), vals, stderr],
    )
    return 0


def cmd_sparse_demo(args) -> int:
    seed = _resolve_seed(args)
    y = tuple(float(v) for v in args.y.split(","))
    lo, hi, step = _parse_range(args.grid)
    grid = GridSpec(tuple((lo, hi, step) for _ in range(args.dim)))
    cfg = SparseDemoConfig(dim=args.dim, varpi=args.varpi, y=y,
                           mc_reps=args.mc_reps, seed=seed, grid=grid)
    model = cfg.model
    pts = grid.points()
    contours = [
        ("vacuous", vacuous_contour_mv(model, np.asarray(y))),
        ("tnorm_product", sparse_tnorm_contour(cfg)),
        ("validified", sparse_validified_contour(cfg)),
    ]
    names = ["theta", "theta2"]
    cols = [pts[:, 0], pts[:, 1]]
    level = 1.0 - args.region
    values = {name: np.asarray(c(pts)) for name, c in contours}
    for name, _ in contours:
        names.append(f"contour_{name}")
        cols.append(values[name])
    for name, _ in contours:
        names.append(f"in_region_{args.region}_{name}")
        cols.append(values[name] > level)
    for name, _ in contours:
        area = float(np.count_nonzero(values[name] > level) * grid.cell)
        print(f"area_{name}={area!r}")
    _write_csv(
        args.out,
        _echo(args, ("dim", "varpi", "y", "mc_reps", "seed", "grid", "region")),
        names,
        cols,
    )
    return 0


# --- parser ------------------------------------------------------------------


def _add_common(p, mc=True):
    p.add_argument("--model", default="normal:10", help="normal:n or mvnormal:d")
    p.add_argument("--prior", default="interval:1,2,0.1")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.add_argument("--figure", default=None, help="apply a built-in figure preset")
    if mc:
        p.add_argument("--seed", type=int, default=None, help="RNG seed (or env IM_SEED)")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="valim",
        description="possibility-theoretic inferential models with partial priors",
    )
    top.add_argument("--version", action="version", version=f"valim {__version__}")
    sub = top.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("contour", help="tabulate plausibility contours on a grid")
    _add_common(p, mc=False)
    p.add_argument("--y", default="1.5")
    p.add_argument("--combiners", default="vacuous,hose:0.5")
    p.add_argument("--grid", default=None, help="lo:hi:step")
    p.add_argument("--sparse", action="store_true", help="2-D sparse-prior contours")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--varpi", type=float, default=0.5)
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("validity-cdf", help="empirical CDF of the contour at the truth")
    _add_common(p)
    p.add_argument("--combiners", default="vacuous,hose:0.5,dempster,tnorm:product")
    p.add_argument("--alpha-grid", default="0:1:0.01", dest="alpha_grid")
    p.add_argument("--reps", type=int, default=100_000)
    p.add_argument("--qstar", action="append", default=None,
                   help="mix (the prior's own Q*) or normal:m,v; repeatable")
    p.set_defaults(func=cmd_validity_cdf)

    p = sub.add_parser("cond-validity", help="conditional validity of the precise-prior posterior")
    _add_common(p)
    p.add_argument("--assert", dest="assertion", default="1,5", help="lo,hi")
    p.add_argument("--alpha-grid", default="0:1:0.01", dest="alpha_grid")
    p.add_argument("--reps", type=int, default=100_000)
    p.set_defaults(func=cmd_cond_validity, prior="credal:0,1")

    p = sub.add_parser("coverage", help="coverage and mean length of plausibility regions")
    _add_common(p)
    p.add_argument("--combiners", default="vacuous,tnorm:product")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--qstar", action="append", default=None)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("validify", help="validified contour alongside its generator")
    _add_common(p)
    p.add_argument("--y", default="1.1")
    p.add_argument("--generator", default="tnorm:product")
    p.add_argument("--mc-reps", type=int, default=10_000, dest="mc_reps")
    p.add_argument("--grid", default=None)
    p.set_defaults(func=cmd_validify)

    p = sub.add_parser("sparse-demo", help="sparse normal mean demo grid and region areas")
    _add_common(p)
    p.add_argument("--y", default="1,0.3")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--varpi", type=float, default=0.5)
    p.add_argument("--mc-reps", type=int, default=100_000, dest="mc_reps")
    p.add_argument("--grid", default="-2.5:4.5:0.05")
    p.add_argument("--region", type=float, default=0.9)
    p.set_defaults(func=cmd_sparse_demo)

    return top


def _apply_preset(args) -> None:
    fig = getattr(args, "figure", None)
    if not fig:
        return
    preset = PRESETS.get(fig)
    if preset is None:
        raise ValueError(f"unknown figure {fig!r}; choose from {sorted(PRESETS)}")
    if preset["cmd"] != args.cmd:
        raise ValueError(f"figure {fig} belongs to the {preset['cmd']!r} subcommand")
    for k, v in preset.items():
        if k != "cmd":
            setattr(args, k, v)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_preset(args)
        return args.func(args)
    except (ConflictError, DegenerateContourError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
