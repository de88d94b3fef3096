"""Command-line harness: generate, density, distance, converge, render.

Exit codes: 0 success, 2 usage error, 3 size cap exceeded, 4 I/O failure.
Every report has a ``--json`` mirror.  Output files default to
``$GRAPHLIMITS_OUTPUT_DIR`` (or the working directory).
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import densities as dens
from . import distances as dist
from . import growth
from .densities import SizeError
from .graphs import Graph, LabeledSample, Multigraph, load, named_graph, save
from .kernels import builtin_kernel, parse_kernel, reorder_by_degree
from .rng import Seed
from .viz import RasterSpec, render

EXIT_USAGE, EXIT_SIZE, EXIT_IO = 2, 3, 4
OUTPUT_ENV = "GRAPHLIMITS_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _outdir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "."))


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _int(text: str) -> int:
    v = float(text)
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    return int(v)


# ---------------------------------------------------------------------------
# model construction


def _homogeneous_profile(c: float, profile: str):
    # U homogeneous of degree c; boundary is W(x, 1) = 1 - U(x, 1)
    if profile == "product":
        return lambda x: 1.0 - np.power(x, c / 2)
    if profile == "max":
        return lambda x: 1.0 - np.maximum(x, 1.0) ** c
    raise UsageError(f"unknown homogeneous profile {profile!r}")


def build_model(model: str, n: int, param: float | None, seed: Seed):
    """Generate one graph of ``model``; returns the graph (or multigraph)."""
    name, _, arg = model.partition(":")
    if name == "uniform":
        return growth.grow_uniform(n, seed)
    if name == "ranked":
        return growth.grow_ranked(n, seed)
    if name == "prefix":
        return growth.grow_prefix(n, seed)[0]
    if name == "pag":
        if param is None:
            raise UsageError("pag needs the edge count m")
        return growth.grow_pag(n, _int(str(param)), seed)
    if name == "spag":
        if param is None:
            raise UsageError("spag needs the density parameter c")
        return growth.grow_spag(n, param, seed)
    if name == "wrandom":
        w = parse_kernel(arg)
        rng = seed.rng(1)
        pts = rng.random(n) if w.dim == 1 else rng.random((n, 2))
        return growth.sample_w_random(LabeledSample(pts), w, seed)
    if name == "prescribed":
        return growth.grow_prescribed(parse_kernel(arg), n, seed)
    if name == "homogeneous":
        c, _, profile = arg.partition(":")
        return growth.grow_homogeneous(float(c), n, _homogeneous_profile(float(c), profile or "product"), seed)
    raise UsageError(f"unknown model {model!r}")


def _limit_kernel(model: str, param: float | None):
    name, _, arg = model.partition(":")
    if name == "uniform":
        return builtin_kernel("uniform-limit")
    if name == "ranked":
        return builtin_kernel("ranked-limit")
    if name == "prefix":
        return builtin_kernel("prefix-ratio")
    if name == "spag":
        return builtin_kernel("spag-limit", param)
    if name == "prescribed":
        return parse_kernel(arg)
    raise UsageError(f"no birth-order limit kernel for model {model!r}")


def _load_target(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "kernel":
        return parse_kernel(rest)
    if kind == "graph":
        return load(rest)
    if kind == "named":
        return named_graph(rest)
    # bare path
    return load(spec)


# ---------------------------------------------------------------------------
# commands


def cmd_generate(args) -> dict:
    seed = Seed(args.seed)
    g = build_model(args.model, args.n, args.param, seed)
    out = Path(args.out) if args.out else _outdir() / f"{args.model.replace(':', '_')}_n{args.n}_s{args.seed}.el"
    save(g, out)
    rep = {"command": "generate", "model": args.model, "n": g.n, "edges": g.num_edges, "path": str(out)}
    if isinstance(g, Multigraph):
        rep["loops"] = int(g.loops.sum())
        rep["distinct_pairs"] = int((np.triu(g.mult, 1) > 0).sum())
    return rep


def cmd_density(args) -> dict:
    f = dens.pattern(args.pattern)
    target = _load_target(args.target)
    rep = {"command": "density", "pattern": str(f), "target": args.target, "method": args.method}
    if isinstance(target, (Graph, Multigraph)):
        if args.method == "inj":
            rep["value"] = dens.t_inj(f, target)
            rep["provenance"] = "exact injective count (backtracking)"
        elif args.method == "exact":
            if isinstance(target, Multigraph):
                rep["value"] = dens.t_hom_multi(f, target)
            else:
                rep["value"] = dens.t_density(f, target)
            rep["provenance"] = "exact homomorphism count"
        else:
            raise UsageError("graph targets take --method exact or inj")
        return rep
    if args.method == "mc":
        est, se = dens.t_kernel_mc(f, target, args.samples, Seed(args.seed))
        rep.update(value=est, stderr=se, samples=args.samples, provenance="plain Monte Carlo, Philox streams")
    elif args.method == "quad":
        rep.update(value=dens.t_kernel_quad(f, target, args.grid), grid=args.grid, provenance="midpoint tensor rule")
    elif args.method == "closed":
        if not target.name.startswith("pref-log"):
            raise UsageError("closed form exists only for pref-log kernels")
        c = float(args.target.rsplit(":", 1)[1])
        rep.update(value=dens.t_log_closed(f, c), provenance="c^l prod r_i!")
    else:
        raise UsageError("kernel targets take --method mc, quad or closed")
    return rep


def cmd_distance(args) -> dict:
    a = _load_target(args.a)
    b = _load_target(args.b)
    if not isinstance(a, Graph):
        raise UsageError("first operand must be a simple graph")
    seed = Seed(args.seed)
    if isinstance(b, Graph):
        if args.kind == "cut":
            res = dist.cut_distance_graphs(a, b, args.mode, seed, args.restarts)
        else:
            res = dist.edit_distance(a, b, args.mode, seed)
    elif isinstance(b, Multigraph):
        raise UsageError("distances are defined for simple graphs")
    else:
        if args.kind != "cut":
            raise UsageError("graph-kernel comparison supports the cut distance only")
        res = dist.cut_distance_graph_kernel(a, b, args.grid, seed, args.restarts)
    rep = {"command": "distance", "kind": args.kind, "mode": args.mode,
           "estimate": res.distance_estimate, "exact": res.exact}
    if "witness" in res.extras:
        S, T = res.extras["witness"]
        rep["witness_sizes"] = [int(len(S)), int(len(T))]
    if "dyadic_lower_bound" in res.extras:
        rep["dyadic_lower_bound"] = res.extras["dyadic_lower_bound"]
    return rep


def _statistic(stat: str, model: str, g, param, seed: Seed, restarts: int) -> float:
    kind, _, arg = stat.partition(":")
    if kind == "edges":
        return float(g.num_edges)
    if kind == "t":
        f = dens.pattern(arg)
        return dens.t_hom_multi(f, g) if isinstance(g, Multigraph) else dens.t_density(f, g)
    if kind == "tinj":
        return dens.t_inj(dens.pattern(arg), g)
    if kind == "cut":
        if isinstance(g, Multigraph):
            raise UsageError("cut statistic needs a simple graph")
        if model.startswith("spag"):
            # latent coordinate grows as degree falls
            g = reorder_by_degree(g)
        return dist.cut_distance_graph_kernel(g, _limit_kernel(model, param), None, seed, restarts).distance_estimate
    raise UsageError(f"unknown statistic {stat!r}")


CSV_HEADER = ["model", "n", "rep", "statistic", "value"]


def converge_rows(model: str, n_list, reps: int, stats, seed: int, param=None, restarts: int = 8) -> list[list[str]]:
    """Rows of the convergence table; replication ``r`` uses ``Seed(seed, r)``."""
    if list(n_list) != sorted(n_list):
        raise UsageError("n values must be ascending")
    data = []
    for n in n_list:
        for r in range(reps):
            s = Seed(seed, r)
            g = build_model(model, n, _model_param(model, n, param), s)
            for st in stats:
                data.append((n, st, r, _statistic(st, model, g, param, s, restarts)))
    data.sort(key=lambda row: (row[0], row[1], row[2]))
    rows = [[model, str(n), str(r), st, _fmt(v)] for n, st, r, v in data]
    for n in n_list:
        for st in stats:
            vals = np.array([v for nn, s_, _, v in data if nn == n and s_ == st])
            if vals.size == 0:
                continue
            se = vals.std(ddof=1) / math.sqrt(vals.size) if vals.size > 1 else float("nan")
            rows.append([model, str(n), "mean", st, _fmt(vals.mean())])
            rows.append([model, str(n), "stderr", st, _fmt(se)])
    return rows


def _model_param(model: str, n: int, param):
    # for pag the parameter is c and the edge count follows m = c n^2 / 2
    if model == "pag":
        if param is None:
            raise UsageError("pag convergence needs --c")
        return growth.spag_edges(n, param)
    return param


def cmd_converge(args) -> dict:
    rows = converge_rows(args.model, args.n, args.reps, args.stat, args.seed, args.c, args.restarts)
    out = Path(args.out) if args.out else _outdir() / f"converge_{args.model.replace(':', '_')}.csv"
    with open(out, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(rows)
    means = {f"{r[3]}@{r[1]}": float(r[4]) for r in rows if r[2] == "mean"}
    return {"command": "converge", "model": args.model, "rows": len(rows), "path": str(out), "means": means}


def cmd_render(args) -> dict:
    obj = _load_target(args.input)
    spec = RasterSpec(args.res, args.ordering)
    out = Path(args.out) if args.out else _outdir() / "picture.pgm"
    render(obj, spec, out)
    return {"command": "render", "input": args.input, "resolution": args.res, "ordering": args.ordering, "path": str(out)}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphlimits", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="grow a random graph and write its edge list")
    g.add_argument("model", help="uniform, ranked, prefix, pag, spag, wrandom:<kernel>, prescribed:<kernel>, homogeneous:<c>[:max|:product]")
    g.add_argument("n", type=_int)
    g.add_argument("param", nargs="?", type=float, help="m for pag, c for spag")
    g.add_argument("--seed", type=_int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("density", help="homomorphism / injective density")
    d.add_argument("pattern", help="K3, P3, C4, K2(2), or 'k; i j [mult]; ...'")
    d.add_argument("target", help="graph:<file>, named:<graph> or kernel:<name>[:c]")
    d.add_argument("--method", default="exact", choices=["exact", "inj", "mc", "quad", "closed"])
    d.add_argument("--samples", type=_int, default=10**6)
    d.add_argument("--grid", type=_int, default=128)
    d.add_argument("--seed", type=_int, default=0)
    d.set_defaults(func=cmd_density)

    x = sub.add_parser("distance", help="cut or edit distance")
    x.add_argument("kind", choices=["cut", "edit"])
    x.add_argument("a")
    x.add_argument("b")
    x.add_argument("--mode", default="heuristic", choices=["exact", "heuristic"])
    x.add_argument("--restarts", type=_int, default=8)
    x.add_argument("--grid", type=_int, default=None)
    x.add_argument("--seed", type=_int, default=0)
    x.set_defaults(func=cmd_distance)

    c = sub.add_parser("converge", help="statistics along a growing sequence, as CSV")
    c.add_argument("model")
    c.add_argument("--n", type=_int, nargs="+", required=True)
    c.add_argument("--reps", type=_int, default=10)
    c.add_argument("--stat", action="append", required=True, help="edges, t:<pattern>, tinj:<pattern>, cut")
    c.add_argument("--c", type=float, default=None, help="density parameter for pag/spag")
    c.add_argument("--restarts", type=_int, default=8)
    c.add_argument("--seed", type=_int, default=0)
    c.add_argument("--out")
    c.set_defaults(func=cmd_converge)

    r = sub.add_parser("render", help="pixel picture as PGM")
    r.add_argument("input", help="graph:<file>, named:<graph> or kernel:<name>[:c]")
    r.add_argument("--res", type=_int, default=512)
    r.add_argument("--ordering", default="birth", choices=["birth", "degree"])
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)
    return p


def _print(rep: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rep, sort_keys=True, default=float))
        return
    for k, v in rep.items():
        if isinstance(v, float):
            v = _fmt(v)
        print(f"{k}: {v}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate" and args.model == "spag" and args.param is None:
        parser.error("spag needs c")
    try:
        rep = args.func(args)
    except SizeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SIZE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _print(rep, args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
