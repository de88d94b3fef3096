"""
Randomly grown graphs and their limits
======================================

Grow each model, print a few counts, and save pictures next to the limit
kernels.  Birth order is the node order unless a file says "degree".
"""
import os
from pathlib import Path

from graphlimits import (RasterSpec, Seed, builtin_kernel, grow_pag, grow_prefix, grow_ranked, grow_spag,
                         grow_uniform, render, simplify_pag)

out = Path(os.environ.get("GRAPHLIMITS_OUTPUT_DIR", Path(__file__).parent / "out"))
out.mkdir(parents=True, exist_ok=True)
seed = Seed(7)
n = 100

# uniform attachment: dark upper-left wedge, limit 1 - max(x, y)
g = grow_uniform(n, seed)
print(f"uniform: {g.num_edges} edges, expected {(n * n - 1) / 6:.1f}")
render(g, RasterSpec(400), out / "uniform_100.pgm")
render(builtin_kernel("uniform-limit"), RasterSpec(400), out / "uniform_limit.pgm")

# ranked attachment: limit 1 - xy
g = grow_ranked(n, seed)
print(f"ranked: {g.num_edges} edges")
render(g, RasterSpec(400), out / "ranked_100.pgm")
render(builtin_kernel("ranked-limit"), RasterSpec(400), out / "ranked_limit.pgm")

# prefix attachment in birth and in degree order
g, labels = grow_prefix(n, seed)
render(g, RasterSpec(400), out / "prefix_100_birth.pgm")
render(g, RasterSpec(400, "degree"), out / "prefix_100_degree.pgm")
print("first prefix labels (k/n, z/k):", labels.points[:3].round(3).tolist())

# the limit lives on the unit square; its picture goes through a measure-preserving map
render(builtin_kernel("prefix-limit"), RasterSpec(512), out / "prefix_limit.pgm")

# preferential attachment: a multigraph, pictured by multiplicity
mg = grow_pag(50, 1000, seed)
print(f"PAG(50, 1000): {int(mg.loops.sum())} loops, {simplify_pag(mg).num_edges} distinct pairs")
render(mg, RasterSpec(400), out / "pag_50_1000.pgm")
render(simplify_pag(mg), RasterSpec(400), out / "pag_50_1000_simple.pgm")

# simplified PAG with m = c n^2 / 2 in degree order against 1 - exp(-c ln x ln y)
g = grow_spag(300, 0.5, seed)
render(g, RasterSpec(600, "degree"), out / "spag_300.pgm")
render(builtin_kernel("spag-limit", 0.5), RasterSpec(600), out / "spag_limit.pgm")
