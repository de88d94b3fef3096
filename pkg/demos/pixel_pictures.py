"""
Pixel pictures of small graphs
==============================

Adjacency matrices drawn as graymaps: black is an edge, the origin is the
upper-left corner.  Files land in $GRAPHLIMITS_OUTPUT_DIR (default demos/out).
"""
import os
from pathlib import Path

import numpy as np

from graphlimits import RasterSpec, builtin_kernel, chessboard, half_graph, petersen, render
from graphlimits.graphs import parity_order
from graphlimits.viz import raster

out = Path(os.environ.get("GRAPHLIMITS_OUTPUT_DIR", Path(__file__).parent / "out"))
out.mkdir(parents=True, exist_ok=True)

# The Petersen graph: 10 nodes, so a resolution of 200 gives 20x20 blocks
g = petersen()
print(g.adj.astype(int))
render(g, RasterSpec(200), out / "petersen.pgm")

# Half-graphs H_{n,n} get closer to the indicator of |x - y| >= 1/2
spec = RasterSpec(256)
limit = raster(builtin_kernel("half-graph"), spec)
for n in (3, 10, 50):
    err = np.abs(raster(half_graph(n), spec) - limit).mean()
    print(f"half-graph n={n}: mean pixel gap to the limit {err:.4f}")
    render(half_graph(n), spec, out / f"half_graph_{n}.pgm")
render(builtin_kernel("half-graph"), spec, out / "half_graph_limit.pgm")

# A chessboard is K_{4,4}.  Grouping the two sides turns it into two black squares,
# and the grouped picture is the same for every balanced complete bipartite graph.
board = chessboard(8)
render(board, RasterSpec(256), out / "chessboard.pgm")
render(board.relabel(parity_order(8)), RasterSpec(256), out / "chessboard_grouped.pgm")
