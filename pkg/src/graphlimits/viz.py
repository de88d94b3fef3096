"""Pixel pictures as 8-bit portable graymaps.

Value 1 is black and 0 white (pixel = round(255 (1 - v))); the origin is the
upper-left corner, so row ``r`` samples the first coordinate and column ``c``
the second.  Note that very different graphs can share a picture: every
complete bipartite graph with equal sides gives the same chessboard.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graphs import Graph, Multigraph
from .kernels import Kernel, StepGraphon, degree_order, flatten_2d


@dataclass(frozen=True)
class RasterSpec:
    resolution: int = 512
    ordering: str = "birth"

    def __post_init__(self):
        if not 16 <= self.resolution <= 4096:
            raise ValueError("resolution must be in [16, 4096]")
        if self.ordering not in ("birth", "degree"):
            raise ValueError("ordering must be 'birth' or 'degree'")


def _centres(res: int) -> np.ndarray:
    return (np.arange(res) + 0.5) / res


def raster(obj, spec: RasterSpec) -> np.ndarray:
    """Values in ``[0, 1]`` on a ``resolution x resolution`` grid of cell centres."""
    res = spec.resolution
    if isinstance(obj, (Graph, Multigraph)):
        if spec.ordering == "degree":
            obj = obj.relabel(degree_order(obj))
        vals = obj.adj.astype(float) if isinstance(obj, Graph) else obj.mult.astype(float)
        if isinstance(obj, Multigraph) and vals.max() > 0:
            # darkness proportional to multiplicity
            vals = vals / vals.max()
        idx = np.minimum((_centres(res) * obj.n).astype(np.int64), obj.n - 1)
        return vals[np.ix_(idx, idx)]
    if isinstance(obj, StepGraphon):
        b = obj.block(_centres(res))
        return np.clip(obj.values[np.ix_(b, b)], 0.0, 1.0)
    if isinstance(obj, Kernel):
        k = flatten_2d(obj) if obj.dim == 2 else obj
        x = _centres(res)
        return np.clip(k(x[:, None], x[None, :]), 0.0, 1.0)
    raise TypeError(f"cannot render {type(obj).__name__}")


def to_gray(values: np.ndarray) -> np.ndarray:
    return np.rint(255.0 * (1.0 - values)).astype(np.uint8)


def write_pgm(pixels: np.ndarray, path) -> Path:
    path = Path(path)
    h, w = pixels.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(pixels, dtype=np.uint8).tobytes())
    return path


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    m = re.match(rb"P5\s+(\d+)\s+(\d+)\s+(\d+)\s", data)
    if not m or int(m.group(3)) != 255:
        raise ValueError("not an 8-bit binary PGM")
    w, h = int(m.group(1)), int(m.group(2))
    return np.frombuffer(data[m.end() : m.end() + w * h], dtype=np.uint8).reshape(h, w)


def render(obj, spec: RasterSpec, path) -> Path:
    return write_pgm(to_gray(raster(obj, spec)), path)


def render_series(graphs, spec: RasterSpec, directory, stem: str = "frame") -> list[Path]:
    graphs = list(graphs)
    if not graphs:
        raise ValueError("nothing to render")
    directory = Path(directory)
    os.makedirs(directory, exist_ok=True)
    width = max(3, len(str(len(graphs) - 1)))
    return [render(g, spec, directory / f"{stem}_{i:0{width}d}.pgm") for i, g in enumerate(graphs)]
