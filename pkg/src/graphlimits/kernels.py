"""Kernels (graphons on [0,1]^d), step graphons and coordinate transforms."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graphs import Graph, Multigraph

_LOG_FLOOR = 1e-300


@dataclass(frozen=True)
class Kernel:
    """Symmetric function ``W(u, v)`` on ``[0,1]^dim x [0,1]^dim``.

    ``func`` must be vectorised: for ``dim == 1`` it receives two broadcastable
    float arrays, for ``dim == 2`` two arrays whose last axis has length 2.
    """

    dim: int
    func: Callable[[np.ndarray, np.ndarray], np.ndarray]
    bounded01: bool = True
    name: str = "kernel"

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError("kernel dimension must be 1 or 2")

    def __call__(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return np.asarray(self.func(u, v), dtype=float)

    eval = __call__

    @classmethod
    def constant(cls, c: float, dim: int = 1) -> "Kernel":
        def f(u, v):
            shape = np.broadcast_shapes(u.shape[: u.ndim - (dim - 1)], v.shape[: v.ndim - (dim - 1)])
            return np.full(shape, float(c))

        return cls(dim, f, bounded01=0.0 <= c <= 1.0, name=f"const({c:g})")


@dataclass(frozen=True, eq=False)
class StepGraphon:
    """Block-constant graphon: ``values[a, b]`` on block ``a x b``; block widths ``measures``."""

    values: np.ndarray
    measures: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        mu = np.array(self.measures, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or mu.shape != (v.shape[0],):
            raise ValueError("values must be k x k and measures of length k")
        if not np.array_equal(v, v.T):
            raise ValueError("step values must be symmetric")
        if (mu <= 0).any() or abs(mu.sum() - 1.0) > 1e-12:
            raise ValueError("block measures must be positive and sum to 1")
        v.setflags(write=False)
        mu.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "measures", mu)

    @classmethod
    def uniform(cls, values) -> "StepGraphon":
        values = np.asarray(values, dtype=float)
        k = values.shape[0]
        return cls(values, np.full(k, 1.0 / k))

    @property
    def k(self) -> int:
        return self.values.shape[0]

    @property
    def equal_blocks(self) -> bool:
        return bool(np.all(self.measures == self.measures[0]))

    def block(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if ((x < 0) | (x >= 1)).any():
            raise ValueError("step graphon coordinates must lie in [0, 1)")
        if self.equal_blocks:
            # floor(k x) avoids cumulative-sum rounding at block edges
            return np.minimum(np.floor(x * self.k).astype(np.int64), self.k - 1)
        edges = np.cumsum(self.measures)[:-1]
        return np.searchsorted(edges, x, side="right")

    def __call__(self, x, y) -> np.ndarray:
        return self.values[self.block(x), self.block(y)]

    def as_kernel(self) -> Kernel:
        def f(u, v):
            # kernels may be probed at 1.0; fold it into the last block
            u = np.minimum(u, np.nextafter(1.0, 0.0))
            v = np.minimum(v, np.nextafter(1.0, 0.0))
            return self(u, v)

        lo, hi = self.values.min(), self.values.max()
        return Kernel(1, f, bounded01=bool(lo >= 0 and hi <= 1), name=f"step(k={self.k})")

    def __sub__(self, other: "StepGraphon") -> "StepGraphon":
        if not np.array_equal(self.measures, other.measures):
            raise ValueError("step graphons must share the block partition")
        return StepGraphon(self.values - other.values, self.measures)

    def scaled(self, lam: float) -> "StepGraphon":
        return StepGraphon(lam * self.values, self.measures)


def step_eval(s: StepGraphon, x: float, y: float) -> float:
    return float(s(x, y))


def step_from_graph(g: Graph | Multigraph) -> StepGraphon:
    """``W_G``: adjacency entry ``(i, j)`` spread over the square ``J_i x J_j``.

    A multigraph gives a weighted step function (multiplicities, zero diagonal).
    """
    if g.n < 1:
        raise ValueError("graph must have at least one node")
    vals = g.mult if isinstance(g, Multigraph) else g.adj
    return StepGraphon.uniform(vals.astype(float))


# ---------------------------------------------------------------------------
# built-in limit graphons


class BuiltinGraphon(str, enum.Enum):
    UNIFORM_LIMIT = "uniform-limit"
    RANKED_LIMIT = "ranked-limit"
    PREFIX_RATIO = "prefix-ratio"
    PREFIX_LIMIT = "prefix-limit"
    PREF_LOG = "pref-log"
    SPAG_LIMIT = "spag-limit"
    HALF_GRAPH = "half-graph"


_PARAMETRIC = {BuiltinGraphon.PREF_LOG, BuiltinGraphon.SPAG_LIMIT}


def _uniform_limit(x, y):
    return 1.0 - np.maximum(x, y)


def _ranked_limit(x, y):
    return 1.0 - x * y


def _prefix_ratio(x, y):
    m = np.maximum(x, y)
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.abs(x - y) / m
    return np.where(m > 0, r, 0.0)


def _prefix_limit(p, q):
    x1, y1 = p[..., 0], p[..., 1]
    x2, y2 = q[..., 0], q[..., 1]
    return ((x1 < x2 * y2) | (x2 < x1 * y1)).astype(float)


def _half_graph(x, y):
    return (np.abs(x - y) >= 0.5).astype(float)


def builtin_kernel(tag: BuiltinGraphon | str, c: float | None = None) -> Kernel:
    """Limit graphon of one of the growth models (or the half-graph limit).

    ``pref-log`` is ``c ln x ln y`` and ``spag-limit`` is ``1 - exp(-c ln x ln y)``;
    both need ``c > 0``.  ``prefix-limit`` lives on ``[0,1]^2``.
    """
    tag = BuiltinGraphon(tag)
    if tag in _PARAMETRIC:
        if c is None or not c > 0:
            raise ValueError(f"{tag.value} needs a parameter c > 0, got {c!r}")
        c = float(c)
    elif c is not None:
        raise ValueError(f"{tag.value} takes no parameter")

    if tag is BuiltinGraphon.UNIFORM_LIMIT:
        return Kernel(1, _uniform_limit, True, tag.value)
    if tag is BuiltinGraphon.RANKED_LIMIT:
        return Kernel(1, _ranked_limit, True, tag.value)
    if tag is BuiltinGraphon.PREFIX_RATIO:
        return Kernel(1, _prefix_ratio, True, tag.value)
    if tag is BuiltinGraphon.PREFIX_LIMIT:
        return Kernel(2, _prefix_limit, True, tag.value)
    if tag is BuiltinGraphon.HALF_GRAPH:
        return Kernel(1, _half_graph, True, tag.value)

    def loglog(x, y):
        return c * (np.log(np.maximum(x, _LOG_FLOOR)) * np.log(np.maximum(y, _LOG_FLOOR)))

    if tag is BuiltinGraphon.PREF_LOG:
        return Kernel(1, loglog, False, f"{tag.value}({c:g})")
    return Kernel(1, lambda x, y: -np.expm1(-loglog(x, y)), True, f"{tag.value}({c:g})")


def parse_kernel(spec: str) -> Kernel:
    """``"spag-limit:0.5"`` -> ``builtin_kernel("spag-limit", 0.5)``."""
    name, _, param = spec.partition(":")
    return builtin_kernel(name, float(param) if param else None)


# ---------------------------------------------------------------------------
# coordinate transforms


def deinterleave(x, bits: int = 20) -> np.ndarray:
    """Split the first ``2*bits`` binary digits of ``x`` into two coordinates.

    Digits 1, 3, 5, ... go to the first coordinate, digits 2, 4, 6, ... to the
    second.  Each coordinate is returned at the centre of its ``2**-bits`` cell.
    """
    if not 8 <= bits <= 26:
        raise ValueError("bits must be in [8, 26]")
    x = np.asarray(x, dtype=float)
    total = 2 * bits
    xi = np.clip(np.floor(x * 2.0**total), 0, 2.0**total - 1).astype(np.uint64)
    a = np.zeros_like(xi)
    b = np.zeros_like(xi)
    one = np.uint64(1)
    for q in range(bits):
        # digit 2q+1 (odd) sits at shift total-1-2q, digit 2q+2 at total-2-2q
        a = (a << one) | ((xi >> np.uint64(total - 1 - 2 * q)) & one)
        b = (b << one) | ((xi >> np.uint64(total - 2 - 2 * q)) & one)
    scale = 2.0**-bits
    return np.stack([(a + 0.5) * scale, (b + 0.5) * scale], axis=-1)


def flatten_2d(kernel: Kernel, bits: int = 20) -> Kernel:
    """Pull a kernel on ``[0,1]^2`` back to ``[0,1]`` through bit de-interleaving."""
    if kernel.dim != 2:
        raise ValueError("flatten_2d needs a 2-dimensional kernel")
    if not 8 <= bits <= 26:
        raise ValueError("bits must be in [8, 26]")

    def f(x, y):
        return kernel(deinterleave(x, bits), deinterleave(y, bits))

    return Kernel(1, f, kernel.bounded01, f"flat({kernel.name})")


def degree_order(g: Graph | Multigraph) -> np.ndarray:
    """Node order by nonincreasing degree, ties by ascending label."""
    return np.argsort(-g.degrees(), kind="stable")


def reorder_by_degree(g: Graph | Multigraph) -> Graph | Multigraph:
    return g.relabel(degree_order(g))
