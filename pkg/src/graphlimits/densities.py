"""Homomorphism and injective densities.

Two exact engines are provided for counting maps from a small pattern:

* ``_backtrack`` walks partial maps node by node, vectorising only the last
  choice.  It handles injectivity and falling-factorial edge weights.
* ``_contract`` writes the sum over all maps as a tensor contraction and lets
  ``np.einsum`` choose the order.  No injectivity, but fast.

Step graphons and midpoint quadrature reduce to the contraction with block
measures as node weights.
"""
from __future__ import annotations

import math
import re
import string
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .graphs import Graph, LabeledSample, Multigraph
from .kernels import Kernel, StepGraphon
from .rng import as_seed

MAX_PATTERN_NODES = 10


class SizeError(ValueError):
    """A size cap was exceeded (exponential cost)."""


@dataclass(frozen=True)
class PatternGraph:
    """Small multigraph ``F`` on nodes ``0..k-1``.

    ``edges`` holds ``(a, b, multiplicity)`` with ``a <= b``; ``a == b`` is a loop.
    """

    k: int
    edges: tuple[tuple[int, int, int], ...]
    name: str = ""

    def __post_init__(self):
        if not 1 <= self.k <= MAX_PATTERN_NODES:
            raise SizeError(f"patterns may have 1..{MAX_PATTERN_NODES} nodes, got {self.k}")
        merged: dict[tuple[int, int], int] = {}
        for a, b, r in self.edges:
            a, b = min(a, b), max(a, b)
            if not (0 <= a < self.k and 0 <= b < self.k) or r < 1:
                raise ValueError(f"bad pattern edge {(a, b, r)}")
            merged[a, b] = merged.get((a, b), 0) + r
        object.__setattr__(self, "edges", tuple((a, b, r) for (a, b), r in sorted(merged.items())))

    @classmethod
    def from_graph(cls, g: Graph, name: str = "") -> "PatternGraph":
        return cls(g.n, tuple((a, b, 1) for a, b in g.edges()), name)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        d = [0] * self.k
        for a, b, r in self.edges:
            d[a] += r
            d[b] += r
        return tuple(d)

    @property
    def num_edges(self) -> int:
        return sum(r for _, _, r in self.edges)

    @property
    def num_nonloop_edges(self) -> int:
        return sum(r for a, b, r in self.edges if a != b)

    @property
    def has_loops(self) -> bool:
        return any(a == b for a, b, _ in self.edges)

    @property
    def is_simple(self) -> bool:
        return all(a != b and r == 1 for a, b, r in self.edges)

    def __str__(self):
        return self.name or format_pattern(self)


_NAMED = re.compile(r"^(K|P|C|S)(\d+)$")


def pattern(spec: str | PatternGraph) -> PatternGraph:
    """Parse a pattern.

    Accepts names ``K<k>`` (complete), ``P<k>`` (path on k nodes), ``C<k>``
    (cycle), ``S<k>`` (star with k leaves), ``K2(2)`` (double edge), or the
    text form ``"k; i j [mult]; ..."`` with loops written ``"i i"``.
    """
    if isinstance(spec, PatternGraph):
        return spec
    s = spec.strip()
    if s == "K2(2)":
        return PatternGraph(2, ((0, 1, 2),), s)
    m = _NAMED.match(s)
    if m:
        kind, k = m.group(1), int(m.group(2))
        if kind == "K":
            e = [(a, b, 1) for a in range(k) for b in range(a + 1, k)]
        elif kind == "P":
            e = [(a, a + 1, 1) for a in range(k - 1)]
        elif kind == "C":
            if k < 3:
                raise ValueError("cycles need at least 3 nodes")
            e = [(a, (a + 1) % k, 1) for a in range(k)]
        else:
            e = [(0, a, 1) for a in range(1, k + 1)]
            k += 1
        return PatternGraph(k, tuple(e), s)
    parts = [p.strip() for p in s.split(";") if p.strip()]
    if not parts:
        raise ValueError(f"cannot parse pattern {spec!r}")
    try:
        k = int(parts[0])
        edges = []
        for p in parts[1:]:
            f = [int(x) for x in p.split()]
            if len(f) not in (2, 3):
                raise ValueError
            edges.append((f[0], f[1], f[2] if len(f) == 3 else 1))
    except ValueError:
        raise ValueError(f"cannot parse pattern {spec!r}") from None
    return PatternGraph(k, tuple(edges))


def format_pattern(f: PatternGraph) -> str:
    body = "; ".join(f"{a} {b}" if r == 1 else f"{a} {b} {r}" for a, b, r in f.edges)
    return f"{f.k}; {body}" if body else f"{f.k}"


# ---------------------------------------------------------------------------
# engines


def _power(x: np.ndarray, r: int) -> np.ndarray:
    return x if r == 1 else x**r


def _falling(x: np.ndarray, r: int) -> np.ndarray:
    out = x.copy()
    for q in range(1, r):
        out = out * (x - q)
    return out


def _node_order(f: PatternGraph) -> list[int]:
    """Greedy order: next node has most edges back to placed nodes."""
    nbrs = {a: set() for a in range(f.k)}
    for a, b, _ in f.edges:
        if a != b:
            nbrs[a].add(b)
            nbrs[b].add(a)
    order: list[int] = []
    left = set(range(f.k))
    while left:
        nxt = max(sorted(left), key=lambda v: (len(nbrs[v] & set(order)), len(nbrs[v])))
        order.append(nxt)
        left.remove(nxt)
    return order


def _backtrack(f: PatternGraph, target: np.ndarray, node_w=None, injective=False, weight=_power):
    """Sum over maps ``phi`` of ``prod node_w[phi(a)] * prod weight(target[phi a, phi b], r)``.

    ``target`` carries loop weights on its diagonal.  Integer inputs give an
    exact Python ``int``.
    """
    n = target.shape[0]
    if f.k > n and injective:
        return 0
    order = _node_order(f)
    pos = {a: d for d, a in enumerate(order)}
    back = [[] for _ in order]  # (earlier depth, multiplicity)
    loops = [0] * f.k
    for a, b, r in f.edges:
        if a == b:
            loops[pos[a]] += r
        else:
            da, db = sorted((pos[a], pos[b]))
            back[db].append((da, r))
    diag = target.diagonal()
    base = [None] * f.k
    for d in range(f.k):
        v = np.ones(n, dtype=target.dtype) if node_w is None else np.asarray(node_w).copy()
        if loops[d]:
            v = v * weight(diag, loops[d])
        base[d] = v
    exact = np.issubdtype(target.dtype, np.integer) and node_w is None
    assign = [0] * f.k

    def rec(d):
        vec = base[d]
        for e, r in back[d]:
            vec = vec * weight(target[assign[e]], r)
        if injective and d:
            vec = vec.copy()
            vec[assign[:d]] = 0
        if d == f.k - 1:
            return int(vec.sum()) if exact else float(vec.sum())
        total = 0
        for v in np.flatnonzero(vec):
            assign[d] = v
            sub = rec(d + 1)
            if sub:
                total += (int(vec[v]) if exact else float(vec[v])) * sub
        return total

    return rec(0)


def _contract(f: PatternGraph, target: np.ndarray, node_w=None, weight=_power):
    """Same sum as ``_backtrack`` (non-injective) by one einsum contraction."""
    letters = string.ascii_letters
    ops, subs = [], []
    n = target.shape[0]
    w = np.ones(n, dtype=target.dtype) if node_w is None else np.asarray(node_w)
    diag = target.diagonal()
    for a in range(f.k):
        ops.append(w)
        subs.append(letters[a])
    for a, b, r in f.edges:
        if a == b:
            ops.append(weight(diag, r))
            subs.append(letters[a])
        else:
            ops.append(weight(target, r))
            subs.append(letters[a] + letters[b])
    expr = ",".join(subs) + "->"
    return np.einsum(expr, *ops, optimize="greedy")


# ---------------------------------------------------------------------------
# graph targets


def _require_simple(f: PatternGraph):
    if not f.is_simple:
        raise ValueError(f"pattern {f} must be simple (no loops or parallel edges)")


def hom_count(f, g: Graph, method: str = "auto") -> int:
    """Number of homomorphisms ``V(F) -> V(G)``.

    ``method="backtrack"`` extends partial maps one node at a time;
    ``"contract"`` (and ``"auto"`` when the count fits in int64) uses an exact
    integer tensor contraction.
    """
    f = pattern(f)
    _require_simple(f)
    a = g.adj.astype(np.int64)
    if method == "auto":
        method = "contract" if g.n ** f.k < 2**62 else "backtrack"
    if method == "contract":
        if g.n ** f.k >= 2**62:
            raise SizeError("count may overflow int64; use method='backtrack'")
        return int(_contract(f, a))
    if method == "backtrack":
        return _backtrack(f, a)
    raise ValueError(f"unknown method {method!r}")


def t_density(f, g: Graph, method: str = "auto") -> float:
    """``t(F, G) = hom(F, G) / n^k``."""
    f = pattern(f)
    return hom_count(f, g, method) / g.n**f.k


def _as_weights(g: Graph | Multigraph) -> np.ndarray:
    if isinstance(g, Multigraph):
        return g.weight_matrix()
    return g.adj.astype(np.int64)


def inj_count(f, g: Graph | Multigraph) -> int:
    """Embeddings ``(phi, psi)``: injective on nodes and on edges.

    A pattern pair of multiplicity ``r`` over a target pair of multiplicity
    ``mu`` contributes the falling factorial ``(mu)_r``; loops likewise.
    """
    f = pattern(f)
    w = _as_weights(g)
    if f.k > w.shape[0]:
        return 0
    return _backtrack(f, w, injective=True, weight=_falling)


def falling_factorial(n: int, k: int) -> int:
    return math.prod(range(n - k + 1, n + 1)) if k <= n else 0


def t_inj(f, g: Graph | Multigraph) -> float:
    """``inj(F, G) / (n)_k``."""
    f = pattern(f)
    n = g.n
    if n < f.k:
        raise SizeError(f"target has {n} nodes, pattern needs {f.k}")
    return inj_count(f, g) / falling_factorial(n, f.k)


def t_hom_multi(f, g: Multigraph) -> float:
    """Homomorphism density into a multigraph.

    A pattern edge of multiplicity ``r`` mapped onto a pair of multiplicity
    ``mu`` contributes ``mu**r``; pairs mapped to one node use its loop count.
    """
    f = pattern(f)
    return float(_contract(f, g.weight_matrix())) / g.n**f.k


# ---------------------------------------------------------------------------
# closed forms


def expected_tinj_pag(f, n: int, m: int) -> float:
    """``E t_inj(F, PAG(n, m)) = 2^{l'} r_1!...r_k! (m)_l / (n (n+1) ... (n+2l-1))``."""
    f = pattern(f)
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    l, lp = f.num_edges, f.num_nonloop_edges
    if m < l:
        return 0.0
    lg = math.lgamma
    logv = lp * math.log(2) + sum(lg(r + 1) for r in f.degrees)
    logv += lg(m + 1) - lg(m - l + 1)
    logv -= lg(n + 2 * l) - lg(n)
    return math.exp(logv)


def limit_tinj_pag(f, c: float) -> float:
    """Limit of ``E t_inj(F, PAG(n, c n^2 / 2))``: ``2^{l'-l} c^l prod r_i!``."""
    f = pattern(f)
    l, lp = f.num_edges, f.num_nonloop_edges
    return 2.0 ** (lp - l) * c**l * math.prod(math.factorial(r) for r in f.degrees)


def t_log_closed(f, c: float) -> float:
    """``t(F, c ln x ln y) = c^l r_1! ... r_k!`` for loopless ``F``."""
    f = pattern(f)
    if f.has_loops:
        raise ValueError("closed form holds only for loopless patterns")
    if not c > 0:
        raise ValueError("c must be positive")
    return c**f.num_edges * math.prod(math.factorial(r) for r in f.degrees)


# ---------------------------------------------------------------------------
# graphon targets


def t_step_exact(f, s: StepGraphon) -> float:
    """``sum over block maps of prod values * prod measures`` (exact)."""
    f = pattern(f)
    _require_simple(f)
    if f.k > 8 or s.k > 64:
        raise SizeError("t_step_exact is limited to k <= 8 pattern nodes and 64 blocks")
    return float(_contract(f, s.values, node_w=s.measures))


def _grid_points(grid: int, dim: int) -> np.ndarray:
    mid = (np.arange(grid) + 0.5) / grid
    if dim == 1:
        return mid
    xx, yy = np.meshgrid(mid, mid, indexing="ij")
    return np.column_stack([xx.ravel(), yy.ravel()])


def kernel_matrix(w: Kernel, points: np.ndarray) -> np.ndarray:
    if w.dim == 1:
        return w(points[:, None], points[None, :])
    return w(points[:, None, :], points[None, :, :])


def t_kernel_quad(f, w: Kernel, grid: int = 128) -> float:
    """Midpoint tensor rule with ``grid`` points per latent axis."""
    f = pattern(f)
    _require_simple(f)
    if grid < 1:
        raise ValueError("grid must be positive")
    if float(grid) ** (f.k * w.dim) > 1e9:
        raise SizeError(f"grid^(k*dim) = {grid}^{f.k * w.dim} exceeds the 1e9 budget")
    pts = _grid_points(grid, w.dim)
    vals = kernel_matrix(w, pts)
    return float(_contract(f, vals, node_w=np.full(len(pts), 1.0 / len(pts))))


def t_kernel_mc(f, w: Kernel, samples: int = 10**6, seed=None, chunk: int = 1 << 16) -> tuple[float, float]:
    """Plain Monte Carlo estimate of ``t(F, W)`` and its standard error.

    Chunk ``c`` draws from ``Seed(seed, stream).rng(c)``; chunk statistics are
    merged with the pairwise mean/variance update, so the result does not
    depend on how chunks are distributed.
    """
    f = pattern(f)
    _require_simple(f)
    samples = int(samples)
    if samples < 1000:
        raise ValueError("Monte Carlo needs at least 1000 samples")
    seed = as_seed(seed)
    count, mean, m2 = 0, 0.0, 0.0
    for c, start in enumerate(range(0, samples, chunk)):
        size = min(chunk, samples - start)
        rng = seed.rng(c)
        shape = (size, f.k) if w.dim == 1 else (size, f.k, 2)
        x = rng.random(shape)
        val = np.ones(size)
        for a, b, r in f.edges:
            val *= _power(w(x[:, a], x[:, b]), r)
        cm = val.mean()
        cm2 = float(((val - cm) ** 2).sum())
        delta = cm - mean
        tot = count + size
        mean += delta * size / tot
        m2 += cm2 + delta * delta * count * size / tot
        count = tot
    var = m2 / (count - 1)
    return float(mean), float(math.sqrt(var / count))


# ---------------------------------------------------------------------------
# well-distributed sequences


def dyadic_grid(m: int, dim: int) -> list[tuple[tuple[float, float], ...]]:
    """The ``m^dim`` cells ``J_{m,k1} x ... `` with ``J_{m,k} = (k/m, (k+1)/m]``."""
    edges = [(k / m, (k + 1) / m) for k in range(m)]
    return [tuple(c) for c in product(edges, repeat=dim)]


def _check_partition(cells, dim: int) -> None:
    """Exact check: every elementary box of the breakpoint grid is covered once."""
    for cell in cells:
        if len(cell) != dim:
            raise ValueError("cell dimension does not match the samples")
        for lo, hi in cell:
            if not 0.0 <= lo < hi <= 1.0:
                raise ValueError(f"bad cell interval {(lo, hi)}")
    breaks = [np.unique([0.0, 1.0] + [x for c in cells for x in c[axis]]) for axis in range(dim)]
    cover = np.zeros([len(b) - 1 for b in breaks], dtype=np.int64)
    for cell in cells:
        idx = tuple(
            slice(np.searchsorted(b, lo), np.searchsorted(b, hi)) for b, (lo, hi) in zip(breaks, cell)
        )
        cover[idx] += 1
    if not (cover == 1).all():
        raise ValueError("cells do not partition the unit cube")


def _in_cell(pts: np.ndarray, cell) -> np.ndarray:
    inside = np.ones(len(pts), dtype=bool)
    for axis, (lo, hi) in enumerate(cell):
        x = pts[:, axis]
        # cells are (lo, hi]; the point 0 belongs to the cell starting at 0
        inside &= ((x > lo) | ((lo == 0.0) & (x == 0.0))) & (x <= hi)
    return inside


def well_distribution_report(samples, cells) -> list[dict]:
    """For each sample set and cell: share of points in the cell vs its volume."""
    samples = [s if isinstance(s, LabeledSample) else LabeledSample(s) for s in samples]
    if not samples:
        return []
    dim = samples[0].dim
    cells = [tuple(tuple(map(float, iv)) for iv in c) for c in cells]
    _check_partition(cells, dim)
    rows = []
    for s in samples:
        if s.dim != dim:
            raise ValueError("all samples must share a dimension")
        for idx, cell in enumerate(cells):
            share = float(_in_cell(s.points, cell).mean())
            vol = math.prod(hi - lo for lo, hi in cell)
            rows.append({"n": len(s), "cell": idx, "fraction": share, "volume": vol, "deviation": share - vol})
    return rows
