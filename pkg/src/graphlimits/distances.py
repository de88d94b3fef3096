"""Cut norm, cut distance and edit distance.

For a step function the cut-norm objective

    sum_{a, b} s_a t_b mu_a mu_b V_ab,    s, t in [0, 1]^k

is bilinear in the block fractions ``s`` and ``t``, so its extreme values are
attained at vertices of the cube: ``S`` and ``T`` can be taken to be unions of
whole blocks.  Given ``S``, the best ``T`` collects the blocks whose column sum
has the wanted sign.  ``cut_norm_exact`` enumerates ``S``; the heuristic
alternates the sign rule between ``S`` and ``T``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .densities import SizeError, kernel_matrix
from .graphs import Graph
from .kernels import Kernel, StepGraphon, degree_order, flatten_2d, step_from_graph
from .rng import as_seed

EXACT_MAX_BLOCKS = 24
EXACT_MAX_NODES = 8
DYADIC_DEPTH = 6


@dataclass
class CutNormResult:
    value: float
    lower_bound: float
    exact: bool
    witness: tuple[np.ndarray, np.ndarray]

    def __float__(self):
        return self.value


@dataclass
class OverlayResult:
    distance_estimate: float
    permutation: np.ndarray
    exact: bool
    extras: dict = field(default_factory=dict)

    def __float__(self):
        return self.distance_estimate


def _weighted(s: StepGraphon) -> np.ndarray:
    return s.values * np.outer(s.measures, s.measures)


def rectangle_value(s: StepGraphon, S, T) -> float:
    """``integral over S x T`` for block-index sets ``S`` and ``T``."""
    S = np.asarray(S, dtype=np.int64)
    T = np.asarray(T, dtype=np.int64)
    if S.size == 0 or T.size == 0:
        return 0.0
    return float(_weighted(s)[np.ix_(S, T)].sum())


def _subset_bits(k: int, start: int, stop: int) -> np.ndarray:
    masks = np.arange(start, stop, dtype=np.int64)
    return ((masks[:, None] >> np.arange(k)) & 1).astype(float)


def _result_from_witness(s, S, T, exact):
    S = np.flatnonzero(S)
    T = np.flatnonzero(T)
    v = abs(rectangle_value(s, S, T))
    return CutNormResult(v, v, exact, (S, T))


def cut_norm_exact(s: StepGraphon) -> CutNormResult:
    """Exact cut norm of a step graphon with at most 24 blocks."""
    k = s.k
    if k > EXACT_MAX_BLOCKS:
        raise SizeError(f"exact cut norm needs k <= {EXACT_MAX_BLOCKS}, got {k}")
    m = _weighted(s)
    best, best_mask, best_sign = -1.0, 0, 1.0
    chunk = 1 << 14
    for start in range(0, 1 << k, chunk):
        bits = _subset_bits(k, start, min(start + chunk, 1 << k))
        col = bits @ m
        pos = np.where(col > 0, col, 0.0).sum(axis=1)
        neg = -np.where(col < 0, col, 0.0).sum(axis=1)
        for val, sign in ((pos, 1.0), (neg, -1.0)):
            i = int(np.argmax(val))
            if val[i] > best:
                best, best_mask, best_sign = float(val[i]), start + i, sign
    S = ((best_mask >> np.arange(k)) & 1).astype(bool)
    T = best_sign * (S.astype(float) @ m) > 0
    return _result_from_witness(s, S, T, True)


def _alternate(x: np.ndarray, S: np.ndarray, max_iter: int = 200):
    """Sign-rule ascent for ``max 1_S^T x 1_T`` from a start set ``S``.

    Alternation stalls in 2-cycles now and then, so each round ends with a
    single-flip search on ``S`` (with ``T`` re-optimised) before giving up.
    """
    best = -math.inf
    T = np.zeros_like(S)
    for _ in range(max_iter):
        col = S.astype(float) @ x
        T_new = col > 0
        row = x @ T_new.astype(float)
        S_new = row > 0
        val = float(row[S_new].sum())
        if val <= best + 1e-15:
            # try every single flip of S; each candidate's best T is the positive part of its column sums
            cand = np.logical_xor(S[None, :], np.eye(S.size, dtype=bool)).astype(float) @ x
            vals = np.where(cand > 0, cand, 0.0).sum(axis=1)
            i = int(np.argmax(vals))
            if vals[i] <= best + 1e-15:
                break
            S_new = S.copy()
            S_new[i] = not S_new[i]
            T_new = (S_new.astype(float) @ x) > 0
            val = float(S_new.astype(float) @ x @ T_new.astype(float))
        best, S, T = val, S_new, T_new
    return max(best, 0.0), S, T


def cut_norm_heuristic(s: StepGraphon, restarts: int = 32, seed=None) -> CutNormResult:
    """Alternating maximisation from ``restarts`` starts; a certified lower bound.

    Start 0 is ``S = everything``, starts ``1..k`` are the single blocks and
    later starts ``r`` are fair random subsets from ``Seed(seed, stream).rng(r)``.
    The start list does not depend on ``restarts``, so more restarts never give
    a smaller value.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    seed = as_seed(seed)
    m = _weighted(s)
    k = s.k
    best, witness = 0.0, (np.zeros(k, bool), np.zeros(k, bool))
    for r in range(restarts):
        if r == 0:
            start = np.ones(k, dtype=bool)
        elif r <= k:
            start = np.arange(k) == r - 1
        else:
            start = seed.rng(r).random(k) < 0.5
        for x in (m, -m):
            val, S, T = _alternate(x, start)
            if val > best:
                best, witness = val, (S, T)
    res = _result_from_witness(s, *witness, exact=False)
    return res


# ---------------------------------------------------------------------------
# graph overlays


def _check_pair(g: Graph, h: Graph) -> int:
    if g.n != h.n:
        raise ValueError(f"graphs must have equal node counts ({g.n} != {h.n})")
    return g.n


def _perm_batches(n: int, size: int = 2048):
    batch = []
    for p in permutations(range(n)):
        batch.append(p)
        if len(batch) == size:
            yield np.array(batch)
            batch = []
    if batch:
        yield np.array(batch)


def _cut_of_batch(d: np.ndarray, bits: np.ndarray) -> np.ndarray:
    col = np.einsum("sk,pkl->psl", bits, d)
    pos = np.where(col > 0, col, 0.0).sum(axis=2).max(axis=1)
    neg = -np.where(col < 0, col, 0.0).sum(axis=2).min(axis=1)
    return np.maximum(pos, neg)


def _overlay_step(g: Graph, h: Graph, perm) -> StepGraphon:
    return StepGraphon.uniform(g.adj.astype(float) - h.adj[np.ix_(perm, perm)].astype(float))


def _edit_value(g: Graph, h: Graph, perm) -> float:
    return float((g.adj != h.adj[np.ix_(perm, perm)]).sum()) / g.n**2


def _exact_search(g: Graph, h: Graph, kind: str):
    n = g.n
    a = g.adj.astype(float) / n**2
    b = h.adj.astype(float) / n**2
    bits = _subset_bits(n, 0, 1 << n) if kind == "cut" else None
    best, best_perm = math.inf, None
    for batch in _perm_batches(n):
        d = a[None] - b[batch[:, :, None], batch[:, None, :]]
        vals = _cut_of_batch(d, bits) if kind == "cut" else np.abs(d).sum(axis=(1, 2))
        i = int(np.argmin(vals))
        if vals[i] < best - 1e-15:
            best, best_perm = float(vals[i]), batch[i]
    return best_perm


def _hill_climb(objective, perm: np.ndarray, rng, max_evals: int):
    cur = objective(perm)
    evals = 1
    n = perm.size
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    improved = True
    while improved and evals < max_evals:
        improved = False
        for idx in rng.permutation(len(pairs)):
            a, b = pairs[idx]
            cand = perm.copy()
            cand[a], cand[b] = cand[b], cand[a]
            val = objective(cand)
            evals += 1
            if val < cur - 1e-15:
                perm, cur, improved = cand, val, True
            if evals >= max_evals:
                break
    return perm, cur


def _degree_alignment(g: Graph, h: Graph) -> np.ndarray:
    og, oh = degree_order(g), degree_order(h)
    perm = np.empty(g.n, dtype=np.int64)
    perm[og] = oh
    return perm


def cut_distance_graphs(g: Graph, h: Graph, mode: str = "exact", seed=None, restarts: int = 8,
                        max_evals: int = 2000) -> OverlayResult:
    """``min over node permutations pi of ||W_G - W_H^pi||_cut``.

    Exact mode scans all ``n!`` overlays (``n <= 8``).  Heuristic mode starts
    from the degree-sorted alignment and hill-climbs over transpositions.
    Overlays are permutations only, so the value bounds the infimum over
    measure-preserving maps from above when the inner norm is exact.
    """
    n = _check_pair(g, h)
    seed = as_seed(seed)
    if n == 1:
        return OverlayResult(0.0, np.zeros(1, dtype=np.int64), mode == "exact")
    if mode == "exact":
        if n > EXACT_MAX_NODES:
            raise SizeError(f"exact cut distance needs n <= {EXACT_MAX_NODES}")
        perm = _exact_search(g, h, "cut")
        res = cut_norm_exact(_overlay_step(g, h, perm))
        return OverlayResult(res.value, perm, True, {"witness": res.witness})
    if mode != "heuristic":
        raise ValueError(f"unknown mode {mode!r}")

    def norm(perm):
        s = _overlay_step(g, h, perm)
        return cut_norm_exact(s) if n <= 12 else cut_norm_heuristic(s, restarts, seed)

    perm, _ = _hill_climb(lambda p: norm(p).value, _degree_alignment(g, h), seed.rng(1 << 20), max_evals)
    res = norm(perm)
    return OverlayResult(res.value, perm, False, {"witness": res.witness})


def edit_distance(g: Graph, h: Graph, mode: str = "exact", seed=None, max_evals: int = 20000) -> OverlayResult:
    """``min over pi of ||W_G - W_H^pi||_1``: mismatched ordered pairs over ``n^2``."""
    n = _check_pair(g, h)
    seed = as_seed(seed)
    if n == 1:
        return OverlayResult(0.0, np.zeros(1, dtype=np.int64), mode == "exact")
    if mode == "exact":
        if n > EXACT_MAX_NODES:
            raise SizeError(f"exact edit distance needs n <= {EXACT_MAX_NODES}")
        perm = _exact_search(g, h, "edit")
        return OverlayResult(_edit_value(g, h, perm), perm, True)
    if mode != "heuristic":
        raise ValueError(f"unknown mode {mode!r}")
    perm, val = _hill_climb(lambda p: _edit_value(g, h, p), _degree_alignment(g, h), seed.rng(1 << 20), max_evals)
    return OverlayResult(val, perm, False)


# ---------------------------------------------------------------------------
# graph vs kernel


def _as_dim1(w: Kernel) -> Kernel:
    return flatten_2d(w) if w.dim == 2 else w


def discretize(w: Kernel, n: int, grid: int | None = None) -> StepGraphon:
    """``n``-block step kernel: block averages of ``w`` by a midpoint rule.

    Each block gets ``ceil(grid / n)`` sample points per axis (at least one).
    """
    w = _as_dim1(w)
    r = max(1, math.ceil((grid or n) / n))
    pts = (np.repeat(np.arange(n), r) + np.tile((np.arange(r) + 0.5) / r, n)) / n
    vals = kernel_matrix(w, pts).reshape(n, r, n, r).mean(axis=(1, 3))
    return StepGraphon.uniform((vals + vals.T) / 2)


def _overlaps(edges: np.ndarray, a: float, b: float) -> np.ndarray:
    return np.clip(np.minimum(b, edges[1:]) - np.maximum(a, edges[:-1]), 0.0, None)


def _graph_rect(g: Graph, s_interval, t_interval) -> float:
    edges = np.arange(g.n + 1) / g.n
    os_ = _overlaps(edges, *s_interval)
    ot = _overlaps(edges, *t_interval)
    return float(os_ @ g.adj.astype(float) @ ot)


def rect_integral(g: Graph, w: Kernel | StepGraphon, s_interval, t_interval, grid: int = 256) -> float:
    """``integral over S x T of (W_G - W)`` for intervals ``S`` and ``T``.

    The graph part is exact.  A step graphon ``w`` is integrated exactly, a
    kernel by a ``grid x grid`` midpoint rule on the rectangle.
    """
    (a, b), (c, d) = map(tuple, (s_interval, t_interval))
    if not (0 <= a <= b <= 1 and 0 <= c <= d <= 1):
        raise ValueError("intervals must lie in [0, 1]")
    if a == b or c == d:
        return 0.0
    lhs = _graph_rect(g, (a, b), (c, d))
    if isinstance(w, StepGraphon):
        edges = np.concatenate([[0.0], np.cumsum(w.measures)])
        edges[-1] = 1.0
        rhs = float(_overlaps(edges, a, b) @ w.values @ _overlaps(edges, c, d))
    else:
        w = _as_dim1(w)
        x = a + (np.arange(grid) + 0.5) / grid * (b - a)
        y = c + (np.arange(grid) + 0.5) / grid * (d - c)
        rhs = float(w(x[:, None], y[None, :]).mean() * (b - a) * (d - c))
    return lhs - rhs


def dyadic_intervals(depth: int = DYADIC_DEPTH) -> list[tuple[int, int]]:
    """Index ranges (in units of ``2**-depth``) of all dyadic intervals of depth 1..depth."""
    out = []
    for d in range(1, depth + 1):
        step = 1 << (depth - d)
        out += [(i * step, (i + 1) * step) for i in range(1 << d)]
    return out


def dyadic_lower_bound(g: Graph, w: Kernel, grid: int = 512, depth: int = DYADIC_DEPTH) -> float:
    """``max over dyadic S, T of |integral over S x T of (W_G - W)|``.

    The graph part is exact; kernel cells use a midpoint rule with
    ``ceil(grid / 2**depth)`` points per cell side.
    """
    w = _as_dim1(w)
    cells = 1 << depth
    q = max(1, math.ceil(grid / cells))
    pts = (np.arange(cells * q) + 0.5) / (cells * q)
    kern = kernel_matrix(w, pts).reshape(cells, q, cells, q).mean(axis=(1, 3)) / cells**2
    node_edges = np.arange(g.n + 1) / g.n
    cell_edges = np.arange(cells + 1) / cells
    o = np.stack([_overlaps(node_edges, cell_edges[c], cell_edges[c + 1]) for c in range(cells)], axis=1)
    diff = o.T @ g.adj.astype(float) @ o - kern
    pre = np.zeros((cells + 1, cells + 1))
    pre[1:, 1:] = diff.cumsum(0).cumsum(1)
    lo, hi = np.array(dyadic_intervals(depth)).T
    rect = pre[hi[:, None], hi[None, :]] - pre[lo[:, None], hi[None, :]] - pre[hi[:, None], lo[None, :]] + pre[lo[:, None], lo[None, :]]
    return float(np.abs(rect).max())


def cut_distance_graph_kernel(g: Graph, w: Kernel, grid: int | None = None, seed=None,
                              restarts: int = 8) -> OverlayResult:
    """Cut norm of ``W_G - W`` with ``G`` in birth order (no relabelling).

    ``w`` is replaced by its ``n``-block discretisation and the difference is
    handed to :func:`cut_norm_heuristic`; ``extras["dyadic_lower_bound"]``
    carries the dyadic-rectangle bound.  Two-dimensional kernels are pulled
    back to ``[0, 1]`` with :func:`flatten_2d`.
    """
    n = g.n
    grid = grid or max(n, 256)
    step = discretize(w, n, grid)
    diff = step_from_graph(g) - step
    res = cut_norm_heuristic(diff, restarts, seed)
    extras = {"witness": res.witness, "dyadic_lower_bound": dyadic_lower_bound(g, w, grid)}
    return OverlayResult(res.value, np.arange(n), False, extras)
