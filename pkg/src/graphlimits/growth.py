"""Randomly growing graph sequences and their exact edge probabilities.

Labelling conventions (storage is always 0-based, row ``r`` = node born ``r``-th):

* uniform attachment: nodes ``0..n-1`` as born; node ``j`` first meets the
  densification step when the graph has ``j + 1`` nodes.
* ranked, prefix, prescribed and homogeneous growth: nodes ``1..n``; node
  ``k`` is born at step ``k`` (the graph then has ``k`` nodes).  Oracles for
  these models take 1-based indices.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from .graphs import Graph, LabeledSample, Multigraph
from .kernels import Kernel, StepGraphon
from .rng import Seed, as_seed


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValueError(f"number of nodes must be a positive integer, got {n!r}")
    return int(n)


def _pairs_by_younger(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All pairs ``i < j`` ordered by ``j`` then ``i``.

    The pairs among the first ``t`` nodes are then the prefix of length
    ``t (t-1) / 2``, which keeps each growth step a slice operation.
    """
    j, i = np.triu_indices(n, 1)[::-1]
    order = np.lexsort((i, j))
    return i[order], j[order]


def _to_graph(n: int, i: np.ndarray, j: np.ndarray, present: np.ndarray) -> Graph:
    adj = np.zeros((n, n), dtype=bool)
    adj[i[present], j[present]] = True
    return Graph(adj | adj.T)


def _densify(rng: np.random.Generator, present: np.ndarray, npairs: int, p) -> None:
    """Connect each currently nonadjacent pair in the prefix with probability ``p``."""
    if npairs == 0:
        return
    free = np.flatnonzero(~present[:npairs])
    if free.size == 0:
        return
    p = np.asarray(p, dtype=float)
    if p.ndim:
        p = p[free]
    present[free[rng.random(free.size) < p]] = True


def grow_uniform(n: int, seed=None) -> Graph:
    """Uniform attachment: when the graph reaches ``t`` nodes, every
    nonadjacent pair is joined independently with probability ``1/t``."""
    n = _check_n(n)
    rng = as_seed(seed).rng()
    i, j = _pairs_by_younger(n)
    present = np.zeros(i.size, dtype=bool)
    for t in range(2, n + 1):
        _densify(rng, present, t * (t - 1) // 2, 1.0 / t)
    return _to_graph(n, i, j, present)


def grow_ranked(n: int, seed=None) -> Graph:
    """Ranked attachment: new node ``k`` joins node ``i`` with probability
    ``1 - i/k``, then every nonadjacent pair is joined with probability ``2/k``."""
    n = _check_n(n)
    rng = as_seed(seed).rng()
    i, j = _pairs_by_younger(n)
    present = np.zeros(i.size, dtype=bool)
    for k in range(2, n + 1):
        lo, hi = (k - 1) * (k - 2) // 2, k * (k - 1) // 2
        old = np.arange(1, k)
        present[lo:hi] = rng.random(k - 1) < 1.0 - old / k
        _densify(rng, present, hi, 2.0 / k)
    return _to_graph(n, i, j, present)


def grow_prefix(n: int, seed=None) -> tuple[Graph, LabeledSample]:
    """Prefix attachment.

    Node ``k`` draws ``z`` uniformly from ``{1..k}`` and is joined to nodes
    ``1..z-1``; its latent label is ``(k/n, z/k)``.
    """
    n = _check_n(n)
    rng = as_seed(seed).rng()
    k = np.arange(1, n + 1)
    z = rng.integers(1, k + 1)
    lower = np.arange(n)[None, :] < (z - 1)[:, None]
    adj = lower | lower.T
    return Graph(adj), LabeledSample(np.column_stack([k / n, z / k]))


def grow_pag(n: int, m: int, seed=None) -> Multigraph:
    """Preferential attachment multigraph ``PAG(n, m)``.

    The sequence ``v_1..v_n`` is extended ``2m`` times by copying a uniformly
    chosen entry of the current sequence; appended entries ``2k-1, 2k`` form
    edge ``k``.
    """
    n = _check_n(n)
    if int(m) != m or m < 0:
        raise ValueError("m must be a nonnegative integer")
    m = int(m)
    rng = as_seed(seed).rng()
    # draw t picks a position among the n + t entries present at that time
    picks = rng.integers(0, n + np.arange(2 * m))
    node = picks.copy()
    # follow copies back to an original node; each jump strictly decreases
    pending = node >= n
    while pending.any():
        node[pending] = picks[node[pending] - n]
        pending = node >= n
    return _edges_to_multigraph(n, node[0::2], node[1::2])


def _edges_to_multigraph(n: int, a: np.ndarray, b: np.ndarray) -> Multigraph:
    mult = np.zeros((n, n), dtype=np.int64)
    loops = np.zeros(n, dtype=np.int64)
    is_loop = a == b
    np.add.at(loops, a[is_loop], 1)
    np.add.at(mult, (a[~is_loop], b[~is_loop]), 1)
    return Multigraph(mult + mult.T, loops)


def simplify_pag(g: Multigraph) -> Graph:
    """Drop loops and keep one copy of each parallel class."""
    return Graph(g.mult > 0)


def spag_edges(n: int, c: float) -> int:
    """Edge count ``round(c n^2 / 2)`` under which PAG tends to ``c ln x ln y``."""
    return int(round(c * n * n / 2))


def grow_spag(n: int, c: float, seed=None) -> Graph:
    return simplify_pag(grow_pag(n, spag_edges(n, c), seed))


def pag_multigraph_probability(g: Multigraph, n: int, m: int, exact: bool = False):
    """Probability that ``PAG(n, m)`` equals the labelled multigraph ``g``.

    Every fixed ordered, oriented insertion sequence has probability
    ``d_1! ... d_n! / (n (n+1) ... (n+2m-1))``.  The number of distinct such
    sequences is ``m! 2^{m'} / (prod mult! * prod loops!)``.
    """
    if g.n != n or g.num_edges != m:
        raise ValueError(f"multigraph has n={g.n}, m={g.num_edges}; expected n={n}, m={m}")
    mult = g.mult[np.triu_indices(n, 1)]
    deg = g.degrees()
    mprime = int(mult.sum())
    if exact:
        num = math.factorial(m) * 2**mprime
        for d in deg.tolist():
            num *= math.factorial(d)
        den = math.prod(range(n, n + 2 * m))
        for c in mult.tolist() + g.loops.tolist():
            den *= math.factorial(c)
        return Fraction(num, den)
    lg = math.lgamma
    logp = lg(m + 1) + mprime * math.log(2) + sum(lg(d + 1) for d in deg.tolist())
    logp -= sum(lg(c + 1) for c in mult.tolist() + g.loops.tolist())
    logp -= lg(n + 2 * m) - lg(n)
    return math.exp(logp)


# ---------------------------------------------------------------------------
# W-random graphs


def latent_grid(n: int) -> LabeledSample:
    """``S_n = {0, 1/n, ..., (n-1)/n}``."""
    return LabeledSample(np.arange(_check_n(n)) / n)


def _kernel_matrix(s: LabeledSample, w: Kernel) -> np.ndarray:
    if s.dim != w.dim:
        raise ValueError(f"sample dimension {s.dim} does not match kernel dimension {w.dim}")
    x = s.coords()
    if w.dim == 1:
        return w(x[:, None], x[None, :])
    return w(x[:, None, :], x[None, :, :])


def sample_w_random(s: LabeledSample, w: Kernel, seed=None) -> Graph:
    """``G(S, W)``: join ``s_i, s_j`` independently with probability ``W(s_i, s_j)``."""
    if not w.bounded01:
        raise ValueError(f"kernel {w.name} is not a probability kernel")
    p = _kernel_matrix(s, w)
    n = len(s)
    iu = np.triu_indices(n, 1)
    pu = p[iu]
    if ((pu < 0) | (pu > 1) | np.isnan(pu)).any():
        raise ValueError("kernel value outside [0, 1] at a sampled pair")
    rng = as_seed(seed).rng()
    adj = np.zeros((n, n), dtype=bool)
    adj[iu] = rng.random(pu.size) < pu
    return Graph(adj | adj.T)


def weighted_h(s: LabeledSample, w: Kernel) -> StepGraphon:
    """``H(S, W)`` as a step graphon: weight ``W(s_i, s_j)``, zero diagonal."""
    p = _kernel_matrix(s, w).copy()
    np.fill_diagonal(p, 0.0)
    # kernels are symmetric up to float rounding of their formulas
    p = (p + p.T) / 2
    return StepGraphon.uniform(p)


# ---------------------------------------------------------------------------
# growth towards a prescribed limit


def check_monotone(w: Kernel, grid: int = 64, tol: float = 1e-12) -> None:
    """Raise unless ``w`` is nonincreasing in each variable on a grid probe."""
    if w.dim != 1:
        raise ValueError("prescribed growth needs a 1-dimensional kernel")
    x = np.linspace(0.0, 1.0, grid)
    v = w(x[:, None], x[None, :])
    if (np.diff(v, axis=0) > tol).any() or (np.diff(v, axis=1) > tol).any():
        raise ValueError(f"kernel {w.name} is not monotone nonincreasing")


def prescribed_step_probs(w: Kernel, i: int, j: int, n: int) -> np.ndarray:
    """Probabilities the pair ``i < j`` (1-based) is offered at steps ``j..n``.

    Entry 0 is the attachment probability ``W(i/j, 1)`` at ``j``'s birth, the
    rest are the densification probabilities ``p_{t,ij}`` for ``t = j+1..n``.
    """
    if not 1 <= i < j <= n:
        raise ValueError("need 1 <= i < j <= n")
    t = np.arange(j + 1, n + 1, dtype=float)
    return np.concatenate([[float(w(i / j, 1.0))], _densify_prob(w, i, j, t)])


def _densify_prob(w: Kernel, i, j, t):
    now = w(i / t, j / t)
    before = w(i / (t - 1), j / (t - 1))
    den = 1.0 - before
    with np.errstate(invalid="ignore", divide="ignore"):
        p = np.where(den > 0, (now - before) / den, 0.0)
    return np.clip(p, 0.0, 1.0)


def grow_prescribed(w: Kernel, n: int, seed=None) -> Graph:
    """Grow a graph whose pair ``i, j`` is adjacent with probability ``W(i/n, j/n)``.

    ``w`` must be a probability kernel on ``[0,1]``, nonincreasing in each
    variable.  New node ``k`` joins ``j < k`` with probability ``W(j/k, 1)``;
    nonadjacent old pairs are joined with ``p_{k,ij}``.
    """
    n = _check_n(n)
    if not w.bounded01:
        raise ValueError(f"kernel {w.name} is not a probability kernel")
    check_monotone(w)
    rng = as_seed(seed).rng()
    i, j = _pairs_by_younger(n)
    i1, j1 = i + 1.0, j + 1.0
    present = np.zeros(i.size, dtype=bool)
    for k in range(2, n + 1):
        old = (k - 1) * (k - 2) // 2
        _densify(rng, present, old, _densify_prob(w, i1[:old], j1[:old], float(k)))
        attach = w(np.arange(1, k) / k, 1.0)
        present[old : old + k - 1] = rng.random(k - 1) < attach
    return _to_graph(n, i, j, present)


def grow_homogeneous(c: float, n: int, boundary: Callable[[np.ndarray], np.ndarray], seed=None) -> Graph:
    """Growth towards ``W = 1 - U`` with ``U`` homogeneous of degree ``c``.

    ``boundary(x)`` is ``W(x, 1)``.  New node ``k`` joins ``i < k`` with
    probability ``boundary(i/k)``; every nonadjacent pair of older nodes is
    joined with probability ``1 - ((k-1)/k)^c``.
    """
    if c < 0:
        raise ValueError("homogeneity degree must be nonnegative")
    n = _check_n(n)
    rng = as_seed(seed).rng()
    i, j = _pairs_by_younger(n)
    present = np.zeros(i.size, dtype=bool)
    for k in range(2, n + 1):
        old = (k - 1) * (k - 2) // 2
        _densify(rng, present, old, 1.0 - ((k - 1) / k) ** c)
        attach = np.clip(np.asarray(boundary(np.arange(1, k) / k), dtype=float), 0.0, 1.0)
        present[old : old + k - 1] = rng.random(k - 1) < attach
    return _to_graph(n, i, j, present)


# ---------------------------------------------------------------------------
# exact marginals


def edge_prob_oracle(model: str, i: int, j: int, n: int, kernel: Kernel | None = None) -> float:
    """Exact probability that ``i`` and ``j`` are adjacent after ``n`` nodes.

    ``uniform`` takes 0-based labels; ``ranked``, ``prefix`` and
    ``prescribed`` (which needs ``kernel``) take 1-based labels.
    """
    i, j = min(i, j), max(i, j)
    if model == "uniform":
        if not 0 <= i < j < n:
            raise ValueError("uniform attachment uses labels 0..n-1")
        return 1.0 - j / n
    if model in ("ranked", "prefix", "prescribed"):
        if not 1 <= i < j <= n:
            raise ValueError(f"{model} attachment uses labels 1..n")
        if model == "ranked":
            return 1.0 - i * (j - 2) * (j - 1) / (j * (n - 1) * n)
        if model == "prefix":
            return (j - i) / j
        if kernel is None:
            raise ValueError("prescribed model needs the kernel")
        return float(kernel(i / n, j / n))
    raise ValueError(f"unknown model {model!r}")


def edge_prob_matrix(model: str, n: int, kernel: Kernel | None = None) -> np.ndarray:
    """All oracle probabilities as an ``n x n`` matrix in storage (0-based) order."""
    p = np.zeros((n, n))
    off = 0 if model == "uniform" else 1
    for a in range(n):
        for b in range(a + 1, n):
            p[a, b] = p[b, a] = edge_prob_oracle(model, a + off, b + off, n, kernel)
    return p
