"""Simple graphs, multigraphs and latent-coordinate samples.

Graphs are stored as dense numpy adjacency matrices; the models in this
package are dense (Θ(n²) edges), so nothing is gained from sparse storage.
Node labels are 0-based birth order.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on nodes ``0..n-1``."""

    adj: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if a.diagonal().any():
            raise ValueError("simple graphs have no loops")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(~np.eye(n, dtype=bool))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        a = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            if i == j:
                raise ValueError("simple graphs have no loops")
            a[i, j] = a[j, i] = True
        return cls(a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def num_edges(self) -> int:
        return int(np.triu(self.adj, 1).sum())

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adj, 1))
        return list(zip(i.tolist(), j.tolist()))

    def relabel(self, order) -> "Graph":
        """Graph whose node ``r`` is node ``order[r]`` of this graph."""
        order = np.asarray(order)
        return Graph(self.adj[np.ix_(order, order)])

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.adj, other.adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Undirected multigraph with loops.

    ``mult[i, j]`` is the number of parallel ``ij`` edges (zero diagonal) and
    ``loops[i]`` the number of loops at ``i``.  A loop adds 2 to the degree.
    """

    mult: np.ndarray
    loops: np.ndarray = field(default=None)

    def __post_init__(self):
        m = np.asarray(self.mult, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("multiplicity matrix must be square")
        if not np.array_equal(m, m.T) or (m < 0).any():
            raise ValueError("multiplicities must be symmetric and nonnegative")
        if m.diagonal().any():
            raise ValueError("loops go in `loops`, not on the diagonal")
        lp = np.zeros(m.shape[0], dtype=np.int64) if self.loops is None else np.asarray(self.loops, dtype=np.int64)
        if lp.shape != (m.shape[0],) or (lp < 0).any():
            raise ValueError("loops must be a nonnegative vector of length n")
        m, lp = m.copy(), lp.copy()
        m.setflags(write=False)
        lp.setflags(write=False)
        object.__setattr__(self, "mult", m)
        object.__setattr__(self, "loops", lp)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Multigraph":
        m = np.zeros((n, n), dtype=np.int64)
        lp = np.zeros(n, dtype=np.int64)
        for i, j in edges:
            if i == j:
                lp[i] += 1
            else:
                m[i, j] += 1
                m[j, i] += 1
        return cls(m, lp)

    @property
    def n(self) -> int:
        return self.mult.shape[0]

    @property
    def num_edges(self) -> int:
        return int(np.triu(self.mult, 1).sum() + self.loops.sum())

    @property
    def num_nonloop_edges(self) -> int:
        return int(np.triu(self.mult, 1).sum())

    def degrees(self) -> np.ndarray:
        return self.mult.sum(axis=1) + 2 * self.loops

    def weight_matrix(self) -> np.ndarray:
        """Multiplicities with loop counts written on the diagonal."""
        w = self.mult.copy()
        w[np.diag_indices_from(w)] = self.loops
        return w

    def relabel(self, order) -> "Multigraph":
        order = np.asarray(order)
        return Multigraph(self.mult[np.ix_(order, order)], self.loops[order])

    def key(self) -> tuple:
        """Hashable canonical form (for tallying outcomes)."""
        return (self.n, tuple(self.loops.tolist()), tuple(self.mult[np.triu_indices(self.n, 1)].tolist()))

    def __eq__(self, other):
        return isinstance(other, Multigraph) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.num_edges}, loops={int(self.loops.sum())})"


@dataclass(frozen=True, eq=False)
class LabeledSample:
    """Latent coordinates of the nodes of a graph, one row per node."""

    points: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim == 1:
            p = p[:, None]
        if p.ndim != 2:
            raise ValueError("points must be an (n, d) array")
        if ((p < 0) | (p > 1)).any():
            raise ValueError("latent coordinates must lie in [0, 1]")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "points", p)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def coords(self) -> np.ndarray:
        """Points in the shape kernels expect: ``(n,)`` for d=1, ``(n, 2)`` for d=2."""
        return self.points[:, 0] if self.dim == 1 else self.points


# ---------------------------------------------------------------------------
# edge-list text format
#
#   n m [multi]
#   i j mult        (one line per pair, lexicographic; loops as "i i count")


def dumps(g: Graph | Multigraph) -> str:
    out = io.StringIO()
    if isinstance(g, Multigraph):
        out.write(f"{g.n} {g.num_edges} multi\n")
        w = g.weight_matrix()
        i, j = np.nonzero(np.triu(w))
        for a, b in zip(i.tolist(), j.tolist()):
            out.write(f"{a} {b} {int(w[a, b])}\n")
    else:
        out.write(f"{g.n} {g.num_edges}\n")
        for a, b in g.edges():
            out.write(f"{a} {b} 1\n")
    return out.getvalue()


def loads(text: str) -> Graph | Multigraph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty edge-list")
    head = lines[0]
    if len(head) not in (2, 3) or (len(head) == 3 and head[2] != "multi"):
        raise ValueError(f"bad header line: {' '.join(head)!r}")
    n, m = int(head[0]), int(head[1])
    multi = len(head) == 3
    w = np.zeros((n, n), dtype=np.int64)
    for row in lines[1:]:
        if len(row) not in (2, 3):
            raise ValueError(f"bad edge line: {' '.join(row)!r}")
        a, b = int(row[0]), int(row[1])
        c = int(row[2]) if len(row) == 3 else 1
        if not (0 <= a < n and 0 <= b < n) or c < 0:
            raise ValueError(f"bad edge line: {' '.join(row)!r}")
        if a == b:
            w[a, a] += c
        else:
            w[a, b] += c
            w[b, a] += c
    if multi:
        loops = w.diagonal().copy()
        np.fill_diagonal(w, 0)
        g = Multigraph(w, loops)
    else:
        if w.diagonal().any() or (w > 1).any():
            raise ValueError("simple graph file contains loops or parallel edges")
        g = Graph(w > 0)
    if g.num_edges != m:
        raise ValueError(f"header says {m} edges, body has {g.num_edges}")
    return g


def save(g: Graph | Multigraph, path) -> None:
    with open(os.fspath(path), "w", encoding="ascii") as fh:
        fh.write(dumps(g))


def load(path) -> Graph | Multigraph:
    with open(os.fspath(path), encoding="ascii") as fh:
        return loads(fh.read())


# ---------------------------------------------------------------------------
# small named graphs

_PETERSEN = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
             (5, 7), (5, 8), (6, 8), (6, 9), (7, 9)]


def petersen() -> Graph:
    """Petersen graph, labelled as in its usual adjacency-matrix drawing."""
    return Graph.from_edges(10, _PETERSEN)


def half_graph(n: int) -> Graph:
    """``H_{n,n}``: nodes ``1..n`` then ``1'..n'``; ``i ~ j'`` iff ``i <= j``."""
    i = np.arange(n)
    upper = i[:, None] <= i[None, :]
    adj = np.zeros((2 * n, 2 * n), dtype=bool)
    adj[:n, n:] = upper
    return Graph(adj | adj.T)


def chessboard(n: int) -> Graph:
    """Complete bipartite graph between even and odd labels (a chessboard picture)."""
    i = np.arange(n)
    return Graph((i[:, None] + i[None, :]) % 2 == 1)


def parity_order(n: int) -> np.ndarray:
    """Even labels first, then odd ones."""
    i = np.arange(n)
    return np.concatenate([i[::2], i[1::2]])


def named_graph(spec: str) -> Graph:
    """``petersen``, ``half-graph:<n>``, ``chessboard:<n>`` or ``chessboard-grouped:<n>``.

    The grouped chessboard lists the even-labelled nodes first.
    """
    name, _, arg = spec.partition(":")
    if name == "petersen" and not arg:
        return petersen()
    if name == "half-graph" and arg:
        return half_graph(int(arg))
    if name == "chessboard" and arg:
        return chessboard(int(arg))
    if name == "chessboard-grouped" and arg:
        return chessboard(int(arg)).relabel(parity_order(int(arg)))
    raise ValueError(f"unknown named graph {spec!r}")
