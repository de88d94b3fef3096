"""Brute-force reference computations, independent of the library's engines."""
from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction

import numpy as np


def pag_process_leaves(n: int, m: int):
    """Walk every leaf of the PAG sequence-extension tree.

    Yields ``(probability, edge_sequence)`` where the edge sequence lists the
    ordered pairs ``(v_{n+2k-1}, v_{n+2k})``.
    """
    def rec(seq, prob):
        if len(seq) == n + 2 * m:
            tail = seq[n:]
            yield prob, tuple((tail[2 * k], tail[2 * k + 1]) for k in range(m))
            return
        p = prob / len(seq)
        for pos in range(len(seq)):
            yield from rec(seq + [seq[pos]], p)

    yield from rec(list(range(n)), Fraction(1))


def pag_law(n: int, m: int):
    """Exact distribution of PAG(n, m) as {canonical key: Fraction} plus the
    per-multigraph tally of insertion sequences."""
    law = defaultdict(Fraction)
    sequences = defaultdict(lambda: defaultdict(Fraction))
    for prob, edges in pag_process_leaves(n, m):
        key = canonical(n, edges)
        law[key] += prob
        sequences[key][edges] += prob
    return dict(law), sequences


def canonical(n, edges):
    mult = np.zeros((n, n), dtype=int)
    loops = [0] * n
    for a, b in edges:
        if a == b:
            loops[a] += 1
        else:
            mult[a, b] += 1
            mult[b, a] += 1
    return (n, tuple(loops), tuple(mult[np.triu_indices(n, 1)].tolist()))


def brute_hom(pattern_edges, k, adj):
    n = adj.shape[0]
    return sum(all(adj[phi[a], phi[b]] for a, b in pattern_edges) for phi in itertools.product(range(n), repeat=k))


def brute_inj(pattern_edges, k, n, target_edges):
    """Count (phi, psi): phi injective on nodes, psi injective pattern-edge ->
    target-edge, incidence preserved.  Edges are lists of endpoint pairs,
    repeated for multiplicity."""
    total = 0
    l = len(pattern_edges)
    for phi in itertools.permutations(range(n), k):
        for psi in itertools.permutations(range(len(target_edges)), l):
            ok = True
            for (a, b), e in zip(pattern_edges, psi):
                u, v = target_edges[e]
                if {phi[a], phi[b]} != {u, v} or (phi[a] == phi[b]) != (u == v):
                    ok = False
                    break
            total += ok
    return total


def brute_cut_norm(values, measures):
    """Scan all 4^k block pairs (S, T)."""
    k = len(measures)
    w = np.asarray(values) * np.outer(measures, measures)
    best = 0.0
    for s in itertools.product([0, 1], repeat=k):
        for t in itertools.product([0, 1], repeat=k):
            best = max(best, abs(float(np.array(s) @ w @ np.array(t))))
    return best
