"""Exact homomorphism counting.

Unweighted counts are Python integers (arbitrary precision) throughout; only
:func:`weighted_hom_tree` uses floating point.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from .graph_core import Graph, GraphError, Tree, as_tree, connected_components, induced_subgraph, is_tree

DEFAULT_GUARD = 10**8


class GuardExceeded(RuntimeError):
    """Brute-force enumeration would exceed the configured number of candidate maps."""


def default_guard() -> int:
    return int(os.environ.get("TREEHOM_GUARD", DEFAULT_GUARD))


@dataclass(frozen=True)
class PinnedTable:
    counts: dict
    pins: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class PairDistribution:
    p: dict[tuple[int, int], Fraction]
    p1: dict[int, Fraction]
    p2: dict[int, Fraction]
    support: frozenset[tuple[int, int]]
    total: int


# ---------------------------------------------------------------------------
# brute force oracle


def hom_bruteforce(g: Graph, h: Graph, guard: int | None = None) -> int:
    """Count all maps V(g) -> V(h) that send every edge of g onto an edge of h.

    Enumerates every candidate map explicitly (vectorised in blocks) and
    tests every edge; no structure of g is exploited.
    """
    guard = default_guard() if guard is None else guard
    n, N = g.n, h.n
    if n == 0:
        return 1
    if N == 0:
        return 0
    if N**n > guard:
        raise GuardExceeded(f"{N}^{n} candidate maps exceed guard {guard}")
    A = np.zeros((N, N), dtype=bool)
    for u, v in h.edges:
        A[u, v] = A[v, u] = True
    edges = g.sorted_edges()
    # maps are enumerated as base-N digits; the low `inner` vertices vary fastest
    inner = min(n, max(1, int(np.log(2**20) / np.log(max(N, 2)))))
    block = np.indices((N,) * inner).reshape(inner, -1)
    total = 0
    for hi in range(N ** (n - inner)):
        fixed = []
        x = hi
        for _ in range(n - inner):
            fixed.append(x % N)
            x //= N
        ok = np.ones(block.shape[1], dtype=bool)
        for u, v in edges:
            fu = block[u] if u < inner else fixed[u - inner]
            fv = block[v] if v < inner else fixed[v - inner]
            ok &= A[fu, fv]
        total += int(np.count_nonzero(ok))
    return total


# ---------------------------------------------------------------------------
# tree dynamic program


def _rooted_order(t: Tree, root: int) -> tuple[list[int], list[int]]:
    """BFS order from ``root`` and the parent array."""
    adj = t.graph.adj
    parent = [-1] * t.n
    order = [root]
    parent[root] = root
    for x in order:
        for y in adj[x]:
            if parent[y] == -1:
                parent[y] = x
                order.append(y)
    parent[root] = -1
    return order, parent


def _root_table(t: Tree, h: Graph, root: int, clamp: dict[int, int] | None = None) -> list[int]:
    """``out[x]`` = number of homs of ``t`` with ``root -> x``.

    ``clamp`` maps tree vertices to a forced image.
    """
    N = h.n
    hadj = h.adj
    order, parent = _rooted_order(t, root)
    msg: list[list[int] | None] = [None] * t.n
    for v in reversed(order):
        m = msg[v]
        if m is None:
            m = [1] * N
        if clamp and v in clamp:
            fixed = clamp[v]
            m = [m[x] if x == fixed else 0 for x in range(N)]
        p = parent[v]
        if p == -1:
            return m
        up = [sum(m[y] for y in hadj[x]) for x in range(N)]
        if msg[p] is None:
            msg[p] = up
        else:
            msg[p] = [a * b for a, b in zip(msg[p], up)]
    raise AssertionError("unreachable")


def hom_tree(t: Tree, h: Graph) -> int:
    """Exact count by message passing rooted at vertex 0."""
    if h.n == 0:
        return 0
    return sum(_root_table(t, h, 0))


def pinned_single(t: Tree, b: int, h: Graph) -> PinnedTable:
    if not 0 <= b < t.n:
        raise GraphError(f"pin {b} not a vertex of the tree")
    table = _root_table(t, h, b) if h.n else []
    return PinnedTable({u: c for u, c in enumerate(table)}, (b,))


def pinned_pair(t: Tree, b1: int, b2: int, h: Graph) -> PinnedTable:
    """``counts[(u, v)]`` = homs with ``b1 -> u`` and ``b2 -> v``.

    Runs one DP rooted at ``b1`` per image of ``b2``: O(|V(t)|·|E(h)|·|V(h)|).
    """
    if b1 == b2 or not (0 <= b1 < t.n and 0 <= b2 < t.n):
        raise GraphError(f"invalid pins ({b1}, {b2})")
    counts = {}
    for v in range(h.n):
        col = _root_table(t, h, b1, clamp={b2: v})
        for u, c in enumerate(col):
            counts[(u, v)] = c
    return PinnedTable(counts, (b1, b2))


def pair_distribution(t: Tree, b1: int, b2: int, h: Graph) -> PairDistribution:
    table = pinned_pair(t, b1, b2, h)
    total = table.total()
    if total == 0:
        raise ZeroDivisionError("no homomorphisms: pair distribution undefined")
    p = {key: Fraction(c, total) for key, c in table.counts.items() if c}
    p1 = {u: Fraction(0) for u in range(h.n)}
    p2 = {u: Fraction(0) for u in range(h.n)}
    for (u, v), q in p.items():
        p1[u] += q
        p2[v] += q
    return PairDistribution(p, p1, p2, frozenset(p), total)


def star_count(k: int, h: Graph) -> int:
    if k < 1:
        raise ValueError("k must be positive")
    return sum(d**k for d in h.degrees)


def hom_count(g: Graph, h: Graph, guard: int | None = None) -> int:
    """Count via the tree DP when every component of ``g`` is a tree, else brute force."""
    if is_tree(g):
        return hom_tree(as_tree(g), h)
    comps = connected_components(g)
    if len(comps) > 1:
        subs = [induced_subgraph(g, c)[0] for c in comps]
        if all(is_tree(s) for s in subs):
            return prod(hom_tree(as_tree(s), h) for s in subs)
    return hom_bruteforce(g, h, guard)


# ---------------------------------------------------------------------------
# weighted


def _weight_matrix(a) -> np.ndarray:
    A = np.asarray(a, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("weight matrix must be square")
    if (A < 0).any():
        raise ValueError("weight matrix has negative entries")
    if not np.allclose(A, A.T, rtol=0, atol=1e-12):
        raise ValueError("weight matrix is not symmetric")
    return (A + A.T) / 2


def weighted_hom_tree(t: Tree, a) -> float:
    """Sum over all maps of the product of ``a[f(u), f(v)]`` over tree edges."""
    A = _weight_matrix(a)
    N = A.shape[0]
    order, parent = _rooted_order(t, 0)
    msg: list[np.ndarray | None] = [None] * t.n
    for v in reversed(order):
        m = msg[v] if msg[v] is not None else np.ones(N)
        p = parent[v]
        if p == -1:
            return float(m.sum())
        up = A @ m
        msg[p] = up if msg[p] is None else msg[p] * up
    raise AssertionError("unreachable")
