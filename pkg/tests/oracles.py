"""Independent reference implementations used only by the tests.

None of these share code paths with the library's counting or canonical
forms: maps and isomorphisms are enumerated directly with itertools.
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np

from treehom.graph_core import Graph


def hom_maps(g: Graph, h: Graph):
    """Yield every homomorphism g -> h as a tuple of images."""
    hedges = {(u, v) for u, v in h.edges} | {(v, u) for u, v in h.edges}
    for f in product(range(h.n), repeat=g.n):
        if all((f[u], f[v]) in hedges for u, v in g.edges):
            yield f


def hom_naive(g: Graph, h: Graph) -> int:
    return sum(1 for _ in hom_maps(g, h))


def pinned_naive(g: Graph, h: Graph, pins: tuple[int, ...]) -> dict:
    out: dict = {}
    for f in hom_maps(g, h):
        key = tuple(f[p] for p in pins)
        key = key[0] if len(key) == 1 else key
        out[key] = out.get(key, 0) + 1
    return out


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking search over vertex bijections."""
    if g1.n != g2.n or g1.m != g2.m or sorted(g1.degrees) != sorted(g2.degrees):
        return False
    n = g1.n
    e2 = {(u, v) for u, v in g2.edges} | {(v, u) for u, v in g2.edges}
    img = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for x in range(n):
            if used[x] or g1.degrees[i] != g2.degrees[x]:
                continue
            if all(((x, img[j]) in e2) == g1.has_edge(i, j) for j in range(i)):
                img[i], used[x] = x, True
                if extend(i + 1):
                    return True
                img[i], used[x] = -1, False
        return False

    return extend(0)


def isomorphic_permutations(g1: Graph, g2: Graph) -> bool:
    """Plain n! enumeration; only for very small graphs."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    target = g2.edges
    for perm in permutations(range(g1.n)):
        if {tuple(sorted((perm[u], perm[v]))) for u, v in g1.edges} == target:
            return True
    return False


def labeled_trees(n: int):
    """Every tree on {0..n-1} where vertex i > 0 hangs below some j < i."""
    for parents in product(*(range(i) for i in range(1, n))):
        yield Graph(n, frozenset((p, i + 1) for i, p in enumerate(parents)))


def dedup_iso(graphs) -> list[Graph]:
    reps: list[Graph] = []
    for g in graphs:
        if not any(isomorphic(g, r) for r in reps):
            reps.append(g)
    return reps


def walk_sum_power(a: np.ndarray, k: int) -> float:
    return float(np.linalg.matrix_power(np.asarray(a, dtype=float), k).sum())


def weighted_naive(g: Graph, a: np.ndarray) -> float:
    a = np.asarray(a, dtype=float)
    total = 0.0
    for f in product(range(a.shape[0]), repeat=g.n):
        w = 1.0
        for u, v in g.edges:
            w *= a[f[u], f[v]]
        total += w
    return total


def relabel(g: Graph, perm) -> Graph:
    return Graph(g.n, frozenset(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges))


def center_code(n: int, edges) -> tuple:
    """Canonical form of a free tree via its centre (leaf stripping), tuple-encoded.

    Deliberately different from the library's centroid/parenthesis code.
    """
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    centre = layer

    def enc(v, parent):
        return tuple(sorted(enc(w, v) for w in adj[v] if w != parent))

    if len(centre) == 1:
        return (1, enc(centre[0], -1))
    a, b = centre
    pair = sorted([enc(a, b), enc(b, a)])
    return (2, tuple(pair))


def free_tree_count_oracle(k: int) -> int:
    """Count unlabeled trees with k edges by generating parent arrays and deduplicating."""
    n = k + 1
    seen = set()
    for parents in product(*(range(i) for i in range(1, n))):
        seen.add(center_code(n, [(p, i + 1) for i, p in enumerate(parents)]))
    return len(seen)
