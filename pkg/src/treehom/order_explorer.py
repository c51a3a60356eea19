"""Free-tree enumeration and the empirical homomorphism order on trees.

``t2 >= t1`` is *consistent* on a suite of image graphs when
``hom(t2, h) >= hom(t1, h)`` for every ``h`` in the suite. A finite suite can
only refute a relation, never prove it, so everything here is suite-relative.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product

from .documents import dump_document, graph_doc
from .graph_core import Graph, Tree, as_tree
from .hom_engine import hom_tree

MAX_TREE_K = 12
MAX_EXHAUSTIVE_N = 7
ORDER_SCHEMA = "treehom.order/1"


@dataclass(frozen=True, order=True)
class CanonicalTree:
    code: str
    k: int = field(compare=False)
    leaf_count: int = field(compare=False)
    tree: Tree = field(compare=False, repr=False)


# ---------------------------------------------------------------------------
# canonical codes for free trees


def centroids(t: Tree) -> list[int]:
    n = t.n
    if n == 1:
        return [0]
    order = [0]
    parent = [-1] * n
    parent[0] = 0
    for x in order:
        for y in t.graph.adj[x]:
            if parent[y] == -1:
                parent[y] = x
                order.append(y)
    size = [1] * n
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    best, found = n, []
    for v in range(n):
        heaviest = max([n - size[v]] + [size[y] for y in t.graph.adj[v] if parent[y] == v])
        if heaviest < best:
            best, found = heaviest, [v]
        elif heaviest == best:
            found.append(v)
    return found


def rooted_code(t: Tree, root: int) -> str:
    """Parenthesis code with children sorted; equal iff the rooted trees are isomorphic."""
    adj = t.graph.adj
    order = [root]
    parent = {root: -1}
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    codes: dict[int, list[str]] = {v: [] for v in order}
    for v in reversed(order):
        code = "(" + "".join(sorted(codes[v])) + ")"
        if parent[v] == -1:
            return code
        codes[parent[v]].append(code)
    raise AssertionError("unreachable")


def tree_code(t: Tree) -> str:
    """Canonical code of a free tree: the smallest centroid-rooted code."""
    return min(rooted_code(t, c) for c in centroids(t))


def tree_from_code(code: str) -> Tree:
    """Inverse of :func:`rooted_code`; vertices numbered in preorder."""
    edges = []
    stack: list[int] = []
    n = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], n))
            stack.append(n)
            n += 1
        elif ch == ")":
            stack.pop()
        else:
            raise ValueError(f"bad character {ch!r} in tree code")
    if stack or n == 0:
        raise ValueError("unbalanced tree code")
    return as_tree(Graph(n, frozenset(edges)))


def canonical(t: Tree) -> CanonicalTree:
    code = tree_code(t)
    rep = tree_from_code(code)
    return CanonicalTree(code, rep.k, rep.leaves, rep)


@lru_cache(maxsize=None)
def _trees_with_edges(k: int) -> tuple[CanonicalTree, ...]:
    if k == 0:
        return (canonical(as_tree(Graph(1))),)
    found: dict[str, CanonicalTree] = {}
    for ct in _trees_with_edges(k - 1):
        t = ct.tree
        for v in range(t.n):
            grown = as_tree(Graph(t.n + 1, t.graph.edges | {(v, t.n)}))
            code = tree_code(grown)
            if code not in found:
                found[code] = canonical(grown)
    return tuple(sorted(found.values()))


def enumerate_free_trees(k: int) -> list[CanonicalTree]:
    """All trees with ``k`` edges up to isomorphism, sorted by canonical code."""
    if not 1 <= k <= MAX_TREE_K:
        raise ValueError(f"k must be in [1, {MAX_TREE_K}]")
    return list(_trees_with_edges(k))


def filter_by_leaves(trees: list[CanonicalTree], leaves: int) -> list[CanonicalTree]:
    return [t for t in trees if t.leaf_count == leaves]


# ---------------------------------------------------------------------------
# image graph suites


def _refine(g: Graph) -> list[int]:
    """Colour refinement from degrees; colours are canonical ranks."""
    colors = list(g.degrees)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.adj[v]))) for v in range(g.n)]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def graph_key(g: Graph) -> tuple:
    """Canonical form: minimum sorted edge list over labellings that respect refined colours."""
    colors = _refine(g)
    cells = [[v for v in range(g.n) if colors[v] == c] for c in sorted(set(colors))]
    best = None
    for parts in product(*(permutations(cell) for cell in cells)):
        pos = {}
        for part in parts:
            for v in part:
                pos[v] = len(pos)
        key = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (g.n, tuple(sorted(colors)), best)


def _from_key(key: tuple) -> Graph:
    return Graph(key[0], frozenset(key[2]))


@lru_cache(maxsize=None)
def _connected_graphs(n: int) -> tuple[Graph, ...]:
    # every connected graph has a vertex whose removal keeps it connected
    if n == 1:
        return (Graph(1),)
    keys = set()
    for g in _connected_graphs(n - 1):
        for r in range(1, n):
            for nbrs in combinations(range(n - 1), r):
                h = Graph(n, g.edges | {(v, n - 1) for v in nbrs})
                keys.add(graph_key(h))
    return tuple(_from_key(k) for k in sorted(keys, key=lambda k: (len(k[2]), k)))


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on exactly ``n`` vertices up to isomorphism."""
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise ValueError(f"n must be in [1, {MAX_EXHAUSTIVE_N}]")
    return list(_connected_graphs(n))


def all_graphs(n: int) -> list[Graph]:
    """All graphs (connected or not) on exactly ``n`` vertices up to isomorphism; ``n <= 6``."""
    if not 1 <= n <= 6:
        raise ValueError("n must be in [1, 6]")
    pairs = list(combinations(range(n), 2))
    keys = set()
    for mask in range(1 << len(pairs)):
        g = Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        keys.add(graph_key(g))
    return [_from_key(k) for k in sorted(keys, key=lambda k: (len(k[2]), k))]


def random_graphs(count: int, n: int, p: float, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    return [Graph(n, frozenset(e for e in pairs if rng.random() < p)) for _ in range(count)]


def image_suite(spec: str, seed: int | None = None) -> list[Graph]:
    """``"all:N"`` (connected graphs on at most N vertices) or ``"random:count,n,p"``."""
    kind, _, arg = spec.partition(":")
    if kind == "all":
        n = int(arg)
        if not 1 <= n <= MAX_EXHAUSTIVE_N:
            raise ValueError(f"exhaustive suites need 1 <= N <= {MAX_EXHAUSTIVE_N}")
        return [g for m in range(1, n + 1) for g in _connected_graphs(m)]
    if kind == "random":
        if seed is None:
            raise ValueError("random suites need a seed")
        try:
            count_s, n_s, p_s = arg.split(",")
            count, n, p = int(count_s), int(n_s), float(p_s)
        except ValueError:
            raise ValueError(f"bad random suite spec {spec!r}") from None
        if count < 0 or n < 1 or not 0 <= p <= 1:
            raise ValueError(f"random suite parameters out of range in {spec!r}")
        return random_graphs(count, n, p, seed)
    raise ValueError(f"unknown suite spec {spec!r}")


# ---------------------------------------------------------------------------
# empirical order


@dataclass(frozen=True)
class OrderRelation:
    trees: list[CanonicalTree]
    suite: list[Graph]
    counts: list[list[int]]
    # (a, b) -> first suite index h with hom(a, h) < hom(b, h), refuting a >= b
    witnesses: dict[tuple[int, int], int]

    def consistent(self, a: int, b: int) -> bool:
        """``trees[a] >= trees[b]`` on every graph of the suite."""
        return (a, b) not in self.witnesses

    def dominates(self) -> list[list[int | None]]:
        """Matrix with ``None`` for consistent and the witness index otherwise."""
        m = len(self.trees)
        return [[self.witnesses.get((a, b)) for b in range(m)] for a in range(m)]


def _count_row(args: tuple[Tree, list[Graph]]) -> list[int]:
    t, suite = args
    return [hom_tree(t, h) for h in suite]


def count_matrix(trees: list[CanonicalTree], suite: list[Graph], jobs: int = 1) -> list[list[int]]:
    work = [(ct.tree, suite) for ct in trees]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_count_row, work))
    return [_count_row(w) for w in work]


def empirical_order(trees: list[CanonicalTree], suite: list[Graph], jobs: int = 1) -> OrderRelation:
    if len({t.k for t in trees}) > 1:
        raise ValueError("all trees must have the same number of edges")
    counts = count_matrix(trees, suite, jobs)
    witnesses = {}
    for a, b in product(range(len(trees)), repeat=2):
        for j in range(len(suite)):
            if counts[a][j] < counts[b][j]:
                witnesses[(a, b)] = j
                break
    return OrderRelation(list(trees), list(suite), counts, witnesses)


@dataclass(frozen=True)
class ClassMaxReport:
    k: int
    # maxima[j][l] = max hom(t, suite[j]) over trees with l leaves
    maxima: list[dict[int, int]]
    violations: list[tuple[int, int, int, int]]  # (suite index, l, max at l, max at l + 1)

    @property
    def ok(self) -> bool:
        return not self.violations


def class_max_check(k: int, suite: list[Graph]) -> ClassMaxReport:
    """Per image graph, the class maximum is non-decreasing in the leaf count."""
    trees = enumerate_free_trees(k)
    by_leaves: dict[int, list[Tree]] = {}
    for ct in trees:
        by_leaves.setdefault(ct.leaf_count, []).append(ct.tree)
    levels = sorted(by_leaves)
    maxima, violations = [], []
    for j, h in enumerate(suite):
        mx = {l: max(hom_tree(t, h) for t in by_leaves[l]) for l in levels}
        maxima.append(mx)
        for l in levels:
            if l + 1 in mx and mx[l] > mx[l + 1]:
                violations.append((j, l, mx[l], mx[l + 1]))
    return ClassMaxReport(k, maxima, violations)


# ---------------------------------------------------------------------------
# Hasse diagram


@dataclass(frozen=True)
class HasseDiagram:
    nodes: list[list[CanonicalTree]]  # mutually consistent trees collapse into one node
    arcs: list[tuple[int, int]]  # (lower, upper)
    suite_size: int = 0

    def reachable(self) -> set[tuple[int, int]]:
        succ: dict[int, list[int]] = {i: [] for i in range(len(self.nodes))}
        for a, b in self.arcs:
            succ[a].append(b)
        out = set()
        for s in succ:
            stack, seen = [s], set()
            while stack:
                x = stack.pop()
                for y in succ[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out |= {(s, y) for y in seen}
        return out


def hasse(rel: OrderRelation) -> HasseDiagram:
    m = len(rel.trees)
    cls = [-1] * m
    groups: list[list[int]] = []
    for a in range(m):
        if cls[a] != -1:
            continue
        cls[a] = len(groups)
        group = [a]
        for b in range(a + 1, m):
            if cls[b] == -1 and rel.consistent(a, b) and rel.consistent(b, a):
                cls[b] = cls[a]
                group.append(b)
        groups.append(group)
    reps = [g[0] for g in groups]
    c = len(groups)
    below = {(x, y) for x in range(c) for y in range(c) if x != y and rel.consistent(reps[y], reps[x])}
    arcs = sorted(
        (x, y) for (x, y) in below if not any((x, z) in below and (z, y) in below for z in range(c))
    )
    nodes = [[rel.trees[i] for i in g] for g in groups]
    return HasseDiagram(nodes, arcs, len(rel.suite))


def dot_export(d: HasseDiagram) -> str:
    lines = ["digraph hasse {"]
    if d.nodes:
        lines.append(f'  label="never refuted on a suite of {d.suite_size} image graphs";')
        lines.append("  rankdir=BT;")
    for i, node in enumerate(d.nodes):
        label = "\\n".join(f"{ct.code} l={ct.leaf_count}" for ct in node)
        lines.append(f'  n{i} [label="{label}"];')
    for a, b in d.arcs:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def relation_to_text(rel: OrderRelation) -> str:
    matrix = [
        [">=" if w is None else f"witness:H{w}" for w in row] for row in rel.dominates()
    ]
    payload = {
        "schema": ORDER_SCHEMA,
        "note": "entries are relative to the finite suite; '>=' means never refuted",
        "trees": [{"code": ct.code, "leaves": ct.leaf_count} for ct in rel.trees],
        "suite": {f"H{j}": graph_doc(h) for j, h in enumerate(rel.suite)},
        "counts": [[str(c) for c in row] for row in rel.counts],
        "matrix": matrix,
    }
    return dump_document(payload)

