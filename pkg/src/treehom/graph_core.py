"""Graph and tree data model, validation, skeletons and edge surgery.

Vertices are dense 0-indexed integers. Edges are stored as sorted pairs
``(u, v)`` with ``u < v``; all objects are immutable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


class GraphError(ValueError):
    """Invalid graph input or violated precondition."""


class GraphFormatError(GraphError):
    """Malformed graph file; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"{message} at line {line}" if line is not None else message)


class NotATreeError(GraphError):
    """Raised by :func:`as_tree`; ``witness`` is an extra edge or an unreachable vertex."""

    def __init__(self, message: str, witness):
        self.witness = witness
        super().__init__(message)


Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        normed = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} has an endpoint outside [0, {self.n})")
            normed.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(normed))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Graph:
        """Build a graph, rejecting duplicate edges (``Graph(...)`` silently merges them)."""
        seen: set[Edge] = set()
        for u, v in edges:
            e = _norm(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class Tree:
    graph: Graph
    k: int
    leaf_set: frozenset[int]
    is_star: bool

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def leaves(self) -> int:
        return len(self.leaf_set)

    def __repr__(self) -> str:
        return f"Tree(k={self.k}, edges={self.graph.sorted_edges()})"


@dataclass(frozen=True)
class SkeletonInfo:
    """Skeleton of a tree with at least 3 vertices.

    ``skeleton`` is densely relabelled; ``vertices[i]`` is the original id of
    skeleton vertex ``i``. ``attachment`` and ``skeleton_leaves`` use original ids.
    """

    skeleton: Tree
    vertices: tuple[int, ...]
    attachment: dict[int, int] = field(hash=False)
    skeleton_leaves: list[int] = field(hash=False)


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` edge-list format. ``#`` lines are comments."""
    header = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError("non-integer token", lineno) from None
        if len(nums) != 2:
            raise GraphFormatError(f"expected 2 integers, got {len(nums)}", lineno)
        if header is None:
            n, m = nums
            if n < 0 or m < 0:
                raise GraphFormatError("malformed header", lineno)
            header = lineno
            continue
        u, v = nums
        if len(edges) >= m:
            raise GraphFormatError(f"more than {m} edges", lineno)
        if u == v:
            raise GraphFormatError("loop", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint out of range [0, {n})", lineno)
        e = _norm(u, v)
        if e in seen:
            raise GraphFormatError("duplicate edge", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatError("missing header")
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, frozenset(edges))


def serialize_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structure


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [], deque([s])
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph relabelled densely in ascending id order; returns (graph, old ids)."""
    keep = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(keep)}
    edges = frozenset(
        _norm(index[u], index[v]) for u, v in g.edges if u in index and v in index
    )
    return Graph(len(keep), edges), keep


def as_tree(g: Graph) -> Tree:
    if g.n == 0:
        raise NotATreeError("empty graph is not a tree", None)
    # BFS; the first edge closing a cycle or the first unreached vertex is the witness
    parent = [-1] * g.n
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y == parent[x]:
                continue
            if seen[y]:
                raise NotATreeError(f"cycle through edge {_norm(x, y)}", _norm(x, y))
            seen[y] = True
            parent[y] = x
            queue.append(y)
    if not all(seen):
        v = seen.index(False)
        raise NotATreeError(f"vertex {v} unreachable from 0", v)
    deg = g.degrees
    leaf_set = frozenset(v for v in range(g.n) if deg[v] == 1)
    is_star = g.n <= 2 or max(deg) == g.n - 1
    return Tree(g, g.n - 1, leaf_set, is_star)


def is_tree(g: Graph) -> bool:
    try:
        as_tree(g)
    except NotATreeError:
        return False
    return True


def skeleton_info(t: Tree) -> SkeletonInfo:
    if t.n < 3:
        raise GraphError("skeleton needs a tree with at least 3 vertices")
    g = t.graph
    inner = [v for v in range(t.n) if v not in t.leaf_set]
    sk_graph, vertices = induced_subgraph(g, inner)
    skeleton = as_tree(sk_graph)
    attachment = {
        v: sum(1 for w in g.adj[v] if w in t.leaf_set) for v in vertices
    }
    if sk_graph.n == 1:
        sk_leaves = [vertices[0]]
    else:
        sk_leaves = sorted(vertices[i] for i in skeleton.leaf_set)
    return SkeletonInfo(skeleton, vertices, attachment, sk_leaves)


def spanning_tree(g: Graph) -> Tree:
    """BFS spanning tree from vertex 0, neighbours visited in ascending order."""
    if g.n == 0:
        raise GraphError("empty graph")
    seen = [False] * g.n
    seen[0] = True
    edges = []
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if not seen[y]:
                seen[y] = True
                edges.append(_norm(x, y))
                queue.append(y)
    if not all(seen):
        raise GraphError("graph is disconnected")
    return as_tree(Graph(g.n, frozenset(edges)))


def remove_edge(g: Graph, e: Iterable[int]) -> Graph:
    u, v = e
    key = _norm(u, v)
    if key not in g.edges:
        raise GraphError(f"edge {key} not present")
    return Graph(g.n, g.edges - {key})


# ---------------------------------------------------------------------------
# named graphs


def path_graph(k: int) -> Graph:
    """Path with ``k`` edges (``k + 1`` vertices)."""
    return Graph(k + 1, frozenset((i, i + 1) for i in range(k)))


def star_graph(k: int) -> Graph:
    """Star with centre 0 and ``k`` leaves."""
    return Graph(k + 1, frozenset((0, i) for i in range(1, k + 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, frozenset(_norm(i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_tree(k: int) -> Tree:
    return as_tree(path_graph(k))


def star_tree(k: int) -> Tree:
    return as_tree(star_graph(k))
