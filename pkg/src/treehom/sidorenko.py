"""Leaf migration: the step-by-step transformation of a tree into the star.

A step picks two leaves ``b1, b2`` of the skeleton, prunes the leaves hanging
at them, compares the two degree moments of the pinned images and re-hangs
all pruned leaves at the heavier side. The result has one more leaf and at
least as many homomorphisms into the image graph. Every step records the
exact integer identities that justify this, so a chain to the star is a
checkable certificate.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graph_core import (
    Graph,
    GraphError,
    Tree,
    as_tree,
    induced_subgraph,
    is_connected,
    skeleton_info,
    spanning_tree,
    star_tree,
)
from .documents import dump_document, graph_doc, graph_from_doc
from .hom_engine import hom_bruteforce, hom_count, hom_tree, pair_distribution, pinned_pair, pinned_single, star_count

STRATEGIES = ("first-pair", "best-pair")
CERT_SCHEMA = "treehom.certificate/1"
DEFAULT_RTOL = 1e-9


def default_rtol() -> float:
    return float(os.environ.get("TREEHOM_RTOL", DEFAULT_RTOL))


@dataclass(frozen=True)
class Broom:
    k: int
    d1: int
    d2: int
    tree: Tree


@dataclass(frozen=True)
class Pruned:
    """``T(b1, b2)``: the tree with the leaves at ``b1`` and ``b2`` removed."""

    tree: Tree
    vertices: tuple[int, ...]  # pruned id -> original id
    b1: int  # pruned ids of the pins
    b2: int
    d1: int
    d2: int


@dataclass(frozen=True)
class TransformStep:
    before: Tree
    after: Tree
    b1: int
    b2: int
    d1: int
    d2: int
    swapped: bool
    hom_before: int
    hom_after: int
    base: int
    moment_sums: tuple[int, int] | None
    holder_bound: float | None
    amgm_bound: float | None
    forkoff_value: int
    decomposition: tuple[int, int]
    pruned_vertices: tuple[int, ...]
    relabel: tuple[int, ...]

    @property
    def decomposition_ok(self) -> bool:
        return self.decomposition[0] == self.decomposition[1]

    @property
    def forkoff_ok(self) -> bool:
        return self.forkoff_value == self.hom_after

    def sandwich_ok(self, rtol: float = DEFAULT_RTOL) -> bool:
        if self.holder_bound is None:
            return self.base == 0 and self.hom_before == 0
        return (
            self.hom_before <= self.holder_bound * (1 + rtol)
            and self.holder_bound <= self.amgm_bound * (1 + rtol)
        )


@dataclass(frozen=True)
class TransformCertificate:
    image: Graph
    steps: list[TransformStep] = field(hash=False)
    start: Tree
    end: Tree

    @property
    def counts(self) -> list[int]:
        if not self.steps:
            return [hom_tree(self.start, self.image)]
        return [self.steps[0].hom_before] + [s.hom_after for s in self.steps]


@dataclass(frozen=True)
class PhiProfile:
    grid: list[float]
    values: list[float]
    d1: int
    d2: int
    base: int
    symmetry_defect: float
    argmin: float
    min_second_difference: float
    max_at_endpoint: bool

    def convex(self, rtol: float = DEFAULT_RTOL) -> bool:
        return self.min_second_difference >= -rtol * max(self.values)

    def symmetric(self, rtol: float = DEFAULT_RTOL) -> bool:
        return self.symmetry_defect <= rtol * max(self.values)


# ---------------------------------------------------------------------------
# pruning and moments


def prune(t: Tree, b1: int, b2: int) -> Pruned:
    """Remove the leaves adjacent to ``b1`` and ``b2``; both must be skeleton leaves."""
    info = skeleton_info(t)
    if b1 == b2 or b1 not in info.skeleton_leaves or b2 not in info.skeleton_leaves:
        raise GraphError(f"({b1}, {b2}) are not two distinct skeleton leaves")
    adj = t.graph.adj
    drop = {w for b in (b1, b2) for w in adj[b] if w in t.leaf_set}
    g, vertices = induced_subgraph(t.graph, (v for v in range(t.n) if v not in drop))
    index = {v: i for i, v in enumerate(vertices)}
    return Pruned(
        as_tree(g), vertices, index[b1], index[b2], info.attachment[b1], info.attachment[b2]
    )


def _moment_sums(pr: Pruned, h: Graph) -> tuple[int, int, dict]:
    """Integer moments ``base * M1`` and ``base * M2`` from the pinned pair table."""
    deg = h.degrees
    D = pr.d1 + pr.d2
    table = pinned_pair(pr.tree, pr.b1, pr.b2, h).counts
    s1 = sum(c * deg[u] ** D for (u, _), c in table.items())
    s2 = sum(c * deg[v] ** D for (_, v), c in table.items())
    return s1, s2, table


def _move_leaves(t: Tree, loser: int, winner: int) -> Tree:
    """Re-hang the leaves of ``loser`` at ``winner``; vertex ids are unchanged."""
    moved = {w for w in t.graph.adj[loser] if w in t.leaf_set}
    edges = {e for e in t.graph.edges if e[0] not in moved and e[1] not in moved}
    edges |= {(min(winner, w), max(winner, w)) for w in moved}
    return as_tree(Graph(t.n, frozenset(edges)))


def verify_decomposition(t: Tree, b1: int, b2: int, h: Graph) -> tuple[int, int]:
    """Both sides of the count decomposition over the images of ``b1, b2``.

    Left: ``hom(t, h)``. Right: sum over ``(u, v)`` of the pinned counts of the
    pruned tree times ``deg(u)^d1 * deg(v)^d2``. Equal as integers.
    """
    pr = prune(t, b1, b2)
    deg = h.degrees
    table = pinned_pair(pr.tree, pr.b1, pr.b2, h).counts
    rhs = sum(c * deg[u] ** pr.d1 * deg[v] ** pr.d2 for (u, v), c in table.items())
    return hom_tree(t, h), rhs


def _holder(s1: int, s2: int, d1: int, d2: int) -> float:
    D = d1 + d2
    if s1 == 0 or s2 == 0:
        return 0.0
    return math.exp(d1 / D * math.log(s1) + d2 / D * math.log(s2))


def holder_bound(t: Tree, b1: int, b2: int, h: Graph) -> float:
    """``hom(T(b1,b2)) * M1^(d1/D) * M2^(d2/D)``; never below ``hom(t, h)``."""
    pr = prune(t, b1, b2)
    s1, s2, table = _moment_sums(pr, h)
    if not any(table.values()):
        raise ZeroDivisionError("pruned tree has no homomorphisms")
    # base * M1^a * M2^b with a + b = 1 collapses to s1^a * s2^b
    return _holder(s1, s2, pr.d1, pr.d2)


def amgm_bound(t: Tree, b1: int, b2: int, h: Graph) -> float:
    """``hom(T(b1,b2)) * max(M1, M2)``: the count of the better migration."""
    pr = prune(t, b1, b2)
    s1, s2, table = _moment_sums(pr, h)
    if not any(table.values()):
        raise ZeroDivisionError("pruned tree has no homomorphisms")
    return float(max(s1, s2))


# ---------------------------------------------------------------------------
# steps and chains


def _step_for_pair(t: Tree, h: Graph, b1: int, b2: int, hom_before: int) -> TransformStep:
    pr = prune(t, b1, b2)
    deg = h.degrees
    D = pr.d1 + pr.d2
    s1, s2, table = _moment_sums(pr, h)
    base = sum(table.values())
    rhs = sum(c * deg[u] ** pr.d1 * deg[v] ** pr.d2 for (u, v), c in table.items())

    swapped = base > 0 and s2 > s1
    if swapped:
        b1, b2 = b2, b1
        d1, d2, pb1 = pr.d2, pr.d1, pr.b2
        s1, s2 = s2, s1
    else:
        d1, d2, pb1 = pr.d1, pr.d2, pr.b1

    after = _move_leaves(t, b2, b1)
    hom_after = hom_tree(after, h)
    single = pinned_single(pr.tree, pb1, h).counts
    forkoff = sum(c * deg[u] ** D for u, c in single.items())

    if base > 0:
        moments = (s1, s2)
        hb = _holder(s1, s2, d1, d2)
        ab = float(s1)
    else:
        moments = hb = ab = None
    return TransformStep(
        before=t,
        after=after,
        b1=b1,
        b2=b2,
        d1=d1,
        d2=d2,
        swapped=swapped,
        hom_before=hom_before,
        hom_after=hom_after,
        base=base,
        moment_sums=moments,
        holder_bound=hb,
        amgm_bound=ab,
        forkoff_value=forkoff,
        decomposition=(hom_before, rhs),
        pruned_vertices=pr.vertices,
        relabel=tuple(range(t.n)),
    )


def transform_step(t: Tree, h: Graph, strategy: str = "first-pair") -> TransformStep:
    if t.is_star:
        raise GraphError("tree is already a star")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    leaves = skeleton_info(t).skeleton_leaves
    hom_before = hom_tree(t, h)
    if strategy == "first-pair":
        return _step_for_pair(t, h, leaves[0], leaves[1], hom_before)
    best = None
    for b1, b2 in combinations(leaves, 2):
        step = _step_for_pair(t, h, b1, b2, hom_before)
        if best is None or step.hom_after > best.hom_after:
            best = step
    return best


def transform_chain(t: Tree, h: Graph, strategy: str = "first-pair") -> TransformCertificate:
    steps = []
    cur = t
    while not cur.is_star:
        step = transform_step(cur, h, strategy)
        steps.append(step)
        cur = step.after
    return TransformCertificate(h, steps, t, cur)


def reduce_to_tree(g: Graph, h: Graph, guard: int | None = None) -> tuple[Tree, int, int]:
    """Spanning tree of ``g`` with ``hom(g, h)`` (brute force) and ``hom(tree, h)``."""
    tree = spanning_tree(g)
    return tree, hom_bruteforce(g, h, guard), hom_tree(tree, h)


@dataclass(frozen=True)
class TheoremReport:
    k: int
    hom_source: int
    hom_spanning_tree: int
    star: int
    certificate: TransformCertificate

    @property
    def holds(self) -> bool:
        return self.hom_source <= self.hom_spanning_tree <= self.star

    @property
    def equality(self) -> bool:
        return self.hom_source == self.star


def verify_theorem(g: Graph, h: Graph, strategy: str = "first-pair", guard: int | None = None) -> TheoremReport:
    if g.n < 2 or not is_connected(g):
        raise GraphError("source must be connected with at least one edge")
    k = g.n - 1
    tree = spanning_tree(g)
    hom_g = hom_count(g, h, guard)
    cert = transform_chain(tree, h, strategy)
    return TheoremReport(k, hom_g, hom_tree(tree, h), star_count(k, h), cert)


# ---------------------------------------------------------------------------
# brooms and the exponential-moment profile


def broom(k: int, d1: int, d2: int) -> Broom:
    """Edge ``0-1`` with ``d1`` leaves at vertex 0 and ``d2`` at vertex 1."""
    if d1 < 1 or d2 < 1 or d1 + d2 != k - 1:
        raise ValueError(f"need d1, d2 >= 1 and d1 + d2 = k - 1, got k={k}, d1={d1}, d2={d2}")
    edges = [(0, 1)] + [(0, 2 + i) for i in range(d1)] + [(1, 2 + d1 + i) for i in range(d2)]
    return Broom(k, d1, d2, as_tree(Graph(k + 1, frozenset(edges))))


def corollary_tree(k: int) -> Tree:
    """The star on ``k - 1`` edges with one leaf extended (the star itself for ``k = 2``)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if k == 2:
        return star_tree(2)
    return broom(k, k - 2, 1).tree


def corollary_chain(t: Tree, h: Graph) -> tuple[int, int, int]:
    """``(hom(t), hom(corollary tree), star count)``; non-decreasing for every non-star ``t``."""
    if t.is_star:
        raise GraphError("the chain compares non-star trees with the extended star")
    return hom_tree(t, h), hom_tree(corollary_tree(t.k), h), star_count(t.k, h)


def phi_profile(
    t: Tree, b1: int, b2: int, h: Graph, grid: Sequence[float] | None = None
) -> PhiProfile:
    """Evaluate ``phi(p) = E[exp(p g(U) + (1-p) g(V))]`` with ``g = D log deg``.

    Only defined for brooms (skeleton ``K2``); ``(U, V)`` are the images of
    the two skeleton vertices under a uniform homomorphism of ``K2``.
    """
    info = skeleton_info(t)
    if info.skeleton.n != 2:
        raise GraphError("phi profile needs a tree whose skeleton is K2")
    pr = prune(t, b1, b2)
    dist = pair_distribution(pr.tree, pr.b1, pr.b2, h)
    D = pr.d1 + pr.d2
    if grid is None:
        grid = [i / 100 for i in range(101)]
    grid = [float(p) for p in grid]
    deg = h.degrees
    terms = [(float(q), D * math.log(deg[u]), D * math.log(deg[v])) for (u, v), q in sorted(dist.p.items())]

    def phi(p: float) -> float:
        return math.fsum(q * math.exp(p * gu + (1 - p) * gv) for q, gu, gv in terms)

    values = [phi(p) for p in grid]
    defect = max(abs(phi(p) - phi(1 - p)) for p in grid)
    i_min = min(range(len(values)), key=values.__getitem__)
    second = [values[i - 1] - 2 * values[i] + values[i + 1] for i in range(1, len(values) - 1)]
    top = max(values)
    tol = DEFAULT_RTOL * top
    return PhiProfile(
        grid=grid,
        values=values,
        d1=pr.d1,
        d2=pr.d2,
        base=dist.total,
        symmetry_defect=defect,
        argmin=grid[i_min],
        min_second_difference=min(second) if second else 0.0,
        max_at_endpoint=max(values[0], values[-1]) >= top - tol,
    )


@dataclass(frozen=True)
class BroomChainReport:
    k: int
    entries: list[tuple[int, int, int]]  # (d1, d2, hom), d1 - d2 increasing
    star: int

    @property
    def monotone(self) -> bool:
        counts = [c for _, _, c in self.entries]
        return all(a <= b for a, b in zip(counts, counts[1:]))

    @property
    def below_star(self) -> bool:
        return self.entries[-1][2] <= self.star

    @property
    def ok(self) -> bool:
        return self.monotone and self.below_star


def broom_chain_check(k: int, h: Graph) -> BroomChainReport:
    if k < 3:
        raise ValueError("brooms need k >= 3")
    entries = []
    for d2 in range((k - 1) // 2, 0, -1):
        d1 = k - 1 - d2
        entries.append((d1, d2, hom_tree(broom(k, d1, d2).tree, h)))
    return BroomChainReport(k, entries, star_count(k, h))


# ---------------------------------------------------------------------------
# certificate documents


def _float_doc(x: float | None) -> str | None:
    return None if x is None else repr(x)


def certificate_to_dict(cert: TransformCertificate) -> dict:
    steps = []
    for s in cert.steps:
        steps.append(
            {
                "before": graph_doc(s.before.graph),
                "after": graph_doc(s.after.graph),
                "b1": s.b1,
                "b2": s.b2,
                "d1": s.d1,
                "d2": s.d2,
                "swapped": s.swapped,
                "leaves_before": s.before.leaves,
                "leaves_after": s.after.leaves,
                "hom_before": str(s.hom_before),
                "hom_after": str(s.hom_after),
                "pruned_count": str(s.base),
                "moment_sums": None if s.moment_sums is None else [str(x) for x in s.moment_sums],
                "holder_bound": _float_doc(s.holder_bound),
                "amgm_bound": _float_doc(s.amgm_bound),
                "forkoff_value": str(s.forkoff_value),
                "decomposition": [str(x) for x in s.decomposition],
                "pruned_vertices": list(s.pruned_vertices),
                "relabel": list(s.relabel),
            }
        )
    return {
        "schema": CERT_SCHEMA,
        "image": graph_doc(cert.image),
        "k": cert.start.k,
        "start": graph_doc(cert.start.graph),
        "end": graph_doc(cert.end.graph),
        "star_count": str(star_count(cert.start.k, cert.image)) if cert.start.k else "1",
        "steps": steps,
    }


def certificate_to_text(cert: TransformCertificate) -> str:
    return dump_document(certificate_to_dict(cert))


def check_certificate(doc: dict, rtol: float | None = None) -> list[str]:
    """Re-verify a certificate document from scratch; returns the list of problems."""
    rtol = default_rtol() if rtol is None else rtol
    problems = []
    if doc.get("schema") != CERT_SCHEMA:
        return [f"unknown schema {doc.get('schema')!r}"]
    try:
        h = graph_from_doc(doc["image"])
        start = as_tree(graph_from_doc(doc["start"]))
        end = as_tree(graph_from_doc(doc["end"]))
    except (GraphError, KeyError, TypeError, ValueError) as exc:
        return [f"malformed certificate: {exc}"]
    k = start.k
    steps = doc.get("steps", [])
    if not end.is_star:
        problems.append("end tree is not a star")
    if end.k != k:
        problems.append("end tree has a different edge count")
    expected_len = 0 if start.is_star else k - start.leaves
    if len(steps) != expected_len:
        problems.append(f"chain has {len(steps)} steps, expected {expected_len}")
    if k >= 1 and int(doc["star_count"]) != star_count(k, h):
        problems.append("recorded star count is wrong")

    prev_graph = start.graph
    prev_count = hom_tree(start, h)
    for i, s in enumerate(steps):
        tag = f"step {i}"
        try:
            before = as_tree(graph_from_doc(s["before"]))
            after = as_tree(graph_from_doc(s["after"]))
        except (GraphError, KeyError) as exc:
            problems.append(f"{tag}: malformed tree: {exc}")
            break
        if before.graph != prev_graph:
            problems.append(f"{tag}: does not continue the previous tree")
        hb, ha = hom_tree(before, h), hom_tree(after, h)
        if int(s["hom_before"]) != hb:
            problems.append(f"{tag}: recorded hom_before {s['hom_before']} != {hb}")
        if int(s["hom_after"]) != ha:
            problems.append(f"{tag}: recorded hom_after {s['hom_after']} != {ha}")
        if int(s["hom_after"]) < int(s["hom_before"]):
            problems.append(f"{tag}: count decreases {s['hom_before']} -> {s['hom_after']}")
        if hb < prev_count:
            problems.append(f"{tag}: chain count decreases")
        if after.leaves != before.leaves + 1 or after.k != before.k:
            problems.append(f"{tag}: leaf count must grow by one at fixed edge count")
        lhs, rhs = verify_decomposition(before, s["b1"], s["b2"], h)
        if lhs != rhs or [str(lhs), str(rhs)] != s["decomposition"]:
            problems.append(f"{tag}: decomposition identity fails")
        if int(s["forkoff_value"]) != ha:
            problems.append(f"{tag}: forkoff value differs from the after count")
        if s["holder_bound"] is not None:
            holder, amgm = float(s["holder_bound"]), float(s["amgm_bound"])
            if not (hb <= holder * (1 + rtol) and holder <= amgm * (1 + rtol)):
                problems.append(f"{tag}: bound sandwich fails")
        prev_graph, prev_count = after.graph, ha
    if prev_graph != end.graph:
        problems.append("last step does not reach the end tree")
    return problems
