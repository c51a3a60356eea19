"""Exit criteria. Each test appends one PASS/FAIL line to the terminal summary."""

import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import free_tree_count_oracle, isomorphic, labeled_trees, walk_sum_power
from treehom.graph_core import Graph, as_tree, path_graph, path_tree, serialize_graph, star_graph, star_tree
from treehom.hoffman import SymmetricMatrix, hoffman_check
from treehom.hom_engine import hom_bruteforce, hom_tree, star_count
from treehom.order_explorer import all_graphs, class_max_check, enumerate_free_trees, image_suite, tree_code
from treehom.sidorenko import (
    broom,
    broom_chain_check,
    certificate_to_dict,
    check_certificate,
    corollary_tree,
    phi_profile,
    transform_chain,
)

RTOL = 1e-9
THEOREM_KS = range(2, 9)


@contextmanager
def criterion(label):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  {label} ({time.perf_counter() - start:.1f}s)")
        raise
    ACCEPTANCE_LINES.append(f"PASS  {label} ({time.perf_counter() - start:.1f}s)")


@pytest.fixture(scope="module")
def suite5():
    return image_suite("all:5")


@pytest.fixture(scope="module")
def grid(suite5):
    return [(ct.tree, h) for k in THEOREM_KS for ct in enumerate_free_trees(k) for h in suite5]


def random_tree(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[rng.randrange(i)], perm[i]))) for i in range(1, n)}
    return as_tree(Graph(n, frozenset(edges)))


def test_c01_oracle_equivalence():
    with criterion("1 hom_tree == hom_bruteforce on exhaustive grid + 200 random pairs"):
        start = time.perf_counter()
        trees = [as_tree(Graph(1))] + [ct.tree for k in range(1, 6) for ct in enumerate_free_trees(k)]
        images = [h for n in range(1, 5) for h in all_graphs(n)]
        assert len(trees) == 14 and len(images) == 18
        mismatches = [(t, h) for t in trees for h in images if hom_tree(t, h) != hom_bruteforce(t.graph, h)]
        rng = random.Random(20240101)
        for _ in range(200):
            t = random_tree(rng, rng.randint(2, 8))
            hn = rng.randint(1, 6)
            pairs = [(u, v) for u in range(hn) for v in range(u + 1, hn)]
            h = Graph(hn, frozenset(e for e in pairs if rng.random() < 0.5))
            if hom_tree(t, h) != hom_bruteforce(t.graph, h):
                mismatches.append((t, h))
        assert mismatches == []
        assert time.perf_counter() - start < 60


def test_c02_theorem_exhaustive(grid):
    with criterion("2 hom(T,H) <= sum deg^k for k=2..8, all trees x connected H on <=5 vertices"):
        start = time.perf_counter()
        assert len(grid) == sum(len(enumerate_free_trees(k)) for k in THEOREM_KS) * 31
        violations = [(t, h) for t, h in grid if hom_tree(t, h) > star_count(t.k, h)]
        assert violations == []
        assert time.perf_counter() - start < 300


def test_c03_certificate_soundness(grid):
    with criterion("3 certificate chains: length, monotone counts, +1 leaves, exact identities, sandwich"):
        for t, h in grid:
            cert = transform_chain(t, h)
            assert len(cert.steps) == t.k - t.leaves
            counts = cert.counts
            assert all(a <= b for a, b in zip(counts, counts[1:]))
            assert counts[-1] == star_count(t.k, h)
            for s in cert.steps:
                assert s.after.leaves == s.before.leaves + 1 and s.after.k == s.before.k
                assert s.decomposition_ok
                assert s.forkoff_value == s.hom_after
                if s.base:
                    assert s.hom_before <= s.holder_bound * (1 + RTOL)
                    assert s.holder_bound <= s.amgm_bound * (1 + RTOL)
                else:
                    assert s.hom_before == 0
            assert check_certificate(certificate_to_dict(cert), RTOL) == []


def test_c04_corollary(grid, suite5):
    with criterion("4 T <= B(k-2,1) <= S_k, broom chain monotone (k<=10), phi symmetric and convex"):
        for t, h in grid:
            if not t.is_star:
                assert hom_tree(t, h) <= hom_tree(corollary_tree(t.k), h) <= star_count(t.k, h)
        for k in range(3, 11):
            for h in suite5:
                report = broom_chain_check(k, h)
                assert report.monotone and report.below_star
                assert report.entries[-1][:2] == (k - 2, 1)
        for k in range(3, 9):
            for d2 in range(1, (k - 1) // 2 + 1):
                b = broom(k, k - 1 - d2, d2).tree
                for h in suite5:
                    if not h.m:
                        continue
                    prof = phi_profile(b, 0, 1, h)
                    assert prof.symmetry_defect <= 1e-9
                    assert prof.symmetric(RTOL) and prof.convex(RTOL) and prof.max_at_endpoint
                    assert min(prof.values) >= prof.values[50] * (1 - RTOL)


def test_c05_class_maxima(suite5):
    with criterion("5 class maxima non-decreasing in leaf count for k<=8"):
        for k in range(1, 9):
            assert class_max_check(k, suite5).violations == []


def test_c06_regular_images():
    with criterion("6 regular H: hom = n d^k exactly"):
        regular = [h for h in image_suite("all:6") if h.is_regular()]
        assert len(regular) >= 9
        for k in range(1, 9):
            for ct in enumerate_free_trees(k):
                for h in regular:
                    assert hom_tree(ct.tree, h) == h.n * h.degrees[0] ** k


def test_c07_hoffman():
    with criterion("7 Hoffman on 200 random matrices, k<=6, weighted cross-checks; 34 <= 35"):
        rng = np.random.default_rng(7)
        for _ in range(200):
            n = int(rng.integers(1, 9))
            b = rng.random((n, n))
            a = SymmetricMatrix((b + b.T) / 2)
            for k in range(1, 7):
                r = hoffman_check(a, k, RTOL)
                assert r.holds and r.cross_checks
                assert r.walk == pytest.approx(walk_sum_power(a.entries, k), rel=RTOL)
        spot = hoffman_check(SymmetricMatrix([[1, 1], [1, 2]]), 3)
        assert (spot.walk, spot.rows, spot.holds) == (34, 35, True)


def test_c08_enumeration():
    with criterion("8 free-tree counts k=1..9 vs labelled oracle; codes agree with isomorphism k<=7"):
        for k in range(1, 10):
            assert len(enumerate_free_trees(k)) == free_tree_count_oracle(k)
        for k in range(1, 8):
            trees = enumerate_free_trees(k)
            for i, a in enumerate(trees):
                for b in trees[i + 1:]:
                    assert not isomorphic(a.tree.graph, b.tree.graph)
            reps = {}
            for g in labeled_trees(k + 1):
                code = tree_code(as_tree(g))
                if code in reps:
                    assert isomorphic(g, reps[code])
                else:
                    reps[code] = g
            assert sorted(reps) == [ct.code for ct in trees]


def test_c09_spot_values():
    with criterion("9 spot values 8, 10, and 16 <= 20 <= 34"):
        P2 = path_graph(2)
        assert hom_bruteforce(path_graph(3), P2) == hom_tree(path_tree(3), P2) == 8
        assert hom_bruteforce(star_graph(3), P2) == hom_tree(star_tree(3), P2) == 10
        r = broom_chain_check(5, P2)
        assert [c for _, _, c in r.entries] + [r.star] == [16, 20, 34]
        assert hom_bruteforce(broom(5, 2, 2).tree.graph, P2) == 16
        assert hom_bruteforce(broom(5, 3, 1).tree.graph, P2) == 20
        assert hom_bruteforce(star_graph(5), P2) == 34


def _cli(args, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    return subprocess.run([sys.executable, "-m", "treehom", *args], capture_output=True, env=env)


def test_c10_cli_determinism(tmp_path):
    with criterion("10 CLI byte-identical structured output across runs; planted violation exits 1"):
        g = tmp_path / "g.txt"
        g.write_text(serialize_graph(Graph(6, frozenset({(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (0, 4)}))))
        t = tmp_path / "t.txt"
        t.write_text(serialize_graph(as_tree(Graph(7, frozenset({(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (0, 6)}))).graph))
        h = tmp_path / "h.txt"
        h.write_text(serialize_graph(Graph(5, frozenset({(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)}))))
        a = tmp_path / "a.txt"
        a.write_text("3\n0.5 1 0\n1 0 0.25\n0 0.25 2\n")
        commands = [
            ["count", "--source", str(g), "--image", str(h)],
            ["verify", "--source", str(g), "--image", str(h)],
            ["transform", "--tree", str(t), "--image", str(h), "--strategy", "best-pair"],
            ["trees", "--k", "7"],
            ["order", "--k", "6", "--suite", "random:15,6,0.4", "--seed", "3", "--jobs", "2"],
            ["brooms", "--k", "7", "--image", str(h)],
            ["hoffman", "--matrix", str(a), "--k", "5"],
        ]
        for cmd in commands:
            runs = [_cli(cmd + ["--format", "text"], seed) for seed in (1, 2)]
            assert [r.returncode for r in runs] == [0, 0], runs[0].stderr
            assert runs[0].stdout == runs[1].stdout
            assert runs[0].stdout.startswith(b"# treehom.")
        dots = []
        for seed in (1, 2):
            out = tmp_path / f"h{seed}.dot"
            assert _cli(["order", "--k", "6", "--suite", "all:4", "--dot", str(out)], seed).returncode == 0
            dots.append(out.read_bytes())
        assert dots[0] == dots[1]

        cert = tmp_path / "c.cert"
        assert _cli(["verify", "--source", str(g), "--image", str(h), "--certify", str(cert)], 1).returncode == 0
        assert _cli(["check", "--cert", str(cert)], 1).returncode == 0
        text = cert.read_text()
        before = text.split('"hom_after": "', 1)[1].split('"', 1)[0]
        cert.write_text(text.replace(f'"hom_after": "{before}"', '"hom_after": "0"', 1))
        planted = _cli(["check", "--cert", str(cert)], 1)
        assert planted.returncode == 1 and b"VIOLATION" in planted.stdout
