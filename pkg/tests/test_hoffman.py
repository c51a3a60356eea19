import numpy as np
import pytest

from oracles import walk_sum_power
from treehom.graph_core import path_graph, path_tree, star_tree
from treehom.hoffman import MatrixError, SymmetricMatrix, hoffman_check, parse_matrix, row_power_sum, walk_sum
from treehom.hom_engine import hom_tree, star_count, weighted_hom_tree
from treehom.order_explorer import image_suite

A2 = SymmetricMatrix([[1, 1], [1, 2]])


class TestWalkSum:
    def test_identity(self):
        for k in range(1, 6):
            assert walk_sum(SymmetricMatrix(np.eye(4)), k) == 4

    def test_two_by_two(self):
        # A1 = (2, 3), A^2 1 = (5, 8), A^3 1 = (13, 21)
        assert walk_sum(A2, 3) == 34
        assert walk_sum_power(A2.entries, 3) == 34

    def test_k2_identity(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            a = rng.random((5, 5))
            m = SymmetricMatrix(a + a.T)
            assert walk_sum(m, 2) == pytest.approx(row_power_sum(m, 2), rel=1e-12)

    def test_against_matrix_power(self):
        rng = np.random.default_rng(1)
        a = rng.random((6, 6))
        m = SymmetricMatrix(a + a.T)
        for k in range(1, 7):
            assert walk_sum(m, k) == pytest.approx(walk_sum_power(m.entries, k), rel=1e-12)

    def test_bad_k(self):
        with pytest.raises(ValueError):
            walk_sum(A2, 0)


class TestRowPowerSum:
    def test_two_by_two(self):
        assert row_power_sum(A2, 3) == 2**3 + 3**3 == 35

    def test_identity(self):
        assert row_power_sum(SymmetricMatrix(np.eye(3)), 5) == 3

    def test_adjacency_is_star_count(self):
        for h in image_suite("all:5"):
            m = SymmetricMatrix.adjacency(h)
            for k in range(1, 6):
                assert round(row_power_sum(m, k)) == star_count(k, h)


class TestCheck:
    def test_two_by_two(self):
        r = hoffman_check(A2, 3)
        assert (r.walk, r.rows) == (34, 35) and r.ok

    def test_identity_equality(self):
        r = hoffman_check(np.eye(5), 4)
        assert r.walk == r.rows == 5 and r.ok

    def test_p2_adjacency(self):
        r = hoffman_check(SymmetricMatrix.adjacency(path_graph(2)), 3)
        assert (round(r.walk), round(r.rows)) == (8, 10)

    def test_adjacency_reproduces_counts(self):
        for h in image_suite("all:5"):
            m = SymmetricMatrix.adjacency(h)
            for k in range(1, 7):
                assert abs(weighted_hom_tree(path_tree(k), m) - hom_tree(path_tree(k), h)) < 1e-6
                assert abs(weighted_hom_tree(star_tree(k), m) - star_count(k, h)) < 1e-6

    def test_zero_matrix(self):
        r = hoffman_check(np.zeros((3, 3)), 2)
        assert r.walk == r.rows == 0 and r.ok


class TestMatrixType:
    def test_symmetrized_within_tolerance(self):
        m = SymmetricMatrix([[0, 1 + 1e-13], [1, 0]])
        assert m.entries[0, 1] == m.entries[1, 0]

    @pytest.mark.parametrize("a", [[[0, 1], [0.5, 0]], [[-1, 0], [0, 1]], [[1, 2]], [[np.nan]]])
    def test_rejects(self, a):
        with pytest.raises(MatrixError):
            SymmetricMatrix(a)

    def test_parse(self):
        m = parse_matrix("# two by two\n2\n1 1\n1 2\n")
        assert np.array_equal(m.entries, [[1, 1], [1, 2]])

    @pytest.mark.parametrize("text", ["", "2\n1 1\n", "2\n1 1\n1\n", "x\n", "2\n1 1\n2 2\n", "1.5\n1\n"])
    def test_parse_errors(self, text):
        with pytest.raises(MatrixError):
            parse_matrix(text)
