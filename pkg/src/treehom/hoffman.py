"""Walk sums versus row-sum powers for nonnegative symmetric matrices.

For symmetric ``A >= 0`` the total weight of length-``k`` walks,
``1' A^k 1``, never exceeds ``sum_i (row_i)^k``. Both sides are weighted
homomorphism counts (of the path and of the star), which is how they are
cross-checked here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph_core import Graph, path_tree, star_tree
from .hom_engine import weighted_hom_tree

SYMMETRY_TOL = 1e-12
DEFAULT_RTOL = 1e-9


class MatrixError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Nonnegative symmetric matrix. Strictly positive entries are not required."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise MatrixError(f"matrix must be square, got shape {a.shape}")
        if not np.isfinite(a).all():
            raise MatrixError("matrix has non-finite entries")
        if (a < 0).any():
            raise MatrixError("matrix has negative entries")
        if np.abs(a - a.T).max(initial=0.0) > SYMMETRY_TOL:
            raise MatrixError("matrix is not symmetric")
        a = (a + a.T) / 2
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    @classmethod
    def adjacency(cls, g: Graph) -> SymmetricMatrix:
        a = np.zeros((g.n, g.n))
        for u, v in g.edges:
            a[u, v] = a[v, u] = 1.0
        return cls(a)


def parse_matrix(text: str) -> SymmetricMatrix:
    """First line ``n``, then ``n`` rows of ``n`` numbers; ``#`` lines ignored."""
    rows = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [float(x) for x in line.split()]
        except ValueError:
            raise MatrixError(f"non-numeric entry at line {lineno}") from None
        if n is None:
            if len(nums) != 1 or nums[0] != int(nums[0]) or nums[0] < 1:
                raise MatrixError(f"malformed dimension header at line {lineno}")
            n = int(nums[0])
            continue
        if len(nums) != n:
            raise MatrixError(f"expected {n} entries at line {lineno}, got {len(nums)}")
        rows.append(nums)
    if n is None:
        raise MatrixError("missing dimension header")
    if len(rows) != n:
        raise MatrixError(f"expected {n} rows, got {len(rows)}")
    return SymmetricMatrix(np.array(rows))


def walk_sum(a: SymmetricMatrix, k: int) -> float:
    """``1' A^k 1`` by ``k`` matrix-vector products."""
    if k < 1:
        raise ValueError("k must be positive")
    A = np.asarray(a)
    x = np.ones(A.shape[0])
    for _ in range(k):
        x = A @ x
    return float(x.sum())


def row_power_sum(a: SymmetricMatrix, k: int) -> float:
    if k < 1:
        raise ValueError("k must be positive")
    return float((np.asarray(a).sum(axis=1) ** k).sum())


@dataclass(frozen=True)
class HoffmanReport:
    k: int
    walk: float
    rows: float
    weighted_path: float
    weighted_star: float
    rtol: float

    @property
    def holds(self) -> bool:
        return self.walk <= self.rows * (1 + self.rtol)

    @property
    def cross_checks(self) -> bool:
        return _close(self.walk, self.weighted_path, self.rtol) and _close(
            self.rows, self.weighted_star, self.rtol
        )

    @property
    def ok(self) -> bool:
        return self.holds and self.cross_checks


def _close(x: float, y: float, rtol: float) -> bool:
    return abs(x - y) <= rtol * max(abs(x), abs(y))


def hoffman_check(a: SymmetricMatrix, k: int, rtol: float = DEFAULT_RTOL) -> HoffmanReport:
    if not isinstance(a, SymmetricMatrix):
        a = SymmetricMatrix(a)
    return HoffmanReport(
        k=k,
        walk=walk_sum(a, k),
        rows=row_power_sum(a, k),
        weighted_path=weighted_hom_tree(path_tree(k), a),
        weighted_star=weighted_hom_tree(star_tree(k), a),
        rtol=rtol,
    )
