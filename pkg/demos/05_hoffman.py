# %% [markdown]
# # Walk sums against row-sum powers
#
# For a nonnegative symmetric matrix A, the total weight of length-k walks
# 1' A^k 1 is the weighted homomorphism count of the k-edge path, and
# sum_i (row sum_i)^k is that of the k-edge star.

# %%
import numpy as np

from treehom.graph_core import path_tree, star_tree
from treehom.hoffman import SymmetricMatrix, hoffman_check
from treehom.hom_engine import weighted_hom_tree

A = SymmetricMatrix([[1, 1], [1, 2]])
r = hoffman_check(A, 3)
print(f"{r.walk:g} <= {r.rows:g}")

# %%
rng = np.random.default_rng(1)
B = rng.random((6, 6))
A = SymmetricMatrix((B + B.T) / 2)
for k in range(1, 7):
    r = hoffman_check(A, k)
    print(f"k={k}: walk {r.walk:10.4f}  rows {r.rows:10.4f}  ratio {r.walk / r.rows:.4f}")

# %% The two sides are weighted counts of the path and the star.
print(weighted_hom_tree(path_tree(4), A), weighted_hom_tree(star_tree(4), A))
