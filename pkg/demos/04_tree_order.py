# %% [markdown]
# # The homomorphism order on small trees
#
# T' dominates T when hom(T', H) >= hom(T, H) for every H. A finite suite
# of image graphs can only refute domination, so the diagram below shows
# the relations that survive the suite.

# %%
from treehom.order_explorer import (
    class_max_check,
    dot_export,
    empirical_order,
    enumerate_free_trees,
    filter_by_leaves,
    hasse,
    image_suite,
)

# %%
for k in range(1, 11):
    print(k, len(enumerate_free_trees(k)))

# %%
trees = enumerate_free_trees(6)
for leaves in range(2, 7):
    print(leaves, [ct.code for ct in filter_by_leaves(trees, leaves)])

# %%
suite = image_suite("all:5") + image_suite("random:30,7,0.35", seed=0)
rel = empirical_order(trees, suite)
diagram = hasse(rel)
print(f"{len(diagram.nodes)} classes, {len(diagram.arcs)} arcs, {len(rel.witnesses)} refuted pairs")
print(dot_export(diagram))

# %% Class maxima rise with the leaf count on every image graph.
print("violations:", class_max_check(7, image_suite("all:5")).violations)
