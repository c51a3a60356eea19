# %% [markdown]
# # Counting homomorphisms
#
# A homomorphism from G to H maps vertices of G to vertices of H so that
# every edge lands on an edge. For trees the count is a product of
# neighbour sums, passed from the leaves to a root.

# %%
from treehom.graph_core import complete_graph, cycle_graph, path_graph, path_tree, star_tree
from treehom.hom_engine import hom_bruteforce, hom_count, hom_tree, pinned_pair, pinned_single, star_count

P2 = path_graph(2)  # 0 - 1 - 2, degrees 1, 2, 1

# %% The tree DP agrees with enumerating all 3^4 maps.
print("hom(P3, P2) brute force:", hom_bruteforce(path_graph(3), P2))
print("hom(P3, P2) tree DP:    ", hom_tree(path_tree(3), P2))

# %% Stars have a closed form: every leaf picks a neighbour of the centre's image.
print("hom(S3, P2) =", hom_tree(star_tree(3), P2), "= 1^3 + 2^3 + 1^3 =", star_count(3, P2))

# %% On a d-regular image every k-edge tree has n * d^k homomorphisms.
C4 = cycle_graph(4)
print("hom(P5, C4) =", hom_tree(path_tree(5), C4), " 4 * 2^5 =", 4 * 2**5)

# %% Pinning one or two tree vertices splits the count by their images.
print("pinned at an end of P3:", pinned_single(path_tree(3), 0, P2).counts)
table = pinned_pair(path_tree(2), 0, 2, P2).counts
print("pinned at both ends of P2:", {k: v for k, v in table.items() if v})

# %% Non-trees fall back to brute force; an odd cycle has no maps into a bipartite graph.
print("hom(C5, P2) =", hom_count(cycle_graph(5), P2))
print("hom(C5, K3) =", hom_count(cycle_graph(5), complete_graph(3)))
