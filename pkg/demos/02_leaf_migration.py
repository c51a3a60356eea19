# %% [markdown]
# # Moving leaves towards the star
#
# Take two leaves b1, b2 of the skeleton (the tree with its leaves removed).
# Prune the leaves hanging at them, compare the degree moments of where b1
# and b2 land, and hang every pruned leaf at the heavier side. The leaf
# count goes up by one and the homomorphism count never goes down.

# %%
from treehom.graph_core import Graph, as_tree, path_graph
from treehom.hom_engine import star_count
from treehom.sidorenko import certificate_to_text, check_certificate, certificate_to_dict, transform_chain, verify_theorem

spider = as_tree(Graph(8, frozenset({(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (0, 6), (6, 7)})))
H = path_graph(4)

# %%
cert = transform_chain(spider, H)
for i, s in enumerate(cert.steps):
    print(
        f"step {i}: leaves {s.before.leaves} -> {s.after.leaves}, "
        f"hom {s.hom_before} -> {s.hom_after}, "
        f"Hoelder bound {s.holder_bound:.2f}, swapped={s.swapped}"
    )
print("star count:", star_count(spider.k, H))

# %% The first step reverses the pair: the second skeleton leaf has the larger moment.
s = cert.steps[0]
print("moment sums after the swap:", s.moment_sums)

# %% Certificates are plain text and can be re-checked from scratch.
text = certificate_to_text(cert)
print(text.splitlines()[0], f"({len(text)} bytes)")
print("problems:", check_certificate(certificate_to_dict(cert)))

# %% Any connected source: drop edges down to a spanning tree, then migrate.
report = verify_theorem(Graph(5, frozenset({(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)})), H)
print(report.hom_source, "<=", report.hom_spanning_tree, "<=", report.star, report.holds)
