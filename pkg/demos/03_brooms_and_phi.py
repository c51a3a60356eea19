# %% [markdown]
# # Brooms and the exponential moment profile
#
# A broom B(d1, d2) is an edge with d1 leaves at one end and d2 at the
# other. Its count is the pruned count times phi(d1 / (d1 + d2)), where phi
# is symmetric about 1/2 and convex, so unbalanced brooms win.

# %%
from treehom.graph_core import path_graph, star_graph
from treehom.sidorenko import broom, broom_chain_check, phi_profile

H = star_graph(3)

# %%
for k in (5, 6, 7):
    report = broom_chain_check(k, H)
    chain = " <= ".join(f"B({d1},{d2})={c}" for d1, d2, c in report.entries)
    print(f"k={k}: {chain} <= star={report.star}")

# %%
prof = phi_profile(broom(7, 5, 1).tree, 0, 1, H, [i / 12 for i in range(13)])
for p, v in zip(prof.grid, prof.values):
    print(f"{p:6.3f}  {v:12.4f}  " + "#" * int(40 * v / max(prof.values)))
print("minimum at", prof.argmin, "symmetry defect", prof.symmetry_defect)

# %% On the path P2 every broom count is 2 * 2^d1 + 2 * 2^d2.
print(broom_chain_check(5, path_graph(2)).entries)
