"""Graphs, edge lists, and the count statistics.

Builds a few small graphs, loads one from edge-list text, and walks through
the normalized count statistics (edge, triangle, two-star densities and
normalized transitivity) plus the general pattern frequencies.
"""

import io

from netjack import (
    Graph,
    Pattern,
    common_neighbor_count,
    edge_density,
    load_edge_list,
    normalized_transitivity,
    pattern_count_P,
    pattern_count_Q,
    plug_in_rho,
    triangle_density,
    two_star_density,
)

# Edge-list text: one edge per line, '#' comments ignored.  A "# nodes=K"
# header declares isolated high-id nodes that never appear in an edge.
text = """\
# a 5-cycle plus one chord
# nodes=6
0 1
1 2
2 3
3 4
4 0
0 2
"""
g, dropped = load_edge_list(io.StringIO(text))
print(f"loaded {g}: degrees={g.degrees.tolist()}, dropped {dropped} lines")
print(f"common neighbors of (0, 2): {common_neighbor_count(g, 0, 2)}")

# The densities normalize raw counts by their count of possible positions and
# by powers of the sparsity level rho.  With rho = 1 they are plain
# frequencies; on real data one usually plugs in the observed edge density.
rho = plug_in_rho(g)
print(f"\nplug-in rho = {rho:.4f}")
for name, fn in [
    ("edge density", edge_density),
    ("triangle density", triangle_density),
    ("two-star density", two_star_density),
    ("normalized transitivity", normalized_transitivity),
]:
    print(f"  {name:24s} = {fn(g, rho):.4f}")

# Pattern frequencies distinguish containment (Q) from exact induced matches
# (P).  On a complete graph every triple is a triangle, so the induced
# two-star frequency is zero while the containment version is not.
k4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
for pat in (Pattern.two_star(), Pattern.triangle(), Pattern.cycle(4)):
    q = pattern_count_Q(k4, pat, 1.0)
    p = pattern_count_P(k4, pat, 1.0)
    print(f"K4 {pat.name:9s}: Q={q:.3f}  P={p:.3f}  (P <= Q always)")
