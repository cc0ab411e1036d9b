"""Tour of the centrality family on the FreightWorks map.

Which components hold the structure together? Degree counts raw
connectedness, closeness measures how few steps a component needs to reach
the rest, betweenness finds the bridges, and PageRank/eigenvector weigh
connections by the importance of the neighborhood.

Run 01_build_and_validate.py first to produce demos/data/freightworks.json.
"""

from pathlib import Path

from archgraph.analytics import (
    DistanceMode,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    degree_histogram,
    edge_betweenness,
    eigenvector_centrality,
    pagerank,
)
from archgraph.io import load
from archgraph.model import build_graph, symmetrized

model = load(Path(__file__).parent / "data" / "freightworks.json")
g = build_graph(model)


def top(scores, k=5):
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
    return ", ".join(f"{node} ({value:.3f})" for node, value in ranked)


print("degree (incident relation count):")
deg = degree_centrality(g)
print("  " + top(deg.scores))

hist = degree_histogram(deg)
print(f"\ndegree histogram: {hist.counts}")
print(f"balance: {hist.classification} "
      f"(mean {hist.mean_degree:.2f} of max {hist.max_possible_degree:.0f})")
print("  a left-concentrated map would hint at loose structure, a")
print("  right-concentrated one at too many dependencies")

print("\ncloseness (inverse distance to everything reachable, strong ties = short):")
print("  " + top(closeness_centrality(g, DistanceMode.INVERSE_WEIGHT).scores))

print("\nbetweenness (how often a component bridges shortest paths):")
print("  " + top(betweenness_centrality(g, DistanceMode.INVERSE_WEIGHT).scores))

print("\nbusiest business steps (edge betweenness):")
eb = edge_betweenness(g, DistanceMode.INVERSE_WEIGHT).scores
for (src, dst), value in sorted(eb.items(), key=lambda kv: -kv[1])[:5]:
    print(f"  {src} -> {dst}: {value:.2f}")

print("\npagerank (damped walk on the weighted graph):")
print("  " + top(pagerank(g).scores))

print("\neigenvector centrality (needs the symmetrized view):")
print("  " + top(eigenvector_centrality(symmetrized(g)).scores))

print("\nsub-graph view: degree over 'governs' edges only")
governs = degree_centrality(build_graph(model, {"governs"}))
print("  " + top(governs.scores))
print("  filtering by relation type strips 'trivial' high-degree noise from")
print("  the importance reading")
