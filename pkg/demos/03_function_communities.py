"""Find function communities that cut across the official grid.

The grid groups components by competency and accountability. Community
detection shows which components actually work together: Girvan-Newman
peels away the busiest bridge edges until groups fall apart, label
propagation lets labels flow along strong ties. Communities that span
several competencies are the interesting ones.

Run 01_build_and_validate.py first.
"""

from pathlib import Path

from archgraph.community import girvan_newman, label_propagation, modularity
from archgraph.io import load
from archgraph.model import build_graph, symmetrized

model = load(Path(__file__).parent / "data" / "freightworks.json")
g = symmetrized(build_graph(model))


def describe(partition, title):
    print(f"\n{title}: {partition.community_count} communities, "
          f"modularity {partition.modularity:.3f}")
    for cid, members in enumerate(partition.communities()):
        competencies = set()
        print(f"  community {cid}:")
        for node in members:
            component = model.component(node)
            competency = model.competency(component.competency_id)
            competencies.add(competency.name)
            print(f"    {component.name:24s} [{competency.name} / {component.accountability}]")
        if len(competencies) > 1:
            print(f"    -> spans {len(competencies)} competencies")


auto = girvan_newman(g)
describe(auto, "girvan-newman at maximum modularity")

fixed = girvan_newman(g, k=3)
describe(fixed, "girvan-newman forced to 3 communities")

lpa = label_propagation(g, seed=7)
describe(lpa, "label propagation (seed 7)")

single = modularity(g, {node: 0 for node in g.node_ids})
print(f"\nfor scale: everything in one community scores Q = {single:.3f}")
