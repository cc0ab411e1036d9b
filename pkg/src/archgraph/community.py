"""Community detection over the component graph.

Two complementary detectors: Girvan-Newman divisive clustering, which reuses
edge betweenness to peel bridge edges, and seeded asynchronous label
propagation as a cheap second opinion. Both are deterministic: ties break by
node index and the propagation order is fixed by the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytics import DistanceMode, edge_betweenness
from .errors import ModelError
from .model import WeightedGraph

MODULARITY_MIN = -0.5


@dataclass(frozen=True)
class Partition:
    """Node-to-community assignment with contiguous ids starting at 0."""

    assignment: dict
    community_count: int
    modularity: float

    def communities(self) -> list[list[str]]:
        groups: list[list[str]] = [[] for _ in range(self.community_count)]
        for node, cid in self.assignment.items():
            groups[cid].append(node)
        return groups


def modularity(g: WeightedGraph, assignment: dict) -> float:
    """Weighted Newman-Girvan modularity of a node-to-community map."""
    missing = [node for node in g.node_ids if node not in assignment]
    if missing:
        raise ModelError(f"partition does not cover nodes {missing}")
    A = g.adjacency
    if g.directed:
        A = (A + A.T) / 2
    total = A.sum()  # 2m for an undirected graph
    if total == 0.0:
        return 0.0
    degrees = A.sum(axis=1)
    q = 0.0
    for cid in set(assignment.values()):
        members = [i for i, node in enumerate(g.node_ids) if assignment[node] == cid]
        inside = A[np.ix_(members, members)].sum() / total
        share = degrees[members].sum() / total
        q += inside - share * share
    return float(q)


def _components(adjacency: np.ndarray) -> list[list[int]]:
    n = adjacency.shape[0]
    seen = np.zeros(n, dtype=bool)
    out = []
    for start in range(n):
        if seen[start]:
            continue
        stack, members = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            members.append(v)
            for w in np.flatnonzero(adjacency[v] > 0):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        out.append(sorted(members))
    return out


def _partition_from_groups(g: WeightedGraph, groups: list[list[int]]) -> Partition:
    groups = sorted(groups, key=lambda members: members[0])
    assignment = {}
    for cid, members in enumerate(groups):
        for i in members:
            assignment[g.node_ids[i]] = cid
    return Partition(
        assignment=assignment,
        community_count=len(groups),
        modularity=modularity(g, assignment),
    )


def girvan_newman(g: WeightedGraph, k: int | None = None) -> Partition:
    """Divisive clustering by repeated removal of the busiest edge.

    Each round removes the edge with the highest betweenness (inverse-weight
    distances, so strong relations read as short paths). With ``k`` given,
    removal stops once the graph has at least k connected components; with
    ``k=None`` the modularity-maximizing state over the whole removal
    sequence is returned, the untouched graph included.
    """
    if g.directed:
        raise ModelError("girvan-newman needs an undirected graph; symmetrize first")
    n = g.n
    if k is not None and not 1 <= k <= n:
        raise ModelError(f"target community count {k} out of range 1..{n}")

    work = g.adjacency.copy()
    best: Partition | None = None
    while True:
        groups = _components(work)
        current = _partition_from_groups(g, groups)
        if k is not None:
            if len(groups) >= k:
                return current
        elif best is None or current.modularity > best.modularity:
            best = current
        if not work.any():
            break
        scores = edge_betweenness(
            WeightedGraph(node_ids=g.node_ids, adjacency=work, directed=False),
            mode=DistanceMode.INVERSE_WEIGHT,
        ).scores
        index = {node: i for i, node in enumerate(g.node_ids)}
        busiest = max(
            scores.items(),
            key=lambda kv: (kv[1], (-index[kv[0][0]], -index[kv[0][1]])),
        )[0]
        i, j = index[busiest[0]], index[busiest[1]]
        work[i, j] = 0.0
        work[j, i] = 0.0
    assert best is not None
    return best


def label_propagation(g: WeightedGraph, seed: int = 0, max_iter: int = 100) -> Partition:
    """Asynchronous label propagation with a seeded sweep order.

    Each sweep visits nodes in a freshly drawn order and assigns every node
    the label carrying the largest incident weight, smallest label on ties.
    Stops after a sweep with no change, or at ``max_iter`` sweeps.
    """
    n = g.n
    A = g.adjacency
    if g.directed:
        A = (A + A.T) / 2
    labels = np.arange(n)
    rng = np.random.default_rng(seed)
    for _ in range(max_iter):
        changed = False
        for v in rng.permutation(n):
            neighbor_idx = np.flatnonzero(A[v] > 0)
            if neighbor_idx.size == 0:
                continue
            totals: dict[int, float] = {}
            for w in neighbor_idx:
                label = int(labels[w])
                totals[label] = totals.get(label, 0.0) + float(A[v, w])
            winner = max(totals.items(), key=lambda kv: (kv[1], -kv[0]))[0]
            if winner != labels[v]:
                labels[v] = winner
                changed = True
        if not changed:
            break
    groups_by_label: dict[int, list[int]] = {}
    for i, label in enumerate(labels):
        groups_by_label.setdefault(int(label), []).append(i)
    return _partition_from_groups(g, list(groups_by_label.values()))
