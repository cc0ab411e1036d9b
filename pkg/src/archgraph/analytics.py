"""Topological analytics over weighted graphs.

Covers the centrality family (degree, closeness, betweenness, edge
betweenness, eigenvector, PageRank), all-pairs shortest paths, and the
degree histogram with its balance classification.

Edge weights encode relation strength, never distance; the inverse-weight
distance mode converts strength w into length 1/w so that strong relations
are short. All operations are pure functions of an immutable graph and may
run concurrently.
"""

from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConvergenceError, DegenerateSpectrumError, ModelError, ParameterError
from .model import WeightedGraph

UNREACHABLE = math.inf


class DistanceMode(str, Enum):
    HOP = "hop"
    INVERSE_WEIGHT = "inverse-weight"


class CentralityKind(str, Enum):
    DEGREE = "degree"
    CLOSENESS = "closeness"
    BETWEENNESS = "betweenness"
    EDGE_BETWEENNESS = "edge-betweenness"
    EIGENVECTOR = "eigenvector"
    PAGERANK = "pagerank"


@dataclass(frozen=True)
class CentralityScores:
    """Per-node (or per-edge) scores plus the parameters that produced them."""

    kind: CentralityKind
    scores: dict
    parameters: dict


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs shortest-path lengths; unreachable pairs hold ``UNREACHABLE``."""

    node_ids: tuple[str, ...]
    values: np.ndarray
    mode: DistanceMode

    def distance(self, source: str, target: str) -> float:
        ids = list(self.node_ids)
        return float(self.values[ids.index(source), ids.index(target)])


@dataclass(frozen=True)
class DegreeHistogram:
    counts: dict
    classification: str
    mean_degree: float
    max_possible_degree: float


def _edge_lengths(g: WeightedGraph, mode: DistanceMode) -> list[list[tuple[int, float]]]:
    """Adjacency list of (neighbor, length) pairs under the distance mode."""
    out: list[list[tuple[int, float]]] = []
    A = g.adjacency
    for i in range(g.n):
        row = []
        for j in np.flatnonzero(A[i]):
            w = A[i, j]
            row.append((int(j), 1.0 if mode is DistanceMode.HOP else 1.0 / w))
        out.append(row)
    return out


def _single_source(neighbors, n: int, s: int):
    """Dijkstra with shortest-path counting (Brandes bookkeeping).

    Returns (dist, sigma, predecessor lists, settled order). All edge
    lengths are strictly positive so a node's path count is final once it
    is settled.
    """
    dist = np.full(n, UNREACHABLE)
    sigma = np.zeros(n)
    preds: list[list[int]] = [[] for _ in range(n)]
    settled = np.zeros(n, dtype=bool)
    order: list[int] = []
    dist[s] = 0.0
    sigma[s] = 1.0
    heap: list[tuple[float, int]] = [(0.0, s)]
    while heap:
        d, v = heapq.heappop(heap)
        if settled[v]:
            continue
        settled[v] = True
        order.append(v)
        for w, length in neighbors[v]:
            nd = d + length
            if nd < dist[w]:
                dist[w] = nd
                sigma[w] = sigma[v]
                preds[w] = [v]
                heapq.heappush(heap, (nd, w))
            elif nd == dist[w]:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return dist, sigma, preds, order


def shortest_paths(g: WeightedGraph, mode: DistanceMode = DistanceMode.HOP) -> DistanceMatrix:
    """All-pairs shortest-path lengths under the chosen distance mode."""
    mode = DistanceMode(mode)
    neighbors = _edge_lengths(g, mode)
    values = np.full((g.n, g.n), UNREACHABLE)
    for s in range(g.n):
        dist, _, _, _ = _single_source(neighbors, g.n, s)
        values[s] = dist
    return DistanceMatrix(node_ids=g.node_ids, values=values, mode=mode)


def degree_centrality(g: WeightedGraph, weighted: bool = False) -> CentralityScores:
    """Count of incident edges per node, or the sum of incident weights.

    Directed graphs count in-degree plus out-degree.
    """
    A = g.adjacency
    if weighted:
        values = A.sum(axis=1) + (A.sum(axis=0) if g.directed else 0.0)
    else:
        values = (A > 0).sum(axis=1) + ((A > 0).sum(axis=0) if g.directed else 0)
    scores = {node: float(values[i]) for i, node in enumerate(g.node_ids)}
    return CentralityScores(
        kind=CentralityKind.DEGREE,
        scores=scores,
        parameters={"weighted": weighted, "directed": g.directed},
    )


def degree_histogram(scores: CentralityScores) -> DegreeHistogram:
    """Bucket degree scores and classify the balance of the distribution.

    The classification compares mean degree against the maximum possible
    degree: a ratio below 0.25 reads as left-concentrated (loose structure),
    above 0.75 as right-concentrated (over-dependent), otherwise balanced.
    """
    if scores.kind is not CentralityKind.DEGREE:
        raise ModelError(f"degree histogram needs degree scores, got {scores.kind.value}")
    n = len(scores.scores)
    counts = Counter(
        int(v) if float(v).is_integer() else float(v) for v in scores.scores.values()
    )
    directed = bool(scores.parameters.get("directed", False))
    max_possible = float(max(n - 1, 0) * (2 if directed else 1))
    mean = float(np.mean(list(scores.scores.values()))) if n else 0.0
    ratio = mean / max_possible if max_possible > 0 else 0.0
    if ratio < 0.25:
        classification = "left-concentrated"
    elif ratio > 0.75:
        classification = "right-concentrated"
    else:
        classification = "balanced"
    return DegreeHistogram(
        counts=dict(sorted(counts.items())),
        classification=classification,
        mean_degree=mean,
        max_possible_degree=max_possible,
    )


def closeness_centrality(
    g: WeightedGraph, mode: DistanceMode = DistanceMode.HOP
) -> CentralityScores:
    """Inverse total distance to the reachable peers of each node.

    The sum runs over reachable nodes only and the result is scaled by
    (r - 1) / (n - 1), r being the reachable count, so scores stay
    comparable across graph components of different sizes. A node with no
    reachable peer scores 0.
    """
    mode = DistanceMode(mode)
    dm = shortest_paths(g, mode)
    scores: dict[str, float] = {}
    n = g.n
    for i, node in enumerate(g.node_ids):
        row = dm.values[i]
        finite = row[np.isfinite(row)]
        r = finite.size  # includes the zero self-distance
        total = float(finite.sum())
        if r <= 1 or n <= 1 or total == 0.0:
            scores[node] = 0.0
        else:
            scores[node] = ((r - 1) / (n - 1)) / total
    return CentralityScores(
        kind=CentralityKind.CLOSENESS,
        scores=scores,
        parameters={"distance_mode": mode.value},
    )


def _brandes(g: WeightedGraph, mode: DistanceMode, edges: bool):
    """Brandes accumulation for node or edge betweenness (unnormalized)."""
    n = g.n
    neighbors = _edge_lengths(g, mode)
    node_scores = np.zeros(n)
    edge_scores: dict[tuple[int, int], float] = {}
    if edges:
        for i in range(n):
            for j in np.flatnonzero(g.adjacency[i]):
                key = (i, int(j)) if g.directed else (min(i, int(j)), max(i, int(j)))
                edge_scores.setdefault(key, 0.0)
    for s in range(n):
        _, sigma, preds, order = _single_source(neighbors, n, s)
        delta = np.zeros(n)
        for w in reversed(order):
            for v in preds[w]:
                contribution = sigma[v] / sigma[w] * (1.0 + delta[w])
                if edges:
                    key = (v, w) if g.directed else (min(v, w), max(v, w))
                    edge_scores[key] += contribution
                delta[v] += contribution
            if w != s:
                node_scores[w] += delta[w]
    if not g.directed:
        # Each unordered pair was visited from both endpoints.
        node_scores /= 2.0
        edge_scores = {k: v / 2.0 for k, v in edge_scores.items()}
    return node_scores, edge_scores


def betweenness_centrality(
    g: WeightedGraph,
    mode: DistanceMode = DistanceMode.HOP,
    normalized: bool = False,
) -> CentralityScores:
    """Fraction of shortest paths passing through each node, summed over pairs."""
    mode = DistanceMode(mode)
    values, _ = _brandes(g, mode, edges=False)
    n = g.n
    if normalized and n > 2:
        scale = (n - 1) * (n - 2) * (0.5 if not g.directed else 1.0)
        values = values / scale
    scores = {node: float(values[i]) for i, node in enumerate(g.node_ids)}
    return CentralityScores(
        kind=CentralityKind.BETWEENNESS,
        scores=scores,
        parameters={"distance_mode": mode.value, "normalized": normalized},
    )


def edge_betweenness(
    g: WeightedGraph,
    mode: DistanceMode = DistanceMode.HOP,
    normalized: bool = False,
) -> CentralityScores:
    """Fraction of shortest paths crossing each edge, summed over pairs."""
    mode = DistanceMode(mode)
    _, raw = _brandes(g, mode, edges=True)
    n = g.n
    scale = 1.0
    if normalized and n > 1:
        scale = n * (n - 1) * (0.5 if not g.directed else 1.0)
    scores = {
        (g.node_ids[i], g.node_ids[j]): float(v / scale) for (i, j), v in raw.items()
    }
    return CentralityScores(
        kind=CentralityKind.EDGE_BETWEENNESS,
        scores=scores,
        parameters={"distance_mode": mode.value, "normalized": normalized},
    )


def _connected_components(A: np.ndarray) -> list[list[int]]:
    n = A.shape[0]
    seen = np.zeros(n, dtype=bool)
    components = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            v = stack.pop()
            members.append(v)
            for w in np.flatnonzero((A[v] > 0) | (A[:, v] > 0)):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        components.append(sorted(members))
    return components


def eigenvector_centrality(
    g: WeightedGraph, tol: float = 1e-10, max_iter: int = 1000
) -> CentralityScores:
    """Dominant eigenvector of the adjacency matrix by power iteration.

    The returned vector is entrywise nonnegative and L2-normalized.
    Disconnected graphs whose components tie for the dominant eigenvalue
    have no canonical answer and are rejected.
    """
    A = g.adjacency
    if not np.array_equal(A, A.T):
        raise ModelError("eigenvector centrality needs a symmetric graph; symmetrize first")
    if g.n == 0 or not A.any():
        raise ModelError("eigenvector centrality is undefined on a graph with no edges")

    components = [c for c in _connected_components(A) if A[np.ix_(c, c)].any()]
    if len(components) > 1:
        radii = sorted(
            (float(np.linalg.eigvalsh(A[np.ix_(c, c)])[-1]) for c in components),
            reverse=True,
        )
        if radii[0] - radii[1] <= 1e-8 * max(radii[0], 1e-300):
            raise DegenerateSpectrumError(
                "dominant eigenvalue is shared by multiple graph components; "
                "the centrality vector would be arbitrary"
            )

    # Iterating I + A instead of A keeps bipartite spectra (lam and -lam of
    # equal size) from oscillating; the eigenvectors are unchanged.
    shifted = A + np.eye(g.n)
    x = np.full(g.n, 1.0 / math.sqrt(g.n))
    for _ in range(max_iter):
        y = shifted @ x
        y /= np.linalg.norm(y)
        if np.max(np.abs(y - x)) < tol:
            x = np.maximum(y, 0.0)
            x /= np.linalg.norm(x)
            scores = {node: float(x[i]) for i, node in enumerate(g.node_ids)}
            return CentralityScores(
                kind=CentralityKind.EIGENVECTOR,
                scores=scores,
                parameters={"tol": tol, "max_iter": max_iter},
            )
        x = y
    raise ConvergenceError(
        f"eigenvector centrality did not converge within {max_iter} iterations",
        last_iterate=x,
    )


def pagerank(
    g: WeightedGraph,
    damping: float = 0.85,
    tol: float = 1e-12,
    max_iter: int = 10000,
) -> CentralityScores:
    """Stationary distribution of the damped walk on the weighted adjacency.

    Dangling nodes redistribute their mass uniformly; scores sum to 1.
    """
    if not 0.0 < damping < 1.0:
        raise ParameterError(f"damping must lie in (0, 1), got {damping}")
    n = g.n
    if n == 0:
        return CentralityScores(CentralityKind.PAGERANK, {}, {"damping": damping})
    A = g.adjacency
    out = A.sum(axis=1)
    dangling = out == 0.0
    W = np.divide(A, out[:, None], out=np.zeros_like(A), where=out[:, None] > 0)
    x = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        spread = W.T @ x + x[dangling].sum() / n
        nxt = damping * spread + (1.0 - damping) / n
        if np.max(np.abs(nxt - x)) < tol:
            scores = {node: float(nxt[i]) for i, node in enumerate(g.node_ids)}
            return CentralityScores(
                kind=CentralityKind.PAGERANK,
                scores=scores,
                parameters={"damping": damping, "tol": tol},
            )
        x = nxt
    raise ConvergenceError(
        f"pagerank did not converge within {max_iter} iterations", last_iterate=x
    )
