"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a PASS line on success; run with `pytest tests/test_acceptance.py -v -s`
to see them. The randomized corpora are seeded, so every run checks the same
instances.
"""

import json
import math
import time
from dataclasses import asdict
from pathlib import Path

import numpy as np
import pytest

import oracles
from archgraph import analytics as an
from archgraph import community as cm
from archgraph import diffusion as df
from archgraph import feed, io
from archgraph.api import create_app
from archgraph.errors import ParameterError
from archgraph.model import WeightedGraph, build_graph, validate
from archgraph.store import ModelStore

from conftest import build_sample_model, graph_of, random_model

FIXTURES = Path(__file__).parent / "fixtures"


def announce(name):
    print(f"\nACCEPTANCE PASS: {name}")


def rl_corpus(seed=101, count=100):
    """100 random connected weighted graphs, n <= 20, weights in (0, 5]."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(2, 21))
        yield rng, oracles.random_connected_graph(rng, n, weight_range=(0.05, 5.0))


def test_eq1_series_oracle_equivalence():
    start = time.perf_counter()
    for rng, g in rl_corpus():
        bundle = df.laplacian(g)
        for _ in range(5):
            alpha = float(rng.uniform(0.05, 0.95)) * bundle.alpha_max
            terms = df.series_terms_for(alpha, bundle.spectral_radius, target=1e-7)
            series = df.rl_series(bundle, alpha, terms)
            direct = df.rl_kernel(bundle, alpha).matrix
            assert np.max(np.abs(series - direct)) < 1e-6
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"took {elapsed:.1f}s"
    announce(f"Eq-1 oracle equivalence (500 kernels, {elapsed:.1f}s)")


def test_rl_stochasticity_and_symmetry():
    for rng, g in rl_corpus():
        bundle = df.laplacian(g)
        alpha = float(rng.uniform(0.05, 0.95)) * bundle.alpha_max
        P = df.rl_kernel(bundle, alpha).matrix
        assert np.max(np.abs(P.sum(axis=1) - 1.0)) < 1e-9
        assert np.max(np.abs(P - P.T)) < 1e-9
        assert P.min() >= -1e-12
        assert P.max() <= 1.0 + 1e-12
        for i in range(g.n):
            assert np.all(P[i, i] >= P[i])
    announce("RL stochasticity, symmetry, diagonal dominance")


def test_alpha_bound_enforcement():
    k2 = graph_of([(0, 1, 1.0)])
    bundle = df.laplacian(k2)
    for bad in (bundle.alpha_max, 0.0):
        with pytest.raises(ParameterError):
            df.rl_kernel(bundle, bad)
    df.rl_kernel(bundle, bundle.alpha_max * (1 - 1e-6))
    P = df.rl_kernel(bundle, 0.25).matrix
    want = np.array([[5 / 6, 1 / 6], [1 / 6, 5 / 6]])
    assert np.max(np.abs(P - want)) < 1e-12
    announce("alpha bound enforcement and K2 closed form")


def test_centrality_brute_force_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(102)
    for _ in range(200):
        n = int(rng.integers(3, 9))
        g = oracles.random_connected_graph(rng, n, extra_edge_prob=0.25,
                                           weight_range=(0.5, 5.0))
        assert an.degree_centrality(g).scores == oracles.degree(g)
        for mode in ("hop", "inverse-weight"):
            dmode = an.DistanceMode(mode)
            want_b = oracles.betweenness(g, mode)
            got_b = an.betweenness_centrality(g, dmode).scores
            want_e = oracles.edge_betweenness(g, mode)
            got_e = an.edge_betweenness(g, dmode).scores
            want_c = oracles.closeness(g, mode)
            got_c = an.closeness_centrality(g, dmode).scores
            for node in g.node_ids:
                assert abs(got_b[node] - want_b[node]) < 1e-9
                assert abs(got_c[node] - want_c[node]) < 1e-9
            assert set(got_e) == set(want_e)
            for key in got_e:
                assert abs(got_e[key] - want_e[key]) < 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"took {elapsed:.1f}s"
    announce(f"centrality brute-force equivalence (200 graphs, {elapsed:.1f}s)")


def test_kernel_closed_forms():
    k2 = graph_of([(0, 1, 1.0)])
    bundle = df.laplacian(k2)
    for alpha in (0.1, 1.0, 3.0):
        E = df.exp_kernel(k2, alpha).matrix
        want = np.array([[math.cosh(alpha), math.sinh(alpha)],
                         [math.sinh(alpha), math.cosh(alpha)]])
        assert np.max(np.abs(E - want)) < 1e-9
        L = df.lexp_kernel(bundle, alpha).matrix
        e = math.exp(-2 * alpha)
        want = 0.5 * np.array([[1 + e, 1 - e], [1 - e, 1 + e]])
        assert np.max(np.abs(L - want)) < 1e-9
    rng = np.random.default_rng(103)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        g = oracles.random_connected_graph(rng, n, weight_range=(1.0, 4.0))
        P = df.lexp_kernel(df.laplacian(g), 50.0).matrix
        assert np.max(np.abs(P - 1.0 / n)) < 1e-6
    announce("kernel closed forms and lexp mixing limit")


def test_rwr_criteria():
    k2 = graph_of([(0, 1, 1.0)])
    P = df.rwr_kernel(k2, 0.5).matrix
    assert abs(P[0, 0] - 2 / 3) < 1e-9
    assert abs(P[0, 1] - 1 / 3) < 1e-9
    rng = np.random.default_rng(104)
    for _ in range(10):
        g = oracles.random_directed_graph(rng, int(rng.integers(2, 12)))
        P = df.rwr_kernel(g, float(rng.uniform(0.1, 0.9))).matrix
        assert np.max(np.abs(P.sum(axis=1) - 1.0)) < 1e-9
    for _ in range(5):
        g = oracles.random_connected_graph(rng, 7)
        previous = np.zeros(7)
        for c in [round(0.1 * i, 1) for i in range(1, 10)]:
            diag = np.diag(df.rwr_kernel(g, c).matrix)
            assert np.all(diag >= previous - 1e-9)
            previous = diag
    announce("RWR fixed point, stochasticity, restart monotonicity")


def test_community_recovery():
    barbell = graph_of([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),
                        (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0), (2, 3, 1.0)])
    for _ in range(10):
        part = cm.girvan_newman(barbell, k=2)
        groups = {frozenset(g) for g in part.communities()}
        assert groups == {frozenset("abc"), frozenset("def")}

    rng = np.random.default_rng(105)
    for _ in range(50):
        n1, n2 = int(rng.integers(2, 6)), int(rng.integers(2, 6))
        g1 = oracles.random_connected_graph(rng, n1)
        g2 = oracles.random_connected_graph(rng, n2)
        A = np.zeros((n1 + n2, n1 + n2))
        A[:n1, :n1] = g1.adjacency
        A[n1:, n1:] = g2.adjacency
        g = WeightedGraph(node_ids=tuple(f"n{i}" for i in range(n1 + n2)), adjacency=A)
        part = cm.label_propagation(g, seed=int(rng.integers(0, 10000)))
        left = {part.assignment[f"n{i}"] for i in range(n1)}
        right = {part.assignment[f"n{i}"] for i in range(n1, n1 + n2)}
        assert left.isdisjoint(right)

    two_triangles = graph_of([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),
                              (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)])
    part = {node: (0 if node in "abc" else 1) for node in "abcdef"}
    assert cm.modularity(two_triangles, part) == 0.5
    announce("community recovery (GN bridge, LPA components, exact modularity)")


def _run_pipeline(model):
    items = feed.ingest(FIXTURES / "market_wire.xml") + feed.ingest(
        FIXTURES / "planning_atom.xml"
    )
    signals = feed.score_items(model, items, top_tags=6)
    seeds = feed.to_seeds(signals)
    bundle = df.laplacian(build_graph(model, symmetrize=True))
    kernel = df.rl_kernel(bundle, 0.5 * bundle.alpha_max)
    vector = df.propagate(kernel, seeds)
    return json.dumps({
        "signals": [asdict(s) for s in signals],
        "seeds": seeds,
        "scores": vector.scores,
        "ranking": list(vector.ranking),
    }, sort_keys=True)


def test_pipeline_determinism_and_sentiment_labels():
    model = build_sample_model()
    assert _run_pipeline(model) == _run_pipeline(model)

    def item(title):
        return feed.FeedItem(id="x", title=title, body="", published=None, source="t")

    assert feed.sentiment(item("revenue loss reported"), {"loss": -1.0}) == (feed.NEGATIVE, -1.0)
    assert feed.sentiment(
        item("good quarter offsets loss"), {"good": 1.0, "loss": -1.0}
    ) == (feed.NEUTRAL, 0.0)
    assert feed.sentiment(item("not good outlook"), {"good": 1.0}) == (feed.NEGATIVE, -1.0)
    announce("pipeline determinism and sentiment labels")


def test_persistence_and_api():
    rng = np.random.default_rng(106)
    for i in range(50):
        model = random_model(rng)
        assert validate(model) == []
        assert io.loads(io.dumps(model)) == model

    from fastapi.testclient import TestClient

    store = ModelStore(build_sample_model())
    client = TestClient(create_app(store))
    body = client.get("/api/v1/model").json()
    assert client.put("/api/v1/model", json=body).status_code == 200
    stale = client.put("/api/v1/model", json=body)  # same revision again
    assert stale.status_code == 409

    reads = [
        ("/api/v1/analytics/degree", {}),
        ("/api/v1/analytics/closeness", {"distance": "inverse-weight"}),
        ("/api/v1/analytics/betweenness", {}),
        ("/api/v1/analytics/edge-betweenness", {}),
        ("/api/v1/analytics/eigenvector", {}),
        ("/api/v1/analytics/pagerank", {}),
        ("/api/v1/analytics/degree-histogram", {}),
    ]
    cached = TestClient(create_app(ModelStore(build_sample_model(), caching=True)))
    cold = TestClient(create_app(ModelStore(build_sample_model(), caching=False)))
    for path, params in reads:
        assert cached.get(path, params=params).content == cold.get(path, params=params).content
    announce("persistence round-trip, conflict detection, cache transparency")
