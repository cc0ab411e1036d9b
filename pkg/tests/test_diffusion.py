import math

import numpy as np
import pytest
import scipy.linalg

import oracles
from archgraph import diffusion as df
from archgraph.errors import ModelError, ParameterError, UnknownEntityError
from archgraph.model import WeightedGraph

from conftest import graph_of


class TestLaplacian:
    def test_k2_by_hand(self, k2):
        b = df.laplacian(k2)
        assert np.array_equal(b.laplacian, np.array([[1.0, -1.0], [-1.0, 1.0]]))
        assert b.spectral_radius == pytest.approx(2.0, rel=1e-9)
        assert b.alpha_max == pytest.approx(0.5, rel=1e-9)

    def test_single_node(self):
        g = WeightedGraph(node_ids=("a",), adjacency=np.zeros((1, 1)))
        b = df.laplacian(g)
        assert b.laplacian == np.zeros((1, 1))
        assert b.spectral_radius == 0.0
        assert b.alpha_max == math.inf

    def test_triangle_radius_is_n(self, triangle):
        assert df.laplacian(triangle).spectral_radius == pytest.approx(3.0, rel=1e-9)

    def test_rows_sum_to_zero_and_symmetric(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            g = oracles.random_connected_graph(rng, int(rng.integers(2, 12)))
            b = df.laplacian(g)
            assert np.allclose(b.laplacian.sum(axis=1), 0.0, atol=1e-12)
            assert np.array_equal(b.laplacian, b.laplacian.T)

    def test_asymmetric_rejected(self):
        g = graph_of([(0, 1, 1.0)], directed=True)
        with pytest.raises(ModelError, match="symmetriz"):
            df.laplacian(g)

    def test_radius_matches_eigvalsh(self):
        rng = np.random.default_rng(32)
        for _ in range(10):
            g = oracles.random_connected_graph(rng, int(rng.integers(2, 15)))
            b = df.laplacian(g)
            want = float(np.linalg.eigvalsh(b.laplacian)[-1])
            assert b.spectral_radius == pytest.approx(want, rel=1e-8)


class TestRlKernel:
    def test_k2_closed_form(self, k2):
        P = df.rl_kernel(df.laplacian(k2), 0.25).matrix
        want = np.array([[5 / 6, 1 / 6], [1 / 6, 5 / 6]])
        assert np.max(np.abs(P - want)) < 1e-12

    def test_single_node(self):
        g = WeightedGraph(node_ids=("a",), adjacency=np.zeros((1, 1)))
        P = df.rl_kernel(df.laplacian(g), 123.0).matrix
        assert np.array_equal(P, np.eye(1))

    def test_alpha_bounds(self, k2):
        b = df.laplacian(k2)
        for alpha in (0.0, -0.1, b.alpha_max, b.alpha_max * 1.5):
            with pytest.raises(ParameterError, match="alpha"):
                df.rl_kernel(b, alpha)
        df.rl_kernel(b, b.alpha_max * (1 - 1e-6))  # just inside the bound

    def test_alpha_to_zero_approaches_identity(self, triangle):
        P = df.rl_kernel(df.laplacian(triangle), 1e-8).matrix
        assert np.max(np.abs(P - np.eye(3))) < 1e-6

    def test_stochastic_symmetric_diagonally_dominant(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            g = oracles.random_connected_graph(rng, int(rng.integers(2, 12)))
            b = df.laplacian(g)
            alpha = float(rng.uniform(0.05, 0.95)) * b.alpha_max
            P = df.rl_kernel(b, alpha).matrix
            assert np.allclose(P.sum(axis=1), 1.0, atol=1e-9)
            assert np.max(np.abs(P - P.T)) < 1e-9
            assert P.min() >= -1e-12
            assert P.max() <= 1.0 + 1e-12
            for i in range(g.n):
                assert np.all(P[i, i] >= P[i] - 1e-12)


class TestRlSeries:
    def test_zero_terms_is_identity(self, k2):
        assert np.array_equal(df.rl_series(df.laplacian(k2), 0.25, 0), np.eye(2))

    def test_matches_kernel_k2(self, k2):
        b = df.laplacian(k2)
        S = df.rl_series(b, 0.25, 50)
        P = df.rl_kernel(b, 0.25).matrix
        assert np.max(np.abs(S - P)) < 1e-9

    def test_tail_bound_estimates_terms(self):
        k = df.series_terms_for(0.25, 2.0, target=1e-7)
        # (0.5)^k / 0.5 < 1e-7  =>  k >= 24
        assert (0.5 ** k) / 0.5 < 1e-7
        assert (0.5 ** (k - 1)) / 0.5 >= 1e-7

    def test_near_bound_truncations_agree(self, k2):
        b = df.laplacian(k2)
        alpha = 0.9 * b.alpha_max
        a = df.rl_series(b, alpha, 200)
        c = df.rl_series(b, alpha, 400)
        assert np.max(np.abs(a - c)) < 1e-6


class TestRwr:
    def test_k2_fixed_point(self, k2):
        P = df.rwr_kernel(k2, 0.5).matrix
        assert P[0, 0] == pytest.approx(2 / 3, abs=1e-9)
        assert P[0, 1] == pytest.approx(1 / 3, abs=1e-9)

    def test_restart_to_one_is_identity(self, k2):
        P = df.rwr_kernel(k2, 1 - 1e-8).matrix
        assert np.max(np.abs(P - np.eye(2))) < 1e-6

    def test_isolated_seed_keeps_everything(self):
        g = graph_of([(0, 1, 1.0)], n=3)
        P = df.rwr_kernel(g, 0.3).matrix
        assert P[2] == pytest.approx([0.0, 0.0, 1.0], abs=1e-12)

    def test_restart_bounds(self, k2):
        for c in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(ParameterError):
                df.rwr_kernel(k2, c)

    def test_rows_sum_to_one(self):
        rng = np.random.default_rng(34)
        for _ in range(10):
            g = oracles.random_directed_graph(rng, int(rng.integers(2, 10)))
            P = df.rwr_kernel(g, float(rng.uniform(0.1, 0.9))).matrix
            assert np.allclose(P.sum(axis=1), 1.0, atol=1e-9)

    def test_seed_score_monotone_in_restart(self):
        rng = np.random.default_rng(35)
        for _ in range(5):
            g = oracles.random_connected_graph(rng, 6)
            previous = np.zeros(6)
            for c in np.arange(0.1, 0.95, 0.1):
                diag = np.diag(df.rwr_kernel(g, float(c)).matrix)
                assert np.all(diag >= previous - 1e-9)
                previous = diag

    def test_respects_direction(self):
        g = graph_of([(0, 1, 1.0)], directed=True)
        P = df.rwr_kernel(g, 0.5).matrix
        # b has no outgoing edge back to a, so a's walk reaches b but not vice versa
        assert P[0, 1] > 0
        assert P[1, 0] == pytest.approx(0.0, abs=1e-12)


class TestExponentialKernels:
    def test_exp_k2_cosh_sinh(self, k2):
        for alpha in (0.1, 1.0, 3.0):
            P = df.exp_kernel(k2, alpha).matrix
            want = np.array([
                [math.cosh(alpha), math.sinh(alpha)],
                [math.sinh(alpha), math.cosh(alpha)],
            ])
            assert np.max(np.abs(P - want)) < 1e-9

    def test_exp_edgeless_is_identity(self):
        g = WeightedGraph(node_ids=("a", "b"), adjacency=np.zeros((2, 2)))
        assert np.array_equal(df.exp_kernel(g, 2.0).matrix, np.eye(2))

    def test_lexp_k2_spectral_form(self, k2):
        b = df.laplacian(k2)
        for alpha in (0.1, 1.0, 3.0):
            P = df.lexp_kernel(b, alpha).matrix
            e = math.exp(-2 * alpha)
            want = 0.5 * np.array([[1 + e, 1 - e], [1 - e, 1 + e]])
            assert np.max(np.abs(P - want)) < 1e-9

    def test_lexp_rows_sum_to_one(self):
        rng = np.random.default_rng(36)
        for _ in range(10):
            g = oracles.random_connected_graph(rng, int(rng.integers(2, 10)))
            P = df.lexp_kernel(df.laplacian(g), float(rng.uniform(0.1, 3.0))).matrix
            assert np.allclose(P.sum(axis=1), 1.0, atol=1e-9)

    def test_lexp_mixes_to_uniform(self):
        rng = np.random.default_rng(37)
        for _ in range(10):
            n = int(rng.integers(2, 7))
            g = oracles.random_connected_graph(rng, n, weight_range=(1.0, 4.0))
            P = df.lexp_kernel(df.laplacian(g), 50.0).matrix
            assert np.max(np.abs(P - 1.0 / n)) < 1e-6

    def test_matches_scipy_expm(self):
        rng = np.random.default_rng(38)
        for _ in range(10):
            g = oracles.random_connected_graph(rng, int(rng.integers(2, 12)))
            alpha = float(rng.uniform(0.1, 2.0))
            mine = df.exp_kernel(g, alpha).matrix
            want = scipy.linalg.expm(alpha * g.adjacency)
            assert np.max(np.abs(mine - want)) < 1e-9 * max(1.0, np.abs(want).max())

    def test_row_normalize_flag(self, triangle):
        P = df.exp_kernel(triangle, 1.0, row_normalize=True).matrix
        assert np.allclose(P.sum(axis=1), 1.0, atol=1e-12)

    def test_alpha_must_be_positive(self, k2):
        with pytest.raises(ParameterError):
            df.exp_kernel(k2, 0.0)
        with pytest.raises(ParameterError):
            df.lexp_kernel(df.laplacian(k2), -1.0)


class TestPropagate:
    def test_k2_seed_reads_kernel_row(self, k2):
        kernel = df.rl_kernel(df.laplacian(k2), 0.25)
        vector = df.propagate(kernel, {"a": 1.0})
        assert vector.scores["a"] == pytest.approx(5 / 6, abs=1e-12)
        assert vector.scores["b"] == pytest.approx(1 / 6, abs=1e-12)
        assert vector.ranking == ("a", "b")

    def test_linear_in_intensity(self, barbell):
        kernel = df.rl_kernel(df.laplacian(barbell), 0.1)
        single = df.propagate(kernel, {"a": 1.0, "d": 2.0})
        double = df.propagate(kernel, {"a": 2.0, "d": 4.0})
        for node in barbell.node_ids:
            assert double.scores[node] == pytest.approx(2 * single.scores[node], rel=1e-12)

    def test_uniform_seeding_rl_gives_ones(self, triangle):
        kernel = df.rl_kernel(df.laplacian(triangle), 0.2)
        vector = df.propagate(kernel, {n: 1.0 for n in triangle.node_ids})
        for score in vector.scores.values():
            assert score == pytest.approx(1.0, abs=1e-9)

    def test_scaling_preserves_ranking(self, barbell):
        kernel = df.lexp_kernel(df.laplacian(barbell), 0.7)
        a = df.propagate(kernel, {"b": 1.0, "e": 0.25})
        b = df.propagate(kernel, {"b": 40.0, "e": 10.0})
        assert a.ranking == b.ranking

    def test_unknown_seed(self, k2):
        kernel = df.rl_kernel(df.laplacian(k2), 0.25)
        with pytest.raises(UnknownEntityError):
            df.propagate(kernel, {"zz": 1.0})

    def test_empty_or_nonpositive_seeds(self, k2):
        kernel = df.rl_kernel(df.laplacian(k2), 0.25)
        with pytest.raises(ParameterError):
            df.propagate(kernel, {})
        with pytest.raises(ParameterError):
            df.propagate(kernel, {"a": 0.0})

    def test_rwr_propagation_uses_seed_rows(self):
        g = graph_of([(0, 1, 1.0)], directed=True)
        kernel = df.rwr_kernel(g, 0.5)
        vector = df.propagate(kernel, {"a": 1.0})
        # the walk from a reaches b, so b must receive impact
        assert vector.scores["b"] > 0


def test_rl_kernel_equals_series_on_random_graphs():
    rng = np.random.default_rng(39)
    for _ in range(25):
        g = oracles.random_connected_graph(rng, int(rng.integers(2, 15)))
        b = df.laplacian(g)
        alpha = float(rng.uniform(0.05, 0.95)) * b.alpha_max
        terms = df.series_terms_for(alpha, b.spectral_radius, target=1e-7)
        S = df.rl_series(b, alpha, terms)
        P = df.rl_kernel(b, alpha).matrix
        assert np.max(np.abs(S - P)) < 1e-6
