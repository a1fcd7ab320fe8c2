import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_graph, path_graph, random_graph, star_graph
from interestmax.diffusion import ICM, LTM, ltm_diffuse
from interestmax.graph import Graph, fixed_ratio_thresholds, uniform_edge_probs
from interestmax.heuristics import (
    HEURISTICS,
    HeuristicConfig,
    degree_order,
    greedy_marginal_select,
    lbgh,
    level_based_order,
    mdfh,
    mpbgh,
    pbgh,
)


def ltm_cfg(g, k, eta=None, ratio=0.5):
    eta = np.ones(g.n) if eta is None else np.asarray(eta, dtype=float)
    return HeuristicConfig(k, LTM(fixed_ratio_thresholds(g, ratio)), eta)


def two_paths():
    return Graph.from_edges([(0, 1), (1, 2), (3, 4), (4, 5)])


class TestOrders:
    def test_level_based_path(self, p3):
        assert level_based_order(p3, [0.9, 0.5, 0.1]) == [1, 2, 0]

    def test_level_based_constant_interest(self):
        g = path_graph(5)
        order = level_based_order(g, np.ones(5))
        assert sorted(order) == list(range(5))
        # core is {0, 1, 2}; the remaining vertices form levels 1 and 2
        assert order == [1, 3, 4, 2, 0]

    def test_level_based_single_vertex(self):
        assert level_based_order(Graph.from_edges([], n=1), [0.5]) == [0]

    def test_level_based_unreached_vertices_last(self):
        g = Graph.from_edges([(0, 1), (2, 3), (3, 4), (5, 6)])
        order = level_based_order(g, [1.0, 1.0, 1.0, 1.0, 0.5, 0.1, 0.1])
        assert sorted(order) == list(range(7))
        assert order[-2:] == [5, 6]

    def test_degree_order_ties_to_lower_id(self):
        assert degree_order(star_graph(3)) == [0, 1, 2, 3]
        assert degree_order(path_graph(4)) == [1, 2, 0, 3]

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 15), st.integers(0, 10_000))
    def test_level_based_is_permutation(self, n, s):
        rng = np.random.default_rng(s)
        g = random_graph(rng, n, 0.3)
        assert sorted(level_based_order(g, rng.uniform(0.01, 1, n))) == list(range(n))


class TestGreedyScan:
    def test_first_improving_vertex(self, p3):
        assert greedy_marginal_select(p3, [1, 2, 0], ltm_cfg(p3, 1)) == [1]

    def test_zero_budget(self, p3):
        assert greedy_marginal_select(p3, [1, 2, 0], ltm_cfg(p3, 0)) == []

    def test_skips_non_improving(self, k3):
        # after seeding 0 in a triangle with unit thresholds, nothing else helps
        cfg = HeuristicConfig(3, LTM(np.ones(3, dtype=int)), np.ones(3))
        assert greedy_marginal_select(k3, [0, 1, 2], cfg) == [0]


class TestLbgh:
    def test_path(self, p3):
        out = lbgh(p3, ltm_cfg(p3, 1, [0.9, 0.5, 0.1]))
        assert out.seeds == (1,)
        assert out.interest == pytest.approx(1.5)

    def test_path_unit_interest(self, p3):
        out = lbgh(p3, ltm_cfg(p3, 1))
        assert out.seeds == (1,) and out.interest == 3.0

    def test_two_components(self):
        g = two_paths()
        out = lbgh(g, ltm_cfg(g, 2))
        assert len(out.seeds) == 2 and out.interest == 6.0


class TestMdfh:
    def test_star(self, star3):
        out = mdfh(star3, ltm_cfg(star3, 1))
        assert out.seeds == (0,) and out.interest == 4.0

    def test_triangle_stops_early(self, k3):
        out = mdfh(k3, ltm_cfg(k3, 3))
        assert out.seeds == (0,)
        assert out.interest == 3.0


class TestPbgh:
    def test_path_first_seed(self, p3):
        assert pbgh(p3, ltm_cfg(p3, 1)).seeds == (1,)

    def test_profit_tie_goes_to_lower_id(self):
        g = path_graph(4)
        out = pbgh(g, ltm_cfg(g, 1, [0.9, 0.1, 0.1, 0.9]))
        assert out.seeds == (1,)
        assert out.history == [pytest.approx(1.1)]

    def test_all_aware_falls_back_to_lowest_id(self, k3):
        out = pbgh(k3, HeuristicConfig(2, LTM(np.ones(3, dtype=int)), np.ones(3)))
        assert out.seeds == (0, 1)
        assert out.history == [3.0, 0.0]


class TestMpbgh:
    def test_path(self, p3):
        out = mpbgh(p3, ltm_cfg(p3, 1))
        assert out.seeds == (0,) and out.interest == 3.0

    def test_star(self, star3):
        assert mpbgh(star3, ltm_cfg(star3, 1)).seeds == (0,)

    def test_k_larger_than_n(self, p3):
        out = mpbgh(p3, ltm_cfg(p3, 10))
        assert sorted(out.seeds) == [0, 1, 2]

    def test_evaluation_count(self, p3):
        # n + (n - 1) candidate scores plus one final evaluation
        assert mpbgh(p3, ltm_cfg(p3, 2)).evaluations == 3 + 2 + 1


@pytest.mark.parametrize("name", sorted(HEURISTICS))
class TestInvariants:
    def test_zero_budget(self, name, p3):
        out = HEURISTICS[name](p3, ltm_cfg(p3, 0))
        assert out.seeds == () and out.interest == 0.0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 14), st.integers(0, 10_000))
    def test_budget_and_consistency(self, name, n, s):
        rng = np.random.default_rng(s)
        g = random_graph(rng, n, 0.3)
        eta = rng.uniform(0.01, 1.0, n)
        t = fixed_ratio_thresholds(g, 0.5)
        prev = -1.0
        for k in range(0, 5):
            out = HEURISTICS[name](g, HeuristicConfig(k, LTM(t), eta))
            assert len(out.seeds) <= k
            assert len(set(out.seeds)) == len(out.seeds)
            assert out.interest == ltm_diffuse(g, t, out.seeds, eta).interest
            assert out.interest <= math.fsum(eta)
            assert out.interest >= prev
            prev = out.interest

    def test_deterministic(self, name):
        g = random_graph(np.random.default_rng(5), 20, 0.2)
        eta = np.random.default_rng(6).uniform(0.01, 1, 20)
        a = HEURISTICS[name](g, ltm_cfg(g, 4, eta))
        b = HEURISTICS[name](g, ltm_cfg(g, 4, eta))
        assert (a.seeds, a.interest, a.history) == (b.seeds, b.interest, b.history)

    def test_icm_runs_and_is_reproducible(self, name):
        g = random_graph(np.random.default_rng(1), 15, 0.25)
        eta = np.random.default_rng(2).uniform(0.01, 1, 15)

        def run():
            model = ICM(uniform_edge_probs(g, 0.3), sel_reps=5, eval_reps=20, master_seed=11)
            return HEURISTICS[name](g, HeuristicConfig(3, model, eta))

        a, b = run(), run()
        assert a.seeds == b.seeds and a.interest == b.interest
        assert a.reps == 20
        assert 0 < a.interest <= math.fsum(eta)

    def test_rejects_negative_budget(self, name, p3):
        with pytest.raises(ValueError):
            HEURISTICS[name](p3, ltm_cfg(p3, -1))


def test_mpbgh_single_seed_is_best_single_vertex():
    g = complete_graph(4)
    g = Graph.from_edges(list(g.edges()) + [(3, 4), (4, 5)])
    eta = np.array([0.1, 0.1, 0.1, 0.1, 0.2, 1.0])
    cfg = ltm_cfg(g, 1, eta)
    t = cfg.model.thresholds
    best = max(range(g.n), key=lambda u: (ltm_diffuse(g, t, [u], eta).interest, -u))
    assert mpbgh(g, cfg).seeds == (best,)


def test_runtime_on_jazz_sized_random_graph():
    # same vertex and edge counts as the jazz network, which is not bundled
    rng = np.random.default_rng(198)
    pairs = [(i, j) for i in range(198) for j in range(i + 1, 198)]
    pick = rng.choice(len(pairs), size=2742, replace=False)
    g = Graph.from_edges([pairs[i] for i in pick], n=198)
    cfg = ltm_cfg(g, 10, rng.uniform(0.01, 1.0, 198))
    out = mpbgh(g, cfg)
    assert len(out.seeds) == 10
    assert out.elapsed < 5
