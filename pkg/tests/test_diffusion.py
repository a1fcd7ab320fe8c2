import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_graph, path_graph, random_graph
from interestmax.diffusion import (
    ICM,
    LTM,
    icm_diffuse,
    icm_estimate,
    icm_replicates,
    interest_sum,
    ltm_activation_rounds,
    ltm_diffuse,
)
from interestmax.graph import Graph, uniform_edge_probs
from oracles import exact_icm, naive_ltm


@st.composite
def ltm_instances(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph.from_edges([e for e, keep in zip(pairs, mask) if keep], n=n)
    t = [draw(st.integers(1, max(1, int(d)) + 1)) for d in g.degree]
    seeds = draw(st.lists(st.integers(0, n - 1), unique=True, max_size=n))
    return g, np.array(t), seeds


class TestLtm:
    def test_path_all_aware(self, p3):
        res = ltm_diffuse(p3, [1, 1, 1], [0], np.ones(3))
        assert res.aware == {0, 1, 2}
        assert res.spreaders == {0, 1, 2}
        assert res.interest == 3.0
        assert res.rounds == 2

    def test_star_center_needs_all_leaves(self, star3):
        res = ltm_diffuse(star3, [3, 1, 1, 1], [1], np.ones(4))
        assert res.aware == {0, 1}
        assert res.spreaders == {1}
        assert res.interest == 2.0

    def test_empty_seed(self, p3):
        res = ltm_diffuse(p3, [1, 1, 1], [], np.ones(3))
        assert res.aware == frozenset() and res.spreaders == frozenset()
        assert res.interest == 0.0 and res.rounds == 0

    def test_seed_out_of_range(self, p3):
        with pytest.raises(ValueError, match="out of range"):
            ltm_diffuse(p3, [1, 1, 1], [3])

    def test_interest_weights(self, p3):
        res = ltm_diffuse(p3, [1, 2, 1], [0], np.array([0.5, 0.25, 0.125]))
        assert res.aware == {0, 1}
        assert res.interest == 0.75

    def test_activation_rounds(self):
        g = path_graph(4)
        assert ltm_activation_rounds(g, [1, 1, 1, 1], [0]).tolist() == [0, 1, 2, 3]
        assert ltm_activation_rounds(g, [1, 2, 1, 1], [0]).tolist() == [0, -1, -1, -1]

    def test_record_uses_labels(self):
        g = Graph.from_edges([(0, 1)], labels=[10, 20])
        rec = ltm_diffuse(g, [1, 1], [0], np.ones(2)).to_record(g)
        assert rec["seeds"] == [10]
        assert rec["aware"] == [10, 20]
        assert rec["spreaders"] == [10, 20]
        json.dumps(rec)

    @settings(max_examples=300, deadline=None)
    @given(ltm_instances())
    def test_matches_rescan_oracle(self, inst):
        g, t, seeds = inst
        res = ltm_diffuse(g, t, seeds)
        aware, spreaders = naive_ltm(g.edges(), g.n, t, seeds)
        assert res.aware == aware
        assert res.spreaders == spreaders

    @settings(max_examples=200, deadline=None)
    @given(ltm_instances(), st.randoms(use_true_random=False))
    def test_order_independent_fixed_point(self, inst, rnd):
        g, t, seeds = inst
        # asynchronous updates in a shuffled queue order
        nbrs = [set(a) for a in g.adj]
        spreaders = set(seeds)
        pending = list(range(g.n))
        while True:
            rnd.shuffle(pending)
            grew = False
            for u in pending:
                if u not in spreaders and len(nbrs[u] & spreaders) >= t[u]:
                    spreaders.add(u)
                    grew = True
            if not grew:
                break
        assert ltm_diffuse(g, t, seeds).spreaders == spreaders

    @settings(max_examples=200, deadline=None)
    @given(ltm_instances(), st.data())
    def test_seed_monotone(self, inst, data):
        g, t, seeds = inst
        extra = data.draw(st.lists(st.integers(0, g.n - 1), unique=True))
        bigger = list(dict.fromkeys(seeds + extra))
        small, big = ltm_diffuse(g, t, seeds), ltm_diffuse(g, t, bigger)
        assert small.aware <= big.aware
        assert small.spreaders <= big.spreaders

    @settings(max_examples=200, deadline=None)
    @given(ltm_instances())
    def test_closure_and_awareness(self, inst):
        g, t, seeds = inst
        res = ltm_diffuse(g, t, seeds)
        sp = res.spreaders
        assert set(seeds) <= sp <= res.aware
        for u in range(g.n):
            count = len(set(g.adj[u]) & sp)
            if u in sp and u not in seeds:
                assert count >= t[u]
            if u not in sp:
                assert count < t[u]
        covered = set(sp).union(*(g.adj[u] for u in sp)) if sp else set()
        assert res.aware == covered

    @settings(max_examples=100, deadline=None)
    @given(ltm_instances())
    def test_unit_thresholds_fill_components(self, inst):
        g, _, seeds = inst
        res = ltm_diffuse(g, np.ones(g.n, dtype=int), seeds)
        comp = set(seeds)
        stack = list(seeds)
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        assert res.spreaders == comp


class TestInterestSum:
    def test_empty(self):
        assert interest_sum([], np.ones(3)) == 0.0

    def test_units(self):
        assert interest_sum({0, 1}, np.ones(3)) == 2.0

    def test_whole_set_and_mask(self):
        eta = np.array([0.1, 0.2, 0.3, 0.4])
        assert interest_sum(range(4), eta) == math.fsum(eta)
        assert interest_sum(np.ones(4, dtype=bool), eta) == math.fsum(eta)

    def test_exact_ties(self):
        eta = np.array([0.9, 0.1, 0.1, 0.9])
        assert interest_sum([0, 1, 2], eta) == interest_sum([1, 2, 3], eta)
        assert interest_sum([0, 1, 2], eta) == interest_sum([2, 1, 0], eta)


class TestIcm:
    def test_certain_activation_reaches_component(self):
        g = path_graph(5)
        res = icm_diffuse(g, uniform_edge_probs(g, 1.0), [0], seed=1)
        assert res.active == set(range(5))

    def test_no_activation(self):
        g = complete_graph(5)
        res = icm_diffuse(g, uniform_edge_probs(g, 0.0), [0, 3], seed=1)
        assert res.active == {0, 3}
        assert res.aware == {0, 3}

    def test_deterministic_for_fixed_seed(self, p3):
        p = uniform_edge_probs(p3, 0.5)
        a = icm_diffuse(p3, p, [0], seed=1)
        b = icm_diffuse(p3, p, [0], seed=1)
        assert a == b

    def test_documented_draw_order(self):
        # star centered at 0 with leaves 1..3, then 1-4: wave 1 draws for 1,2,3
        g = Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 4)])
        p = uniform_edge_probs(g, 0.5)
        draws = np.random.Generator(np.random.PCG64(5)).random(4)
        res = icm_diffuse(g, p, [0], seed=5)
        expect = {0} | {v for v, d in zip((1, 2, 3), draws[:3]) if d < 0.5}
        if 1 in expect:
            if draws[3] < 0.5:
                expect.add(4)
        assert res.active == expect

    def test_aware_closure_flag(self):
        g = path_graph(4)
        p = uniform_edge_probs(g, 0.0)
        eta = np.ones(4)
        plain = icm_diffuse(g, p, [1], seed=0, eta=eta)
        closed = icm_diffuse(g, p, [1], seed=0, eta=eta, aware_closure=True)
        assert plain.interest == 1.0
        assert closed.aware == {0, 1, 2} and closed.interest == 3.0

    def test_seed_out_of_range(self, p3):
        with pytest.raises(ValueError):
            icm_diffuse(p3, uniform_edge_probs(p3, 0.5), [7], seed=0)

    @settings(max_examples=100, deadline=None)
    @given(ltm_instances(max_n=10), st.floats(0, 1), st.integers(0, 2**64 - 1))
    def test_active_within_reach(self, inst, p, seed):
        g, _, seeds = inst
        res = icm_diffuse(g, uniform_edge_probs(g, p), seeds, seed=seed)
        reach = set(seeds)
        stack = list(seeds)
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if v not in reach:
                    reach.add(v)
                    stack.append(v)
        assert set(seeds) <= res.active <= reach


class TestIcmEstimate:
    def test_certain_spread(self):
        g = Graph.from_edges([(0, 1), (1, 2), (3, 4)])
        eta = np.array([0.5, 0.25, 0.125, 1.0, 1.0])
        mean, std = icm_estimate(g, uniform_edge_probs(g, 1.0), [0], eta, reps=50, master_seed=3)
        assert mean == 0.875 and std == 0.0

    def test_single_edge_half(self):
        g = Graph.from_edges([(0, 1)])
        mean, _ = icm_estimate(g, uniform_edge_probs(g, 0.5), [0], np.ones(2), reps=10_000, master_seed=7)
        assert 1.45 <= mean <= 1.55

    def test_single_replicate_has_zero_stddev(self, p3):
        _, std = icm_estimate(p3, uniform_edge_probs(p3, 0.5), [0], np.ones(3), reps=1, master_seed=0)
        assert std == 0.0

    def test_deterministic(self, p3):
        p = uniform_edge_probs(p3, 0.5)
        assert icm_estimate(p3, p, [0], np.ones(3), 100, 9) == icm_estimate(p3, p, [0], np.ones(3), 100, 9)

    def test_replicates_are_order_independent(self, p3):
        # replicate j only depends on (master_seed, j)
        p = uniform_edge_probs(p3, 0.5)
        full, _ = icm_replicates(p3, p, [0], np.ones(3), 30, master_seed=4)
        part, _ = icm_replicates(p3, p, [0], np.ones(3), 10, master_seed=4)
        assert np.array_equal(full[:10], part)

    def test_rejects_zero_reps(self, p3):
        with pytest.raises(ValueError):
            icm_estimate(p3, uniform_edge_probs(p3, 0.5), [0], np.ones(3), 0, 0)

    @pytest.mark.parametrize("case", range(6))
    def test_against_exact_enumeration(self, case):
        rng = np.random.default_rng(100 + case)
        g = random_graph(rng, 5, 0.5)
        if g.m == 0:
            g = path_graph(5)
        p = rng.choice([0.0, 1.0], size=g.indices.size)
        arcs_idx = rng.choice(g.indices.size, size=min(3, g.indices.size), replace=False)
        p[arcs_idx] = rng.uniform(0.1, 0.9, size=arcs_idx.size)
        eta = rng.uniform(0.1, 1.0, size=g.n)
        arcs = {(int(u), int(v)): float(q) for u, v, q in zip(g.arc_source, g.indices, p)}
        exact_mean, exact_var = exact_icm(g.n, arcs, [0], eta)
        mean, _ = icm_estimate(g, p, [0], eta, reps=4000, master_seed=case)
        assert abs(mean - exact_mean) <= 3 * math.sqrt(exact_var / 4000) + 1e-12


class TestModels:
    def test_ltm_score(self, p3):
        assert LTM(np.array([1, 1, 1])).score(p3, [0], np.ones(3)) == (3.0, 3.0)

    def test_icm_common_random_numbers(self, p3):
        m = ICM(uniform_edge_probs(p3, 0.5), sel_reps=5, eval_reps=7, master_seed=2)
        assert m.score(p3, [0], np.ones(3)) == m.score(p3, [0], np.ones(3))
        ev = m.evaluate(p3, [0], np.ones(3))
        assert ev.reps == 7
        assert ev.interest == icm_estimate(p3, m.probs, [0], np.ones(3), 7, 2)[0]
