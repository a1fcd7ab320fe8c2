"""Seed-selection heuristics: LBGH, MDFH, PBGH and MPBGH.

Every heuristic works with either diffusion model object from
:mod:`interestmax.diffusion`. Ties are always broken toward the lower vertex
id and every sort is stable, so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .diffusion import ICM, LTM
from .graph import Graph
from .validation import check_budget, check_graph, check_interest

__all__ = [
    "HeuristicConfig",
    "HeuristicOutcome",
    "level_based_order",
    "degree_order",
    "greedy_marginal_select",
    "lbgh",
    "mdfh",
    "pbgh",
    "mpbgh",
    "HEURISTICS",
]

Model = Union[LTM, ICM]


@dataclass
class HeuristicConfig:
    k: int
    model: Model
    eta: np.ndarray


@dataclass
class HeuristicOutcome:
    seeds: tuple[int, ...]
    interest: float
    stddev: float = 0.0
    aware_count: float = 0.0
    reps: int = 1
    evaluations: int = 0
    elapsed: float = 0.0
    # selection-time objective after each added seed (PBGH: the winning profit)
    history: list[float] = field(default_factory=list)


class _Counter:
    """Wraps ``model.score`` and counts the diffusion calls it makes."""

    def __init__(self, g: Graph, cfg: HeuristicConfig):
        self.g = g
        self.model = cfg.model
        self.eta = cfg.eta
        self.calls = 0

    def __call__(self, seeds: Sequence[int]) -> tuple[float, float]:
        self.calls += 1
        return self.model.score(self.g, seeds, self.eta)


def _prepare(g: Graph, cfg: HeuristicConfig) -> HeuristicConfig:
    check_graph(g)
    cfg.eta = check_interest(cfg.eta, g)
    cfg.k = check_budget(cfg.k)
    cfg.model.validate(g)
    return cfg


def _finish(g: Graph, cfg: HeuristicConfig, seeds: list[int], calls: int, t0: float, history) -> HeuristicOutcome:
    ev = cfg.model.evaluate(g, seeds, cfg.eta)
    return HeuristicOutcome(
        seeds=tuple(seeds),
        interest=ev.interest,
        stddev=ev.stddev,
        aware_count=ev.aware_count,
        reps=ev.reps,
        evaluations=calls + 1,
        elapsed=time.perf_counter() - t0,
        history=list(history),
    )


def _by_degree(g: Graph, vertices) -> list[int]:
    deg = g.degree
    return sorted(vertices, key=lambda u: (-int(deg[u]), u))


def degree_order(g: Graph) -> list[int]:
    return _by_degree(g, range(g.n))


def level_based_order(g: Graph, eta) -> list[int]:
    """Vertex order used by LBGH.

    The ``ceil(n/2)`` most interested vertices form level 0; level ``i`` holds
    the unvisited neighbors of level ``i - 1``. Each level is sorted by degree,
    then the levels are interleaved: the ``j``-th entries of all levels form a
    batch, sorted by degree again and appended. Vertices no level reaches
    come last, by degree.
    """
    n = g.n
    eta = np.asarray(eta, dtype=np.float64)
    by_interest = sorted(range(n), key=lambda u: (-eta[u], u))
    core = by_interest[: (n + 1) // 2]

    seen = np.zeros(n, dtype=bool)
    seen[core] = True
    levels = [_by_degree(g, core)]
    frontier = core
    while frontier:
        nxt = sorted({v for u in frontier for v in g.adj[u] if not seen[v]})
        seen[nxt] = True
        if nxt:
            levels.append(_by_degree(g, nxt))
        frontier = nxt

    order = []
    for j in range(max(len(lv) for lv in levels)):
        batch = [lv[j] for lv in levels if j < len(lv)]
        order.extend(_by_degree(g, batch))
    order.extend(_by_degree(g, np.flatnonzero(~seen).tolist()))
    return order


def greedy_marginal_select(g: Graph, order: Sequence[int], cfg: HeuristicConfig) -> list[int]:
    """Scan ``order`` once, keeping each vertex that strictly grows the aware count.

    Stops after ``cfg.k`` seeds or at the end of ``order``; fewer than ``k``
    seeds come back when no remaining vertex improves the count.
    """
    return _greedy_scan(g, order, cfg, _Counter(g, cfg))[0]


def _greedy_scan(g, order, cfg, score) -> tuple[list[int], list[float]]:
    seeds: list[int] = []
    history: list[float] = []
    if cfg.k == 0:
        return seeds, history
    _, base = score(seeds)
    for u in order:
        value, count = score(seeds + [u])
        if count > base:
            seeds.append(u)
            history.append(value)
            base = count
            if len(seeds) == cfg.k:
                break
    return seeds, history


def _ordered_greedy(make_order: Callable[[Graph, HeuristicConfig], list[int]]):
    def run(g: Graph, cfg: HeuristicConfig) -> HeuristicOutcome:
        t0 = time.perf_counter()
        cfg = _prepare(g, cfg)
        score = _Counter(g, cfg)
        seeds, history = _greedy_scan(g, make_order(g, cfg), cfg, score)
        return _finish(g, cfg, seeds, score.calls, t0, history)

    return run


lbgh = _ordered_greedy(lambda g, cfg: level_based_order(g, cfg.eta))
lbgh.__name__ = "lbgh"
lbgh.__doc__ = "Level Based Greedy Heuristic: greedy scan over :func:`level_based_order`."

mdfh = _ordered_greedy(lambda g, cfg: degree_order(g))
mdfh.__name__ = "mdfh"
mdfh.__doc__ = "Maximum Degree First Heuristic: greedy scan over vertices by decreasing degree."


def pbgh(g: Graph, cfg: HeuristicConfig) -> HeuristicOutcome:
    """Profit Based Greedy Heuristic.

    Each round adds the non-seed ``u`` maximizing the interest of the
    not-yet-aware part of its closed neighborhood ``N[u]``. Under ICM the
    aware set comes from one reference cascade per round.
    """
    t0 = time.perf_counter()
    cfg = _prepare(g, cfg)
    eta = cfg.eta.tolist()
    seeds: list[int] = []
    chosen = np.zeros(g.n, dtype=bool)
    calls = 0
    history = []
    for r in range(min(cfg.k, g.n)):
        aware = cfg.model.reference_aware(g, seeds, r).tolist()
        calls += 1
        best, best_u = -1.0, -1
        for u in range(g.n):
            if chosen[u]:
                continue
            profit = math.fsum(eta[v] for v in (u, *g.adj[u]) if not aware[v])
            if profit > best:
                best, best_u = profit, u
        seeds.append(best_u)
        chosen[best_u] = True
        history.append(best)
    return _finish(g, cfg, seeds, calls, t0, history)


def mpbgh(g: Graph, cfg: HeuristicConfig) -> HeuristicOutcome:
    """Maximum Profit Based Greedy Heuristic.

    Each round diffuses from ``S + {u}`` for every non-seed ``u`` and keeps
    the candidate with the largest total interest.
    """
    t0 = time.perf_counter()
    cfg = _prepare(g, cfg)
    score = _Counter(g, cfg)
    seeds: list[int] = []
    chosen = np.zeros(g.n, dtype=bool)
    history = []
    for _ in range(min(cfg.k, g.n)):
        best, best_u = -math.inf, -1
        for u in range(g.n):
            if chosen[u]:
                continue
            value, _ = score(seeds + [u])
            if value > best:
                best, best_u = value, u
        seeds.append(best_u)
        chosen[best_u] = True
        history.append(best)
    return _finish(g, cfg, seeds, score.calls, t0, history)


HEURISTICS = {"lbgh": lbgh, "mdfh": mdfh, "pbgh": pbgh, "mpbgh": mpbgh}
