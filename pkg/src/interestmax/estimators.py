"""scikit-learn style wrappers around the seed-selection algorithms.

``fit`` takes a :class:`~interestmax.graph.Graph` plus interest values and
selects seeds; ``predict`` marks the vertices the fitted seeds reach and
``score`` returns their total interest. Hyper-parameters follow the usual
``get_params``/``set_params`` contract, so the selectors can be cloned and
grid-searched.

>>> from interestmax import load_dataset, MaxProfitBasedGreedy
>>> g = load_dataset("karate")
>>> sel = MaxProfitBasedGreedy(k=2).fit(g, eta=1.0)
>>> sel.seed_labels_
[33, 0]
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .diffusion import ICM, LTM
from .exact import DEFAULT_CAP, brute_force_opt
from .graph import Graph, compute_edge_probs, compute_thresholds, constant_interest
from .heuristics import HeuristicConfig, HeuristicOutcome, lbgh, mdfh, mpbgh, pbgh
from .validation import check_graph, check_interest, check_probs, check_thresholds

__all__ = [
    "SeedSelector",
    "LevelBasedGreedy",
    "MaxDegreeFirst",
    "ProfitBasedGreedy",
    "MaxProfitBasedGreedy",
    "BruteForceSelector",
    "make_model",
]


def make_model(
    g: Graph,
    eta: np.ndarray,
    model: str = "ltm",
    mechanism: str = "fixed:0.5",
    prob: str = "uniform:0.5",
    thresholds=None,
    probs=None,
    sel_reps: int = 20,
    eval_reps: int = 200,
    random_state: int = 0,
    aware_closure: bool = False,
) -> LTM | ICM:
    if model == "ltm":
        t = compute_thresholds(g, mechanism, eta) if thresholds is None else check_thresholds(thresholds, g)
        return LTM(t)
    if model == "icm":
        p = compute_edge_probs(g, prob, eta) if probs is None else check_probs(probs, g)
        return ICM(p, sel_reps=sel_reps, eval_reps=eval_reps, master_seed=random_state, aware_closure=aware_closure)
    raise ValueError(f"model must be 'ltm' or 'icm', got {model!r}")


class SeedSelector(BaseEstimator):
    """Base class; subclasses set ``_algorithm``."""

    _algorithm = None

    def __init__(
        self,
        k: int = 1,
        model: str = "ltm",
        mechanism: str = "fixed:0.5",
        prob: str = "uniform:0.5",
        sel_reps: int = 20,
        eval_reps: int = 200,
        random_state: int = 0,
        aware_closure: bool = False,
    ):
        self.k = k
        self.model = model
        self.mechanism = mechanism
        self.prob = prob
        self.sel_reps = sel_reps
        self.eval_reps = eval_reps
        self.random_state = random_state
        self.aware_closure = aware_closure

    def _resolve_eta(self, g: Graph, eta) -> np.ndarray:
        if eta is None:
            return constant_interest(g, 1.0)
        if np.isscalar(eta):
            return constant_interest(g, float(eta))
        return check_interest(eta, g)

    def fit(self, graph: Graph, eta=None, thresholds=None, probs=None):
        """Select seeds on ``graph``.

        ``eta`` may be a vector, a scalar (constant interest) or ``None``
        (all ones). Explicit ``thresholds``/``probs`` override the
        ``mechanism``/``prob`` settings.
        """
        g = check_graph(graph)
        eta = self._resolve_eta(g, eta)
        self.model_ = make_model(
            g, eta, self.model, self.mechanism, self.prob, thresholds, probs,
            self.sel_reps, self.eval_reps, self.random_state, self.aware_closure,
        )
        self.outcome_ = self._select(g, HeuristicConfig(self.k, self.model_, eta))
        self.graph_ = g
        self.eta_ = eta
        self.seeds_ = list(self.outcome_.seeds)
        self.seed_labels_ = g.to_labels(self.seeds_)
        self.interest_ = self.outcome_.interest
        return self

    def _select(self, g: Graph, cfg: HeuristicConfig) -> HeuristicOutcome:
        return type(self)._algorithm(g, cfg)

    def _check_fitted(self):
        if not hasattr(self, "seeds_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit first")

    def predict(self, graph: Graph | None = None) -> np.ndarray:
        """0/1 indicator of the vertices scored for the fitted seeds.

        Under ICM this is replicate 0 of the evaluation batch.
        """
        self._check_fitted()
        g = self.graph_ if graph is None else check_graph(graph)
        if g.n != self.graph_.n:
            raise ValueError("graph does not match the fitted vertex count")
        res = self.model_.trace(g, self.seeds_, self.eta_)
        mark = np.zeros(g.n, dtype=np.int64)
        mark[sorted(res.aware)] = 1
        return mark

    def score(self, graph: Graph | None = None, eta=None) -> float:
        """Total interest reached by the fitted seeds (mean under ICM)."""
        self._check_fitted()
        g = self.graph_ if graph is None else check_graph(graph)
        eta = self.eta_ if eta is None else self._resolve_eta(g, eta)
        return self.model_.evaluate(g, self.seeds_, eta).interest


class LevelBasedGreedy(SeedSelector):
    _algorithm = staticmethod(lbgh)


class MaxDegreeFirst(SeedSelector):
    _algorithm = staticmethod(mdfh)


class ProfitBasedGreedy(SeedSelector):
    _algorithm = staticmethod(pbgh)


class MaxProfitBasedGreedy(SeedSelector):
    _algorithm = staticmethod(mpbgh)


class BruteForceSelector(SeedSelector):
    """Exhaustive optimum; raises once ``C(n, k)`` exceeds ``cap``."""

    def __init__(
        self,
        k: int = 1,
        model: str = "ltm",
        mechanism: str = "fixed:0.5",
        prob: str = "uniform:0.5",
        sel_reps: int = 20,
        eval_reps: int = 200,
        random_state: int = 0,
        aware_closure: bool = False,
        cap: int = DEFAULT_CAP,
    ):
        super().__init__(k, model, mechanism, prob, sel_reps, eval_reps, random_state, aware_closure)
        self.cap = cap

    def _select(self, g: Graph, cfg: HeuristicConfig) -> HeuristicOutcome:
        seeds, _ = brute_force_opt(g, cfg.model, cfg.eta, cfg.k, cap=self.cap)
        ev = cfg.model.evaluate(g, seeds, cfg.eta)
        return HeuristicOutcome(seeds, ev.interest, ev.stddev, ev.aware_count, ev.reps)
