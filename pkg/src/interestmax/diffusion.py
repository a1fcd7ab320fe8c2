"""Linear threshold and independent cascade diffusion.

Both models score a seed set by the total interest of the vertices it
reaches. Under LTM the scored set is the aware set: every spreader and every
neighbor of a spreader. Under ICM it is the active set, or the aware closure
of the active set when ``aware_closure`` is on.

ICM runs are reproducible. Cascades advance in waves; within a wave sources
are visited in ascending id order and each source draws one uniform double
per still-inactive neighbor, in ascending neighbor order, from its run's
``PCG64`` stream. Replicate ``j`` of a batch keyed by ``master_seed`` uses
``SeedSequence(master_seed, spawn_key=(*stream, j))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .graph import Graph
from .validation import check_interest, check_probs, check_seeds, check_thresholds

__all__ = [
    "DiffusionResult",
    "Evaluation",
    "LTM",
    "ICM",
    "interest_sum",
    "ltm_diffuse",
    "ltm_activation_rounds",
    "icm_diffuse",
    "icm_replicates",
    "icm_estimate",
    "replicate_stream",
]

# stream prefixes for the different consumers of one master seed
SELECTION_STREAM = (1,)
REFERENCE_STREAM = (2,)


@dataclass(frozen=True)
class DiffusionResult:
    seeds: tuple[int, ...]
    aware: frozenset[int]
    spreaders: frozenset[int]
    rounds: int
    interest: float
    model: str = "ltm"

    @property
    def active(self) -> frozenset[int]:
        return self.spreaders

    def to_record(self, g: Graph | None = None) -> dict:
        """JSON-ready dict; vertex ids become original labels when ``g`` is given."""
        def conv(vs):
            vs = sorted(vs)
            return g.to_labels(vs) if g is not None else list(vs)

        seeds = g.to_labels(self.seeds) if g is not None else list(self.seeds)
        key = "spreaders" if self.model == "ltm" else "active"
        return {
            "model": self.model,
            "seeds": seeds,
            "aware": conv(self.aware),
            key: conv(self.spreaders),
            "rounds": self.rounds,
            "interest": self.interest,
        }


def interest_sum(vertices, eta) -> float:
    """Total interest of ``vertices`` (an id iterable or a boolean mask).

    Summed with :func:`math.fsum`, so the result does not depend on the order
    in which the vertices are listed.
    """
    eta = np.asarray(eta, dtype=np.float64)
    if isinstance(vertices, np.ndarray) and vertices.dtype == bool:
        return math.fsum(eta[vertices].tolist())
    ids = list(vertices)
    if not ids:
        return 0.0
    return math.fsum(eta[ids].tolist())


def _closed_cover(g: Graph, mask: np.ndarray) -> np.ndarray:
    out = mask.copy()
    out[g.gather_neighbors(np.flatnonzero(mask))] = True
    return out


# -- LTM -------------------------------------------------------------------

def _ltm_waves(g: Graph, t: np.ndarray, seeds: Sequence[int]) -> tuple[np.ndarray, int]:
    n = g.n
    wave = np.full(n, -1, dtype=np.int64)
    frontier = np.unique(np.asarray(seeds, dtype=np.int64))
    wave[frontier] = 0
    counts = np.zeros(n, dtype=np.int64)
    r = 0
    while frontier.size:
        hit = g.gather_neighbors(frontier)
        if not hit.size:
            break
        counts += np.bincount(hit, minlength=n)
        cand = np.unique(hit)
        new = cand[(wave[cand] < 0) & (counts[cand] >= t[cand])]
        if not new.size:
            break
        r += 1
        wave[new] = r
        frontier = new
    return wave, r


def _ltm_masks(g: Graph, t: np.ndarray, seeds: Sequence[int]) -> tuple[np.ndarray, np.ndarray, int]:
    wave, rounds = _ltm_waves(g, t, seeds)
    spreaders = wave >= 0
    return spreaders, _closed_cover(g, spreaders), rounds


def ltm_activation_rounds(g: Graph, thresholds, seeds: Iterable[int]) -> np.ndarray:
    """Wave in which each vertex became a spreader (0 for seeds, -1 never).

    Waves are synchronous: a non-spreader joins wave ``r`` when at least
    ``t[u]`` of its neighbors were spreaders after wave ``r - 1``.
    """
    t = check_thresholds(thresholds, g)
    return _ltm_waves(g, t, check_seeds(seeds, g))[0]


def ltm_diffuse(g: Graph, thresholds, seeds: Iterable[int], eta=None) -> DiffusionResult:
    """Run LTM from ``seeds`` to its fixed point.

    A non-seed vertex becomes a spreader once at least ``thresholds[u]`` of
    its neighbors are spreaders; the fixed point does not depend on the order
    in which vertices are examined. ``rounds`` counts the waves that created
    new spreaders. Without ``eta`` every vertex is worth 1.
    """
    t = check_thresholds(thresholds, g)
    seeds = check_seeds(seeds, g)
    spreaders, aware, rounds = _ltm_masks(g, t, seeds)
    if eta is None:
        interest = float(aware.sum())
    else:
        interest = interest_sum(aware, check_interest(eta, g))
    return DiffusionResult(
        seeds=seeds,
        aware=frozenset(np.flatnonzero(aware).tolist()),
        spreaders=frozenset(np.flatnonzero(spreaders).tolist()),
        rounds=rounds,
        interest=interest,
        model="ltm",
    )


# -- ICM -------------------------------------------------------------------

def replicate_stream(master_seed: int, j: int, stream: tuple[int, ...] = ()) -> np.random.SeedSequence:
    return np.random.SeedSequence(int(master_seed), spawn_key=(*stream, int(j)))


def _arc_lists(g: Graph, probs: np.ndarray) -> tuple[list[float], ...]:
    flat = probs.tolist()
    ptr = g.indptr.tolist()
    return tuple(flat[ptr[u]:ptr[u + 1]] for u in range(g.n))


def _cascade(adj, plist, n: int, seeds: Sequence[int], rng: np.random.Generator) -> tuple[bytearray, int]:
    active = bytearray(n)
    for s in seeds:
        active[s] = 1
    frontier = sorted(set(seeds))
    rounds = 0
    while frontier:
        nxt = []
        for u in frontier:
            nb = adj[u]
            idx = [j for j, v in enumerate(nb) if not active[v]]
            if not idx:
                continue
            pu = plist[u]
            for j, d in zip(idx, rng.random(len(idx)).tolist()):
                if d < pu[j]:
                    v = nb[j]
                    active[v] = 1
                    nxt.append(v)
        if nxt:
            rounds += 1
        frontier = sorted(nxt)
    return active, rounds


def _scored_mask(g: Graph, active: bytearray, aware_closure: bool) -> np.ndarray:
    mask = np.frombuffer(bytes(active), dtype=np.uint8).astype(bool)
    return _closed_cover(g, mask) if aware_closure else mask


def icm_diffuse(
    g: Graph,
    probs,
    seeds: Iterable[int],
    seed: int | np.random.SeedSequence,
    eta=None,
    aware_closure: bool = False,
) -> DiffusionResult:
    """One independent cascade driven by ``PCG64(seed)``."""
    p = check_probs(probs, g)
    seeds = check_seeds(seeds, g)
    rng = np.random.Generator(np.random.PCG64(seed))
    active, rounds = _cascade(g.adj, _arc_lists(g, p), g.n, seeds, rng)
    scored = _scored_mask(g, active, aware_closure)
    interest = float(scored.sum()) if eta is None else interest_sum(scored, check_interest(eta, g))
    return DiffusionResult(
        seeds=seeds,
        aware=frozenset(np.flatnonzero(scored).tolist()),
        spreaders=frozenset(i for i, a in enumerate(active) if a),
        rounds=rounds,
        interest=interest,
        model="icm",
    )


def _icm_batch(g, plist, seeds, eta, reps, master_seed, stream, aware_closure):
    values = np.empty(reps)
    counts = np.empty(reps)
    for j in range(reps):
        rng = np.random.Generator(np.random.PCG64(replicate_stream(master_seed, j, stream)))
        active, _ = _cascade(g.adj, plist, g.n, seeds, rng)
        scored = _scored_mask(g, active, aware_closure)
        values[j] = math.fsum(eta[scored].tolist())
        counts[j] = scored.sum()
    return values, counts


def icm_replicates(
    g: Graph,
    probs,
    seeds: Iterable[int],
    eta,
    reps: int,
    master_seed: int,
    stream: tuple[int, ...] = (),
    aware_closure: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-replicate interest and scored-set size, indexed by replicate."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    p = check_probs(probs, g)
    eta = check_interest(eta, g)
    seeds = check_seeds(seeds, g)
    return _icm_batch(g, _arc_lists(g, p), seeds, eta, reps, master_seed, stream, aware_closure)


def _mean_std(values: np.ndarray) -> tuple[float, float]:
    mean = math.fsum(values.tolist()) / values.size
    std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return mean, std


def icm_estimate(
    g: Graph,
    probs,
    seeds: Iterable[int],
    eta,
    reps: int,
    master_seed: int,
    aware_closure: bool = False,
) -> tuple[float, float]:
    """Mean and sample standard deviation of the cascade interest.

    A single replicate reports a standard deviation of 0.
    """
    values, _ = icm_replicates(g, probs, seeds, eta, reps, master_seed, aware_closure=aware_closure)
    return _mean_std(values)


# -- model objects used by the heuristics ----------------------------------

class Evaluation(NamedTuple):
    interest: float
    stddev: float
    aware_count: float
    reps: int


@dataclass
class LTM:
    """Deterministic threshold diffusion with per-vertex thresholds."""

    thresholds: np.ndarray
    name = "ltm"

    def score(self, g: Graph, seeds: Sequence[int], eta: np.ndarray) -> tuple[float, float]:
        """``(interest, aware count)`` used while selecting seeds."""
        _, aware, _ = _ltm_masks(g, self.thresholds, seeds)
        return math.fsum(eta[aware].tolist()), float(aware.sum())

    def evaluate(self, g: Graph, seeds: Sequence[int], eta: np.ndarray) -> Evaluation:
        interest, count = self.score(g, seeds, eta)
        return Evaluation(interest, 0.0, count, 1)

    def reference_aware(self, g: Graph, seeds: Sequence[int], round_index: int) -> np.ndarray:
        return _ltm_masks(g, self.thresholds, seeds)[1]

    def trace(self, g: Graph, seeds: Sequence[int], eta: np.ndarray) -> DiffusionResult:
        return ltm_diffuse(g, self.thresholds, seeds, eta)

    def validate(self, g: Graph) -> None:
        self.thresholds = check_thresholds(self.thresholds, g)


@dataclass
class ICM:
    """Independent cascade with per-arc probabilities.

    Selection-time scores average ``sel_reps`` cascades that reuse the same
    replicate streams for every candidate seed set (common random numbers).
    Final evaluations average ``eval_reps`` cascades on the streams used by
    :func:`icm_estimate` with ``master_seed``.
    """

    probs: np.ndarray
    sel_reps: int = 20
    eval_reps: int = 200
    master_seed: int = 0
    aware_closure: bool = False
    name = "icm"
    _plist: tuple | None = field(default=None, init=False, repr=False)
    _graph: Graph | None = field(default=None, init=False, repr=False)

    def _arcs(self, g: Graph):
        if self._graph is not g:
            self._plist = _arc_lists(g, np.asarray(self.probs, dtype=np.float64))
            self._graph = g
        return self._plist

    def score(self, g: Graph, seeds: Sequence[int], eta: np.ndarray) -> tuple[float, float]:
        values, counts = _icm_batch(
            g, self._arcs(g), seeds, eta, self.sel_reps, self.master_seed, SELECTION_STREAM, self.aware_closure
        )
        return math.fsum(values.tolist()) / values.size, math.fsum(counts.tolist()) / counts.size

    def evaluate(self, g: Graph, seeds: Sequence[int], eta: np.ndarray) -> Evaluation:
        values, counts = _icm_batch(
            g, self._arcs(g), seeds, eta, self.eval_reps, self.master_seed, (), self.aware_closure
        )
        mean, std = _mean_std(values)
        return Evaluation(mean, std, math.fsum(counts.tolist()) / counts.size, self.eval_reps)

    def reference_aware(self, g: Graph, seeds: Sequence[int], round_index: int) -> np.ndarray:
        ss = replicate_stream(self.master_seed, round_index, REFERENCE_STREAM)
        active, _ = _cascade(g.adj, self._arcs(g), g.n, seeds, np.random.Generator(np.random.PCG64(ss)))
        return _scored_mask(g, active, self.aware_closure)

    def trace(self, g: Graph, seeds: Sequence[int], eta: np.ndarray) -> DiffusionResult:
        """Replicate 0 of the evaluation batch."""
        return icm_diffuse(g, self.probs, seeds, replicate_stream(self.master_seed, 0), eta, self.aware_closure)

    def validate(self, g: Graph) -> None:
        self.probs = check_probs(self.probs, g)
        if self.sel_reps < 1 or self.eval_reps < 1:
            raise ValueError("sel_reps and eval_reps must be at least 1")
