"""Input checks shared by the diffusion, heuristic and estimator layers."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .graph import Graph


def check_graph(g) -> Graph:
    if not isinstance(g, Graph):
        raise TypeError(f"expected a Graph, got {type(g).__name__}")
    return g


def check_interest(eta, g: Graph) -> np.ndarray:
    eta = np.asarray(eta, dtype=np.float64)
    if eta.shape != (g.n,):
        raise ValueError(f"interest vector has shape {eta.shape}, expected ({g.n},)")
    if not np.all((eta > 0.0) & (eta <= 1.0)):
        raise ValueError("interest values must lie in (0, 1]")
    return eta


def check_thresholds(t, g: Graph) -> np.ndarray:
    t = np.asarray(t)
    if t.shape != (g.n,):
        raise ValueError(f"threshold vector has shape {t.shape}, expected ({g.n},)")
    if not np.issubdtype(t.dtype, np.integer):
        if not np.all(t == np.round(t)):
            raise ValueError("thresholds must be integers")
        t = t.astype(np.int64)
    if np.any(t < 1):
        raise ValueError("thresholds must be positive")
    return t.astype(np.int64, copy=False)


def check_probs(p, g: Graph) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.shape != g.indices.shape:
        raise ValueError(f"probability vector has shape {p.shape}, expected one entry per arc {g.indices.shape}")
    if np.any((p < 0.0) | (p > 1.0)):
        raise ValueError("edge probabilities must lie in [0, 1]")
    return p


def check_seeds(seeds: Iterable[int], g: Graph) -> tuple[int, ...]:
    """Distinct in-range seed ids, insertion order preserved."""
    out = []
    seen = set()
    for s in seeds:
        s = int(s)
        if not 0 <= s < g.n:
            raise ValueError(f"seed id {s} out of range for n={g.n}")
        if s in seen:
            raise ValueError(f"duplicate seed id {s}")
        seen.add(s)
        out.append(s)
    return tuple(out)


def check_budget(k) -> int:
    if int(k) != k or k < 0:
        raise ValueError(f"seed budget must be a non-negative integer, got {k!r}")
    return int(k)
