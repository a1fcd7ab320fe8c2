"""Graph ingestion, per-vertex attributes and network statistics.

Graphs are undirected and simple, stored in compressed sparse row form with
dense vertex ids ``0..n-1``. Original input labels are kept in ``labels`` and
``id_map`` so every report can be translated back.

Per-vertex attributes are plain read-only numpy arrays:

* interest values ``eta``: float64, length ``n``, each in ``(0, 1]``
* thresholds ``t``: int64, length ``n``, each ``>= 1``
* edge probabilities ``p``: float64, length ``2m``, aligned with
  ``graph.indices`` so ``p[graph.indptr[u] + j]`` is the probability on the
  arc ``u -> graph.indices[graph.indptr[u] + j]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

__all__ = [
    "EdgeListParseError",
    "Graph",
    "Stats",
    "load_edge_list",
    "read_edge_list",
    "write_edge_list",
    "random_interest",
    "constant_interest",
    "read_interest",
    "assign_interest",
    "fixed_ratio_thresholds",
    "interest_thresholds",
    "compute_thresholds",
    "uniform_edge_probs",
    "interest_scaled_edge_probs",
    "compute_edge_probs",
    "graph_stats",
]

COMMENT_PREFIXES = ("#", "%")


class EdgeListParseError(ValueError):
    """Raised for a malformed edge-list or interest file line."""

    def __init__(self, lineno: int, line: str, reason: str):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line.strip()!r}")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph in CSR form.

    Build one with :meth:`from_edges` or :func:`load_edge_list` rather than
    calling the constructor directly.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray
    id_map: dict[int, int] = field(repr=False)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]],
        n: int | None = None,
        labels: Iterable[int] | None = None,
    ) -> "Graph":
        """Build a graph on dense ids from ``(u, v)`` pairs.

        Self-loops are dropped and duplicate or reversed edges merged. ``n``
        defaults to one more than the largest id seen; ``labels`` defaults to
        the dense ids themselves.
        """
        pairs = set()
        top = -1
        for u, v in edges:
            u, v = int(u), int(v)
            if u < 0 or v < 0:
                raise ValueError(f"negative vertex id in edge ({u}, {v})")
            top = max(top, u, v)
            if u != v:
                pairs.add((u, v) if u < v else (v, u))
        if n is None:
            n = top + 1
        if n < 1:
            raise ValueError("empty graph")
        if top >= n:
            raise ValueError(f"edge endpoint {top} out of range for n={n}")

        if pairs:
            arr = np.array(sorted(pairs), dtype=np.int64)
            src = np.concatenate([arr[:, 0], arr[:, 1]])
            dst = np.concatenate([arr[:, 1], arr[:, 0]])
        else:
            src = dst = np.zeros(0, dtype=np.int64)
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])

        lab = np.arange(n, dtype=np.int64) if labels is None else np.array(list(labels), dtype=np.int64)
        if lab.shape != (n,):
            raise ValueError(f"expected {n} labels, got {lab.size}")
        id_map = {int(x): i for i, x in enumerate(lab)}
        if len(id_map) != n:
            raise ValueError("labels must be distinct")
        return cls(_frozen(indptr), _frozen(dst.astype(np.int64)), _frozen(lab), id_map)

    @property
    def n(self) -> int:
        return self.indptr.size - 1

    @property
    def m(self) -> int:
        return self.indices.size // 2

    @cached_property
    def degree(self) -> np.ndarray:
        return _frozen(np.diff(self.indptr))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Neighbor tuples as Python ints, for loops where numpy overhead dominates."""
        ind = self.indices.tolist()
        ptr = self.indptr.tolist()
        return tuple(tuple(ind[ptr[u]:ptr[u + 1]]) for u in range(self.n))

    @cached_property
    def arc_source(self) -> np.ndarray:
        return _frozen(np.repeat(np.arange(self.n, dtype=np.int64), self.degree))

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def edges(self) -> list[tuple[int, int]]:
        """Each undirected edge once as ``(u, v)`` with ``u < v``, sorted."""
        src = self.arc_source
        keep = src < self.indices
        return list(zip(src[keep].tolist(), self.indices[keep].tolist()))

    def label(self, u: int) -> int:
        return int(self.labels[u])

    def to_labels(self, vertices: Iterable[int]) -> list[int]:
        return [int(self.labels[u]) for u in vertices]

    def gather_neighbors(self, vertices: np.ndarray) -> np.ndarray:
        """Concatenated neighbor lists of ``vertices`` (with repetition)."""
        vertices = np.asarray(vertices, dtype=np.int64)
        lengths = self.degree[vertices]
        total = int(lengths.sum())
        if total == 0:
            return np.zeros(0, dtype=np.int64)
        starts = self.indptr[vertices]
        offsets = np.repeat(starts - np.cumsum(lengths) + lengths, lengths)
        return self.indices[offsets + np.arange(total)]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def load_edge_list(source: TextIO | Iterable[str]) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` or ``%`` and blank lines are ignored. Labels
    are remapped to dense ids in first-seen order. A self-loop line ``u u``
    still registers ``u`` as a vertex, which is how isolated vertices are
    written.
    """
    id_map: dict[int, int] = {}
    edges = []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIXES):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListParseError(lineno, line, "expected two integer labels")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(lineno, line, "labels must be integers") from None
        if a < 0 or b < 0:
            raise EdgeListParseError(lineno, line, "labels must be non-negative")
        u = id_map.setdefault(a, len(id_map))
        v = id_map.setdefault(b, len(id_map))
        edges.append((u, v))
    if not id_map:
        raise ValueError("empty graph")
    return Graph.from_edges(edges, n=len(id_map), labels=id_map.keys())


def read_edge_list(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return load_edge_list(fh)


def write_edge_list(g: Graph, out: TextIO) -> None:
    """Serialize ``g`` so that :func:`load_edge_list` restores the same dense ids.

    Vertex ``v`` is written in ascending id order, as ``v u`` for each smaller
    neighbor ``u``; a vertex with no smaller neighbor is declared by a
    self-loop line instead.
    """
    for v in range(g.n):
        lv = g.label(v)
        smaller = [u for u in g.adj[v] if u < v]
        if not smaller:
            out.write(f"{lv} {lv}\n")
        for u in smaller:
            out.write(f"{lv} {g.label(u)}\n")


# -- interest values -------------------------------------------------------

def _check_interest_values(eta: np.ndarray) -> np.ndarray:
    if not np.all((eta > 0.0) & (eta <= 1.0)):
        bad = int(np.flatnonzero(~((eta > 0.0) & (eta <= 1.0)))[0])
        raise ValueError(f"interest value {eta[bad]!r} of vertex {bad} outside (0, 1]")
    return _frozen(eta)


def random_interest(g: Graph, seed: int) -> np.ndarray:
    """Uniform interest values on ``(0, 1]``.

    Draws ``u`` from ``numpy.random.Generator(PCG64(seed)).random`` (53-bit
    doubles on ``[0, 1)``) and returns ``1 - u``.
    """
    rng = np.random.Generator(np.random.PCG64(_u64(seed)))
    return _check_interest_values(1.0 - rng.random(g.n))


def constant_interest(g: Graph, c: float) -> np.ndarray:
    if not 0.0 < c <= 1.0:
        raise ValueError(f"constant interest {c!r} outside (0, 1]")
    return _frozen(np.full(g.n, float(c)))


def read_interest(g: Graph, source: TextIO | Iterable[str]) -> np.ndarray:
    """Read ``label value`` rows; every vertex of ``g`` must be covered."""
    eta = np.full(g.n, np.nan)
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIXES):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListParseError(lineno, line, "expected 'label value'")
        try:
            label, value = int(tokens[0]), float(tokens[1])
        except ValueError:
            raise EdgeListParseError(lineno, line, "bad label or value") from None
        if label not in g.id_map:
            raise EdgeListParseError(lineno, line, f"unknown vertex label {label}")
        if not 0.0 < value <= 1.0:
            raise EdgeListParseError(lineno, line, "interest value outside (0, 1]")
        eta[g.id_map[label]] = value
    missing = np.flatnonzero(np.isnan(eta))
    if missing.size:
        raise ValueError(f"interest file is missing vertex label {g.label(int(missing[0]))}")
    return _frozen(eta)


def assign_interest(g: Graph, mode: str) -> np.ndarray:
    """Dispatch on a ``random:SEED``, ``const:C`` or ``file:PATH`` token."""
    kind, _, arg = mode.partition(":")
    if kind == "random":
        return random_interest(g, int(arg))
    if kind in ("const", "constant"):
        return constant_interest(g, float(arg))
    if kind == "file":
        with open(arg, encoding="utf-8") as fh:
            return read_interest(g, fh)
    raise ValueError(f"unknown interest mode {mode!r}")


def _u64(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed {seed} is not an unsigned 64-bit integer")
    return seed


# -- thresholds ------------------------------------------------------------

def fixed_ratio_thresholds(g: Graph, ratio: float) -> np.ndarray:
    if not 0.0 < ratio <= 1.0:
        raise ValueError(f"threshold ratio {ratio!r} outside (0, 1]")
    t = [max(1, math.ceil(d * ratio)) for d in g.degree.tolist()]
    return _frozen(np.array(t, dtype=np.int64))


def interest_thresholds(g: Graph, eta: np.ndarray) -> np.ndarray:
    # eta == 1 gives ceil(0) = 0; clamped to keep thresholds positive
    t = [max(1, math.ceil(d * (1.0 - e))) for d, e in zip(g.degree.tolist(), np.asarray(eta).tolist())]
    return _frozen(np.array(t, dtype=np.int64))


def compute_thresholds(g: Graph, mechanism: str, eta: np.ndarray | None = None) -> np.ndarray:
    """Dispatch on a ``fixed:R`` or ``interest`` token."""
    kind, _, arg = mechanism.partition(":")
    if kind == "fixed":
        return fixed_ratio_thresholds(g, float(arg) if arg else 0.5)
    if kind == "interest":
        if eta is None:
            raise ValueError("interest-based thresholds need interest values")
        return interest_thresholds(g, eta)
    raise ValueError(f"unknown threshold mechanism {mechanism!r}")


# -- edge probabilities ----------------------------------------------------

def uniform_edge_probs(g: Graph, p: float) -> np.ndarray:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p!r} outside [0, 1]")
    return _frozen(np.full(g.indices.size, float(p)))


def interest_scaled_edge_probs(g: Graph, c: float, eta: np.ndarray) -> np.ndarray:
    """Arc ``u -> v`` gets ``c * eta[u]``."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"scale {c!r} outside [0, 1]")
    return _frozen(c * np.asarray(eta, dtype=np.float64)[g.arc_source])


def compute_edge_probs(g: Graph, setting: str, eta: np.ndarray | None = None) -> np.ndarray:
    """Dispatch on a ``uniform:P`` or ``interest:C`` token."""
    kind, _, arg = setting.partition(":")
    if kind == "uniform":
        return uniform_edge_probs(g, float(arg))
    if kind == "interest":
        if eta is None:
            raise ValueError("interest-scaled probabilities need interest values")
        return interest_scaled_edge_probs(g, float(arg) if arg else 0.5, eta)
    raise ValueError(f"unknown probability setting {setting!r}")


# -- statistics ------------------------------------------------------------

@dataclass(frozen=True)
class Stats:
    nodes: int
    edges: int
    density: float
    avg_degree: float
    avg_clustering: float

    def __str__(self) -> str:
        return (
            f"nodes={self.nodes} edges={self.edges} density={self.density:.4f} "
            f"avg_degree={self.avg_degree:.4f} avg_clustering={self.avg_clustering:.4f}"
        )


def graph_stats(g: Graph) -> Stats:
    n, m = g.n, g.m
    nbrs = [set(a) for a in g.adj]
    local = []
    for u in range(n):
        d = len(nbrs[u])
        if d < 2:
            local.append(0.0)
            continue
        links = sum(len(nbrs[u] & nbrs[v]) for v in nbrs[u]) // 2
        local.append(2.0 * links / (d * (d - 1)))
    return Stats(
        nodes=n,
        edges=m,
        density=2.0 * m / (n * (n - 1)) if n > 1 else 0.0,
        avg_degree=2.0 * m / n,
        avg_clustering=math.fsum(local) / n,
    )
