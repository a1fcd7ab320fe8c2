"""Exact and ground-truth machinery.

* :func:`brute_force_opt` enumerates every seed set of size ``k``.
* :func:`ilp_export` builds the 0/1 integer program for the LTM problem and
  :func:`render_lp` writes it in the CPLEX LP text format.
* :func:`verify_assignment` checks that the LTM trace of a seed set satisfies
  the exported model, without a solver.
* :func:`mcp_reduce` maps a maximum-coverage instance to an LTM instance.

Integer program, for horizon ``H``, with binaries ``A[u][r]`` (``u`` is a
spreader after wave ``r``) and ``I[u]`` (``u`` is aware at the end)::

    maximize   sum_u eta[u] * I[u]
    budget     sum_u A[u][0] <= k
    thr_u_r    t[u] * (A[u][r] - A[u][0]) <= sum_{v in N(u)} A[v][r-1]
    mono_u_r   A[u][r-1] <= A[u][r]
    aw_lo_v    I[v] <= A[v][0] + sum_{u in N[v]} A[u][H]
    aw_hi_v    A[v][0] + sum_{u in N[v]} A[u][H] <= (deg(v) + 2) * I[v]

for ``r = 1..H``. All constraints are stored as ``sum coef * x <= rhs``.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

from .diffusion import ICM, LTM, ltm_activation_rounds, ltm_diffuse
from .graph import Graph
from .validation import check_budget, check_interest, check_seeds, check_thresholds

__all__ = [
    "EnumerationCapError",
    "DEFAULT_CAP",
    "brute_force_opt",
    "Constraint",
    "IlpModel",
    "ilp_export",
    "render_lp",
    "trace_assignment",
    "verify_assignment",
    "McpInstance",
    "ReducedInstance",
    "mcp_reduce",
    "covers",
]

DEFAULT_CAP = 2_000_000


class EnumerationCapError(ValueError):
    pass


def brute_force_opt(
    g: Graph,
    model: LTM | ICM,
    eta,
    k: int,
    cap: int = DEFAULT_CAP,
) -> tuple[tuple[int, ...], float]:
    """Best seed set of size ``min(k, n)`` by exhaustive enumeration.

    Subsets are visited in lexicographic order and only a strictly better
    value replaces the incumbent, so ties go to the lexicographically
    smallest set. ICM sets are scored by their mean over ``eval_reps``
    cascades with the model's fixed master seed.
    """
    eta = check_interest(eta, g)
    k = min(check_budget(k), g.n)
    total = math.comb(g.n, k)
    if total > cap:
        raise EnumerationCapError(
            f"C({g.n}, {k}) = {total} seed sets exceeds the enumeration cap of {cap}; reduce n or k"
        )
    model.validate(g)
    best_set: tuple[int, ...] = ()
    best = -math.inf
    for combo in itertools.combinations(range(g.n), k):
        value = model.evaluate(g, combo, eta).interest
        if value > best:
            best, best_set = value, combo
    return best_set, float(best) if k else 0.0


# -- integer program -------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[int, float], ...]
    rhs: float

    def lhs(self, x: np.ndarray) -> float:
        return math.fsum(c * x[i] for i, c in self.terms)


@dataclass
class IlpModel:
    n: int
    horizon: int
    k: int
    var_names: list[str]
    objective: dict[int, float]
    constraints: list[Constraint] = field(default_factory=list)

    def a(self, u: int, r: int) -> int:
        """Column of ``A[u][r]``."""
        return u * (self.horizon + 1) + r

    def i(self, u: int) -> int:
        """Column of ``I[u]``."""
        return self.n * (self.horizon + 1) + u

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def family(self, prefix: str) -> list[Constraint]:
        return [c for c in self.constraints if c.name == prefix or c.name.startswith(prefix + "_")]

    def to_dense(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(c, A_ub, b_ub)`` with ``A_ub @ x <= b_ub`` and objective ``c @ x``."""
        c = np.zeros(self.num_vars)
        for j, w in self.objective.items():
            c[j] = w
        A = np.zeros((len(self.constraints), self.num_vars))
        b = np.zeros(len(self.constraints))
        for row, con in enumerate(self.constraints):
            for j, w in con.terms:
                A[row, j] += w
            b[row] = con.rhs
        return c, A, b

    def violations(self, x: np.ndarray) -> list[str]:
        return [con.name for con in self.constraints if con.lhs(x) > con.rhs + 1e-9]

    def objective_value(self, x: np.ndarray) -> float:
        return math.fsum(w * x[j] for j, w in self.objective.items())


def ilp_export(g: Graph, thresholds, eta, k: int, horizon: int | None = None) -> IlpModel:
    t = check_thresholds(thresholds, g)
    eta = check_interest(eta, g)
    k = check_budget(k)
    H = g.n if horizon is None else int(horizon)
    if H < 1:
        raise ValueError("horizon must be at least 1")
    n = g.n
    names = [f"A_{g.label(u)}_{r}" for u in range(n) for r in range(H + 1)]
    names += [f"I_{g.label(u)}" for u in range(n)]
    model = IlpModel(n=n, horizon=H, k=k, var_names=names, objective={})
    a, i = model.a, model.i
    model.objective = {i(u): float(eta[u]) for u in range(n)}

    cons = model.constraints
    cons.append(Constraint("budget", tuple((a(u, 0), 1.0) for u in range(n)), float(k)))
    for u in range(n):
        lab = g.label(u)
        tu = float(t[u])
        for r in range(1, H + 1):
            terms = [(a(u, r), tu), (a(u, 0), -tu)] + [(a(v, r - 1), -1.0) for v in g.adj[u]]
            cons.append(Constraint(f"thr_{lab}_{r}", tuple(terms), 0.0))
    for u in range(n):
        lab = g.label(u)
        for r in range(1, H + 1):
            cons.append(Constraint(f"mono_{lab}_{r}", ((a(u, r - 1), 1.0), (a(u, r), -1.0)), 0.0))
    for v in range(n):
        closed = sorted((v, *g.adj[v]))
        reach = [(a(v, 0), 1.0)] + [(a(u, H), 1.0) for u in closed]
        cons.append(Constraint(f"aw_lo_{g.label(v)}", ((i(v), 1.0),) + tuple((j, -w) for j, w in reach), 0.0))
    for v in range(n):
        closed = sorted((v, *g.adj[v]))
        reach = [(a(v, 0), 1.0)] + [(a(u, H), 1.0) for u in closed]
        big = float(len(closed) + 1)
        cons.append(Constraint(f"aw_hi_{g.label(v)}", tuple(reach) + ((i(v), -big),), 0.0))
    return model


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _expr(terms, names, per_line: int = 8) -> str:
    parts = []
    for idx, (j, w) in enumerate(terms):
        sign = "-" if w < 0 else "+"
        mag = abs(w)
        coef = "" if mag == 1 else _num(mag) + " "
        if idx == 0:
            parts.append(("-" if w < 0 else "") + coef + names[j])
        else:
            parts.append(f"{sign} {coef}{names[j]}")
    lines = [" ".join(parts[s:s + per_line]) for s in range(0, len(parts), per_line)]
    return "\n   ".join(lines) if lines else "0"


def render_lp(model: IlpModel) -> str:
    """CPLEX LP text of ``model``; identical input gives identical bytes."""
    out = io.StringIO()
    out.write(f"\\ interest maximization, n={model.n} k={model.k} horizon={model.horizon}\n")
    out.write("Maximize\n")
    obj = sorted(model.objective.items())
    out.write(f" obj: {_expr(obj, model.var_names)}\n")
    out.write("Subject To\n")
    for con in model.constraints:
        out.write(f" {con.name}: {_expr(con.terms, model.var_names)} <= {_num(con.rhs)}\n")
    out.write("Binaries\n")
    names = model.var_names
    for s in range(0, len(names), 10):
        out.write(" " + " ".join(names[s:s + 10]) + "\n")
    out.write("End\n")
    return out.getvalue()


def trace_assignment(model: IlpModel, g: Graph, thresholds, seeds: Iterable[int]) -> np.ndarray:
    """0/1 vector induced by running LTM from ``seeds``.

    ``A[u][r] = 1`` iff ``u`` is a spreader after wave ``r``; ``I[u] = 1`` iff
    ``u`` is aware at the fixed point.
    """
    seeds = check_seeds(seeds, g)
    wave = ltm_activation_rounds(g, thresholds, seeds)
    x = np.zeros(model.num_vars)
    for u in range(g.n):
        if wave[u] >= 0:
            for r in range(int(wave[u]), model.horizon + 1):
                x[model.a(u, r)] = 1.0
    aware = ltm_diffuse(g, thresholds, seeds).aware
    for u in aware:
        x[model.i(u)] = 1.0
    return x


def verify_assignment(model: IlpModel, g: Graph, thresholds, eta, seeds: Iterable[int]) -> tuple[bool, float]:
    """``(feasible, objective)`` of the LTM trace of ``seeds`` in ``model``.

    Exact when the horizon covers every wave of the diffusion (``H = n``
    always does).
    """
    x = trace_assignment(model, g, thresholds, seeds)
    return not model.violations(x), model.objective_value(x)


# -- maximum coverage reduction --------------------------------------------

@dataclass(frozen=True)
class McpInstance:
    universe: tuple[Hashable, ...]
    subsets: tuple[frozenset, ...]
    k: int
    l: int

    def __init__(self, universe: Sequence, subsets: Sequence[Iterable], k: int, l: int):
        universe = tuple(universe)
        subsets = tuple(frozenset(s) for s in subsets)
        if len(set(universe)) != len(universe):
            raise ValueError("universe elements must be distinct")
        stray = set().union(*subsets) - set(universe) if subsets else set()
        if stray:
            raise ValueError(f"subset elements not in the universe: {sorted(map(str, stray))}")
        if not 1 <= k <= len(subsets):
            raise ValueError(f"k={k} must be between 1 and the number of subsets ({len(subsets)})")
        if not 1 <= l <= len(universe):
            raise ValueError(f"l={l} must be between 1 and |U| ({len(universe)})")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "subsets", subsets)
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "l", int(l))


def covers(inst: McpInstance) -> bool:
    """Whether some ``k`` subsets cover at least ``l`` elements (direct enumeration)."""
    for combo in itertools.combinations(inst.subsets, inst.k):
        if len(frozenset().union(*combo)) >= inst.l:
            return True
    return False


@dataclass(frozen=True)
class ReducedInstance:
    graph: Graph
    thresholds: np.ndarray
    eta: np.ndarray
    k: int
    target: int
    names: tuple[str, ...]

    def __iter__(self):
        return iter((self.graph, self.thresholds, self.eta, self.k, self.target))


def mcp_reduce(inst: McpInstance) -> ReducedInstance:
    """Bipartite LTM instance: subset vertices ``0..m-1``, then element vertices.

    Thresholds equal degrees (an isolated vertex gets 1) and every interest
    value is 1. Some ``k`` subsets cover ``l`` elements iff some ``k`` seeds
    make at least ``k + l`` vertices aware.
    """
    m = len(inst.subsets)
    pos = {e: m + j for j, e in enumerate(inst.universe)}
    edges = [(j, pos[e]) for j, s in enumerate(inst.subsets) for e in s]
    g = Graph.from_edges(edges, n=m + len(inst.universe))
    t = np.maximum(g.degree, 1).astype(np.int64)
    t.setflags(write=False)
    eta = np.ones(g.n)
    eta.setflags(write=False)
    names = tuple(f"S{j + 1}" for j in range(m)) + tuple(str(e) for e in inst.universe)
    return ReducedInstance(g, t, eta, inst.k, inst.k + inst.l, names)
