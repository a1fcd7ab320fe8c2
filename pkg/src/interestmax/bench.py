"""Experiment runner producing one CSV row per (algorithm, k)."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from .diffusion import ICM, LTM
from .estimators import make_model
from .exact import EnumerationCapError, brute_force_opt
from .graph import Graph, assign_interest, read_edge_list
from .heuristics import HEURISTICS, HeuristicConfig, HeuristicOutcome

__all__ = ["CSV_HEADER", "ALGORITHMS", "ExperimentConfig", "ResultRow", "run_experiment", "write_csv", "to_csv"]

CSV_HEADER = [
    "dataset", "algo", "model", "setting", "k", "reps", "mean_interest",
    "stddev_interest", "aware_count", "seeds", "elapsed_ms",
]
ALGORITHMS = ("lbgh", "mdfh", "pbgh", "mpbgh", "brute")

# evaluation cascades per ICM row unless overridden
DEFAULT_EVAL_REPS = 200
MPBGH_EVAL_REPS = 20


@dataclass
class ExperimentConfig:
    graph_path: str
    algorithms: list[str] = field(default_factory=lambda: ["lbgh", "mdfh", "pbgh", "mpbgh"])
    model: str = "ltm"
    mechanism: str | None = None
    prob: str | None = None
    eta_mode: str = "random:0"
    k_list: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    reps: int | None = None
    sel_reps: int = 20
    master_seed: int = 0
    aware_closure: bool = False
    brute_cap: int = 2_000_000

    def validate(self) -> None:
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f"unknown algorithm(s): {', '.join(unknown)}")
        if not self.algorithms:
            raise ValueError("no algorithms given")
        if self.model not in ("ltm", "icm"):
            raise ValueError(f"model must be ltm or icm, got {self.model!r}")
        if self.model == "ltm" and self.prob is not None:
            raise ValueError("--prob only applies to the icm model")
        if self.model == "icm" and self.mechanism is not None:
            raise ValueError("--mechanism only applies to the ltm model")
        if self.model == "ltm" and self.aware_closure:
            raise ValueError("--icm-aware-closure only applies to the icm model")
        if not self.k_list or any(k < 1 for k in self.k_list):
            raise ValueError("k values must be positive")
        if any(b <= a for a, b in zip(self.k_list, self.k_list[1:])):
            raise ValueError("k values must be strictly ascending")
        if self.reps is not None and self.reps < 1:
            raise ValueError("reps must be at least 1")
        if self.sel_reps < 1:
            raise ValueError("sel-reps must be at least 1")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def setting(self) -> str:
        if self.model == "ltm":
            return self.mechanism or "fixed:0.5"
        return self.prob or "uniform:0.5"


@dataclass
class ResultRow:
    dataset: str
    algo: str
    model: str
    setting: str
    k: int
    reps: int
    mean_interest: float
    stddev_interest: float
    aware_count: float
    seeds: list[int]
    elapsed_ms: float
    error: str | None = None

    def as_csv(self) -> list[str]:
        if self.error:
            nums = ["nan", "nan", "nan"]
            seeds = f"ERROR:{self.error}"
        else:
            count = str(int(self.aware_count)) if self.model == "ltm" else f"{self.aware_count:.4f}"
            nums = [f"{self.mean_interest:.6f}", f"{self.stddev_interest:.6f}", count]
            seeds = " ".join(map(str, self.seeds))
        return [self.dataset, self.algo, self.model, self.setting, str(self.k), str(self.reps), *nums, seeds,
                f"{self.elapsed_ms:.3f}"]


def _model_for(cfg: ExperimentConfig, g: Graph, eta, algo: str) -> LTM | ICM:
    eval_reps = cfg.reps or (MPBGH_EVAL_REPS if algo == "mpbgh" else DEFAULT_EVAL_REPS)
    return make_model(
        g, eta, cfg.model, cfg.mechanism or "fixed:0.5", cfg.prob or "uniform:0.5",
        sel_reps=cfg.sel_reps, eval_reps=eval_reps, random_state=cfg.master_seed,
        aware_closure=cfg.aware_closure,
    )


def _brute(g, model, eta, k, cap) -> HeuristicOutcome:
    t0 = time.perf_counter()
    seeds, _ = brute_force_opt(g, model, eta, k, cap=cap)
    ev = model.evaluate(g, seeds, eta)
    return HeuristicOutcome(seeds, ev.interest, ev.stddev, ev.aware_count, ev.reps,
                            elapsed=time.perf_counter() - t0)


def run_experiment(cfg: ExperimentConfig, trace: TextIO | None = None) -> list[ResultRow]:
    """Run every (algorithm, k) pair; seeds are selected from scratch for each k.

    When ``trace`` is given, one JSON line per row describes the diffusion of
    the selected seeds (replicate 0 under ICM).
    """
    cfg.validate()
    g = read_edge_list(cfg.graph_path)
    eta = assign_interest(g, cfg.eta_mode)
    dataset = Path(cfg.graph_path).stem
    rows = []
    for algo in cfg.algorithms:
        model = _model_for(cfg, g, eta, algo)
        model.validate(g)
        for k in cfg.k_list:
            try:
                if algo == "brute":
                    out = _brute(g, model, eta, k, cfg.brute_cap)
                else:
                    out = HEURISTICS[algo](g, HeuristicConfig(k, model, eta))
            except EnumerationCapError:
                rows.append(ResultRow(dataset, algo, cfg.model, cfg.setting, k, model_reps(model), math.nan,
                                      math.nan, math.nan, [], 0.0, error="cap_exceeded"))
                continue
            rows.append(ResultRow(
                dataset, algo, cfg.model, cfg.setting, k, out.reps, out.interest, out.stddev,
                out.aware_count, g.to_labels(out.seeds), out.elapsed * 1000.0,
            ))
            if trace is not None:
                rec = model.trace(g, out.seeds, eta).to_record(g)
                trace.write(json.dumps({"dataset": dataset, "algo": algo, "k": k, **rec}) + "\n")
    return rows


def model_reps(model) -> int:
    return getattr(model, "eval_reps", 1)


def write_csv(rows: list[ResultRow], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.as_csv())


def to_csv(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()
