"""Benchmark edge lists.

Only ``karate`` ships with the package. Other networks (``jazz``, ``power``,
...) are looked up as ``<name>.txt`` in the directory named by the
``INTERESTMAX_DATA`` environment variable.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .graph import Graph, read_edge_list

DATA_ENV = "INTERESTMAX_DATA"


def dataset_path(name: str) -> Path:
    """File backing dataset ``name``; the environment directory wins over bundled data."""
    root = os.environ.get(DATA_ENV)
    if root:
        p = Path(root) / f"{name}.txt"
        if p.is_file():
            return p
    res = resources.files("interestmax.data").joinpath(f"{name}.txt")
    if res.is_file():
        return Path(str(res))
    raise FileNotFoundError(
        f"dataset {name!r} is not bundled; put {name}.txt (one 'u v' edge per line) "
        f"in a directory and point {DATA_ENV} at it"
    )


def load_dataset(name: str) -> Graph:
    return read_edge_list(dataset_path(name))
