"""Lookup of the reference networks listed in ``data/manifest.json``.

Edge-list files are searched for in ``$DSCENTRALITY_DATA`` first and then in
the package's ``data`` directory. Nothing is downloaded at runtime.
"""

from __future__ import annotations

import hashlib
import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import DatasetUnavailableError
from .graph import Graph, GraphStats, load_edge_list

ENV_VAR = "DSCENTRALITY_DATA"


@lru_cache(maxsize=1)
def manifest() -> dict:
    text = resources.files(__package__).joinpath("data/manifest.json").read_text("utf-8")
    return json.loads(text)["datasets"]


def names() -> list[str]:
    return list(manifest())


def _search_dirs() -> list[Path]:
    dirs = []
    if os.environ.get(ENV_VAR):
        dirs.append(Path(os.environ[ENV_VAR]))
    dirs.append(Path(str(resources.files(__package__).joinpath("data"))))
    return dirs


def dataset_path(name: str) -> Path:
    entries = manifest()
    if name not in entries:
        raise KeyError(f"unknown dataset {name!r}; known: {', '.join(entries)}")
    fname = entries[name]["file"]
    for d in _search_dirs():
        path = d / fname
        if path.is_file():
            return path
    raise DatasetUnavailableError(
        f"dataset {name!r} is not available: place its edge list as {fname!r} in "
        f"${ENV_VAR} or {_search_dirs()[-1]} (source: {entries[name]['source_url']})"
    )


def available() -> list[str]:
    out = []
    for name in manifest():
        try:
            dataset_path(name)
        except DatasetUnavailableError:
            continue
        out.append(name)
    return out


def sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def load_dataset(name: str) -> Graph:
    path = dataset_path(name)
    expected = manifest()[name].get("sha256")
    if expected and sha256(path) != expected:
        raise DatasetUnavailableError(f"{path} does not match the manifest checksum")
    return load_edge_list(path)


def compare_to_reference(name: str, stats: GraphStats) -> list[str]:
    """Mismatches against the published statistics (3-decimal rounding)."""
    ref = manifest()[name]["reference"]
    problems = []
    for key, value in (("n", stats.n), ("e", stats.e)):
        if value != ref[key]:
            problems.append(f"{key}={value} (reference {ref[key]})")
    for key in ("mean_degree", "inv_lambda1"):
        value = getattr(stats, key)
        if abs(value - ref[key]) > 1e-3 + 1e-12:
            problems.append(f"{key}={value:.3f} (reference {ref[key]:.3f})")
    return problems


def resolve_graph(spec: str) -> tuple[str, Graph]:
    """Load ``spec`` as a file path, or as a manifest dataset name."""
    path = Path(spec)
    if path.is_file():
        return path.stem, load_edge_list(path)
    if spec in manifest():
        return spec, load_dataset(spec)
    raise FileNotFoundError(f"{spec}: no such file or known dataset")
