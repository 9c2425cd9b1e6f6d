"""Undirected simple graphs in CSR form, edge-list I/O and spectral helpers."""

from __future__ import annotations

import io
import logging
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import (
    ConvergenceError,
    DegenerateSpectrumError,
    EmptyInputError,
    GraphParseError,
    SizeError,
)

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")
DEFAULT_EIG_TOL = 1e-10
DEFAULT_EIG_MAX_ITERS = 100_000
DEFAULT_DENSE_CAP = 2000


@dataclass(frozen=True)
class Repairs:
    """Counts of input defects fixed while loading an edge list."""

    self_loops: int = 0
    duplicate_edges: int = 0


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    Neighbour lists are stored in CSR layout: the neighbours of node ``i`` are
    ``indices[indptr[i]:indptr[i + 1]]``, sorted ascending.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...] | None = None
    repairs: Repairs = field(default_factory=Repairs)

    def __post_init__(self):
        indptr = np.ascontiguousarray(self.indptr, dtype=np.int64)
        indices = np.ascontiguousarray(self.indices, dtype=np.int64)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        object.__setattr__(self, "indptr", indptr)
        object.__setattr__(self, "indices", indices)
        if indptr.size < 2:
            raise EmptyInputError("a graph needs at least one node")
        if self.labels is not None and len(self.labels) != self.node_count:
            raise ValueError("one label per node is required")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
        repairs: Repairs | None = None,
    ) -> "Graph":
        """Build a graph on nodes ``0..n-1``; self-loops and repeats are discarded."""
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("edge endpoint out of range")
        arr = arr[arr[:, 0] != arr[:, 1]]
        both = np.concatenate([arr, arr[:, ::-1]])
        if both.size:
            both = np.unique(both, axis=0)
        counts = np.bincount(both[:, 0], minlength=n) if both.size else np.zeros(n, np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        indices = both[:, 1] if both.size else np.zeros(0, np.int64)
        return cls(
            indptr,
            indices,
            tuple(labels) if labels is not None else None,
            repairs or Repairs(),
        )

    @classmethod
    def from_networkx(cls, G) -> "Graph":
        nodes = list(G.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in G.edges()]
        return cls.from_edges(len(nodes), edges, labels=[str(v) for v in nodes])

    @property
    def node_count(self) -> int:
        return self.indptr.size - 1

    @property
    def edge_count(self) -> int:
        return self.indices.size // 2

    def __len__(self) -> int:
        return self.node_count

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.diff(self.indptr)
        deg.setflags(write=False)
        return deg

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """The binary adjacency matrix A as a float64 CSR matrix."""
        n = self.node_count
        data = np.ones(self.indices.size, dtype=np.float64)
        A = sp.csr_matrix((data, self.indices, self.indptr), shape=(n, n))
        A.has_sorted_indices = True
        return A

    def edges(self) -> np.ndarray:
        """Edge array of shape ``(e, 2)`` with ``i < j``, sorted ascending."""
        rows = np.repeat(np.arange(self.node_count), self.degrees)
        mask = rows < self.indices
        return np.column_stack([rows[mask], self.indices[mask]])

    def is_connected(self) -> bool:
        ncomp, _ = csgraph.connected_components(self.adjacency, directed=False)
        return ncomp == 1


def _open_lines(source) -> Iterable[str]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            yield from io.TextIOWrapper(fh, encoding="utf-8")
        return
    if isinstance(source, (bytes, bytearray)):
        yield from io.StringIO(source.decode("utf-8"))
        return
    if isinstance(source, io.TextIOBase):
        yield from source
        return
    if hasattr(source, "read"):
        yield from io.TextIOWrapper(source, encoding="utf-8")
        return
    for line in source:
        yield line.decode("utf-8") if isinstance(line, bytes) else line


def load_edge_list(source, comments: Sequence[str] = COMMENT_PREFIXES) -> Graph:
    """Parse a whitespace-separated edge list.

    Parameters
    ----------
    source : path, bytes, binary/text stream or iterable of lines
        Each data line holds two node tokens. Lines starting with one of
        ``comments`` and blank lines are skipped.

    Returns
    -------
    Graph
        Nodes are numbered in order of first appearance and keep their
        original tokens as labels. Self-loops are dropped and repeated edges
        collapsed; both are counted in ``Graph.repairs``.
    """
    index: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    loops = dups = 0
    prefixes = tuple(comments)
    for lineno, raw in enumerate(_open_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith(prefixes):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(
                f"expected two node tokens, got {len(tokens)}: {line!r}", lineno
            )
        u, v = (index.setdefault(tok, len(index)) for tok in tokens)
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            dups += 1
            continue
        seen.add(key)
        pairs.append(key)
    if not index:
        raise EmptyInputError("edge list contains no nodes")
    if loops:
        logger.warning("dropped %d self-loop(s)", loops)
    if dups:
        logger.info("collapsed %d duplicate edge(s)", dups)
    return Graph.from_edges(
        len(index), pairs, labels=list(index), repairs=Repairs(loops, dups)
    )


def write_edge_list(g: Graph, dest: IO[str] | str | os.PathLike) -> None:
    """Write the canonical form: one ``i j`` line per edge, ``i < j``, ascending."""
    text = "".join(f"{i} {j}\n" for i, j in g.edges())
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        dest.write(text)


@dataclass(frozen=True)
class GraphStats:
    n: int
    e: int
    mean_degree: float
    inv_lambda1: float


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Eigenvalues in descending order and matching unit eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.eigenvalues, dtype=np.float64)
        vecs = np.asarray(self.eigenvectors, dtype=np.float64)
        if vecs.ndim == 1:
            vecs = vecs[:, None]
        if vecs.shape[1] != vals.size:
            raise ValueError("one eigenvector per eigenvalue is required")
        vals.setflags(write=False)
        vecs.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "eigenvectors", vecs)

    @property
    def retained_count(self) -> int:
        return self.eigenvalues.size

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def q1(self) -> np.ndarray:
        return self.eigenvectors[:, 0]

    def is_complete(self) -> bool:
        return self.retained_count == self.eigenvectors.shape[0]


def leading_eigenpair(
    g: Graph, tol: float = DEFAULT_EIG_TOL, max_iters: int = DEFAULT_EIG_MAX_ITERS
) -> SpectralData:
    """Largest eigenvalue of A and its nonnegative unit eigenvector.

    Power iteration on ``A + I`` from the all-ones vector. The unit shift
    keeps bipartite graphs (spectrum symmetric about zero) from oscillating
    without changing the eigenvectors. Iteration stops once the residual
    ``max|A q - lambda q|`` drops to ``tol``.
    """
    if g.edge_count == 0:
        raise DegenerateSpectrumError("graph has no edges; lambda_1 = 0")
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = g.adjacency
    x = np.full(g.node_count, 1.0 / np.sqrt(g.node_count))
    residual = np.inf
    for _ in range(max_iters):
        y = A @ x
        lam = float(x @ y)
        residual = float(np.max(np.abs(y - lam * x)))
        if residual <= tol:
            break
        y += x
        x = y / np.linalg.norm(y)
    else:
        raise ConvergenceError(
            f"power iteration did not converge in {max_iters} iterations "
            f"(residual {residual:.3e})",
            residual,
        )
    return SpectralData(np.array([lam]), x[:, None])


def full_spectrum(g: Graph, max_nodes: int = DEFAULT_DENSE_CAP) -> SpectralData:
    """All eigenpairs of A from a dense symmetric eigensolver."""
    n = g.node_count
    if n > max_nodes:
        raise SizeError(
            f"n={n} exceeds the dense cap of {max_nodes}; "
            "use the iterative forms (leading_eigenpair, ds_centrality_iterative)"
        )
    vals, vecs = np.linalg.eigh(g.adjacency.toarray())
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    # deterministic signs; q1 comes out nonnegative on connected graphs
    pivots = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[pivots, np.arange(n)])
    signs[signs == 0] = 1.0
    vecs *= signs
    if vecs[:, 0].sum() < 0:
        vecs[:, 0] *= -1
    return SpectralData(vals, vecs)


def compute_stats(g: Graph, spec: SpectralData | None = None) -> GraphStats:
    """n, e, mean degree 2e/n and 1/lambda_1."""
    if spec is None:
        spec = leading_eigenpair(g)
    lam = spec.lambda1
    if lam <= 0:
        raise DegenerateSpectrumError(f"lambda_1 = {lam} is not positive")
    n, e = g.node_count, g.edge_count
    return GraphStats(n, e, 2.0 * e / n, 1.0 / lam)
