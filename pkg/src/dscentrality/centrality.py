"""Degree, k-shell, eigenvector and dynamics-sensitive (DS) centrality.

DS centrality of every node at horizon ``t`` is the vector

    S(t) = sum_{r=0}^{t-1} beta * A @ H^r @ 1,    H = beta * A + (1 - mu) * I,

i.e. a walk count from each node where a walk of ``r + 1`` steps is weighted by
the spreading rate ``beta`` and the survival factor ``1 - mu`` of its pauses.
Three evaluations are provided: the matrix-vector recurrence (any ``t``), the
``t -> inf`` limit from a linear solve, and a spectral sum over all eigenpairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse import linalg as splinalg

from .errors import ConvergenceError, RegimeError
from .graph import (
    DEFAULT_EIG_MAX_ITERS,
    DEFAULT_EIG_TOL,
    Graph,
    SpectralData,
    leading_eigenpair,
)

KINDS = ("degree", "kshell", "eigenvector", "ds", "influence", "probability")


@dataclass(frozen=True)
class SpreadParams:
    """Spreading rate ``beta``, recovery rate ``mu`` and time horizon ``t``."""

    beta: float
    mu: float
    horizon: int

    def __post_init__(self):
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must lie in (0, 1], got {self.beta}")
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must lie in [0, 1], got {self.mu}")
        if int(self.horizon) != self.horizon or self.horizon < 1:
            raise ValueError(f"horizon must be an integer >= 1, got {self.horizon}")
        object.__setattr__(self, "horizon", int(self.horizon))

    @classmethod
    def sir(cls, beta: float, horizon: int) -> "SpreadParams":
        return cls(beta, 1.0, horizon)

    @classmethod
    def si(cls, beta: float, horizon: int) -> "SpreadParams":
        return cls(beta, 0.0, horizon)


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """One finite score per node, tagged with what it measures.

    Behaves like a read-only 1-D array (``np.asarray(sv)`` works).
    """

    scores: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown score kind {self.kind!r}")
        s = np.array(self.scores, dtype=np.float64)
        if s.ndim != 1:
            raise ValueError("scores must be one-dimensional")
        if not np.all(np.isfinite(s)):
            raise ValueError("scores must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "scores", s)

    def __array__(self, dtype=None, copy=None):
        return self.scores if dtype is None else self.scores.astype(dtype)

    def __len__(self) -> int:
        return self.scores.size

    def __getitem__(self, i):
        return self.scores[i]

    def ranking(self) -> np.ndarray:
        """Node indices by descending score, ties by ascending index."""
        return np.lexsort((np.arange(self.scores.size), -self.scores))


def degree_centrality(g: Graph) -> ScoreVector:
    return ScoreVector(g.degrees.astype(np.float64), "degree")


def core_numbers(g: Graph) -> np.ndarray:
    """k-shell index of every node (bucket peeling, linear time)."""
    n = g.node_count
    deg = g.degrees.astype(np.int64).copy()
    indptr, indices = g.indptr, g.indices
    maxdeg = int(deg.max()) if n else 0
    # nodes sorted by degree, with bucket start offsets
    bin_start = np.zeros(maxdeg + 2, dtype=np.int64)
    np.cumsum(np.bincount(deg, minlength=maxdeg + 1), out=bin_start[1:])
    order = np.argsort(deg, kind="stable")
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    bin_start = bin_start[:-1].copy()
    for idx in range(n):
        v = order[idx]
        dv = deg[v]
        for u in indices[indptr[v] : indptr[v + 1]]:
            du = deg[u]
            if du > dv:
                # swap u to the front of its bucket, then shrink the bucket
                pu, pw = pos[u], bin_start[du]
                w = order[pw]
                if u != w:
                    order[pu], order[pw] = w, u
                    pos[u], pos[w] = pw, pu
                bin_start[du] += 1
                deg[u] = du - 1
    return deg


def kshell_centrality(g: Graph) -> ScoreVector:
    """Shell index from iterative k-core peeling; isolated nodes get 0."""
    return ScoreVector(core_numbers(g).astype(np.float64), "kshell")


def eigenvector_centrality(
    g: Graph, tol: float = DEFAULT_EIG_TOL, max_iters: int = DEFAULT_EIG_MAX_ITERS
) -> ScoreVector:
    return ScoreVector(leading_eigenpair(g, tol, max_iters).q1, "eigenvector")


def _walk_sum(g: Graph, start: np.ndarray, p: SpreadParams) -> np.ndarray:
    # S = sum_r beta*A*H^r*start using one A-product per step
    A = g.adjacency
    w = start.astype(np.float64, copy=True)
    total = np.zeros_like(w)
    keep = 1.0 - p.mu
    for _ in range(p.horizon):
        bw = p.beta * (A @ w)
        total += bw
        if keep:
            bw += keep * w
        w = bw
    return total


def ds_centrality_iterative(g: Graph, p: SpreadParams) -> ScoreVector:
    """DS centrality by the matrix-vector recurrence; ``t`` products with A.

    At ``t = 1`` this is exactly ``beta * degree``.
    """
    return ScoreVector(_walk_sum(g, np.ones(g.node_count), p), "ds")


def ds_centrality_closed_form(
    g: Graph,
    p: SpreadParams,
    lambda1: float | None = None,
    rtol: float = 1e-13,
    max_iters: int | None = None,
) -> ScoreVector:
    """The ``t -> inf`` limit ``beta*A*(I - H)^{-1}*1``; ``p.horizon`` is ignored.

    Requires ``beta * lambda_1 < mu``, which is exactly when ``mu*I - beta*A``
    is positive definite, so ``(mu*I - beta*A) y = 1`` is solved by conjugate
    gradients.
    """
    if lambda1 is None:
        lambda1 = leading_eigenpair(g).lambda1 if g.edge_count else 0.0
    if p.mu <= 0 or p.beta * lambda1 >= p.mu:
        threshold = 1.0 / lambda1 if lambda1 > 0 else np.inf
        raise RegimeError(
            f"closed form needs beta/mu < 1/lambda_1 = {threshold:.6g}; "
            f"got beta={p.beta}, mu={p.mu}",
            threshold,
        )
    A = g.adjacency
    n = g.node_count
    ones = np.ones(n)
    M = (p.mu * sp.identity(n, format="csr") - p.beta * A).tocsr()
    y, info = splinalg.cg(M, ones, x0=ones / p.mu, rtol=rtol, atol=0.0, maxiter=max_iters)
    if info != 0:
        resid = float(np.linalg.norm(M @ y - ones))
        raise ConvergenceError(f"conjugate gradients stopped after {info} iterations", resid)
    return ScoreVector(p.beta * (A @ y), "ds")


def spectral_coefficients(eigenvalues: np.ndarray, p: SpreadParams) -> np.ndarray:
    """Per-eigenvalue weights ``beta*lam*(1 - h^t)/(mu - beta*lam)``, ``h = beta*lam + 1 - mu``.

    Equivalent to ``beta*lam * sum_{k<t} h^k``; when ``mu == beta*lam`` this is
    ``t * beta * lam``. Evaluated through expm1/log1p where ``h > 0`` so that
    near-degenerate eigenvalues do not lose precision.
    """
    a = p.beta * np.asarray(eigenvalues, dtype=np.float64)
    d = a - p.mu  # h - 1
    h = 1.0 + d
    t = p.horizon
    geo = np.empty_like(a)
    pos = h > 0
    zero = d == 0
    regular = pos & ~zero
    dr = d[regular]
    geo[regular] = np.expm1(t * np.log1p(dr)) / dr
    geo[zero] = t
    nonpos = ~pos
    geo[nonpos] = (1.0 - h[nonpos] ** t) / (1.0 - h[nonpos])
    return a * geo


def ds_centrality_spectral(g: Graph, spec: SpectralData, p: SpreadParams) -> ScoreVector:
    """DS centrality assembled from the full eigendecomposition of A."""
    if spec.eigenvectors.shape[0] != g.node_count or not spec.is_complete():
        raise ValueError(
            f"full spectrum required: have {spec.retained_count} of {g.node_count} eigenpairs"
        )
    Q = spec.eigenvectors
    m = spectral_coefficients(spec.eigenvalues, p)
    return ScoreVector(Q @ (m * Q.sum(axis=0)), "ds")


def infection_probabilities(g: Graph, seed: int, p: SpreadParams) -> ScoreVector:
    """Cumulative infection probabilities ``x(t)`` when only ``seed`` starts infected.

    The seed's own initial unit is not part of the sum, and entries may exceed
    one (the linearisation ignores saturation).
    """
    n = g.node_count
    if not 0 <= seed < n:
        raise IndexError(f"seed {seed} out of range for n={n}")
    e = np.zeros(n)
    e[seed] = 1.0
    return ScoreVector(_walk_sum(g, e, p), "probability")


def verify_recursion_identity(g: Graph, p: SpreadParams, seed: int) -> float:
    """Check the infection-increment recursion at step ``t = p.horizon``.

    Increments are generated by the memory recursion

        dx(2)   = bA [x(1) + (1-mu) x(0)]
        dx(s+1) = bA [sum_{r=0}^{s-2} (1-mu)^r dx(s-r) + (1-mu)^(s-1) x(1) + (1-mu)^s x(0)]

    with ``x(0) = e_seed`` and ``x(1) = bA x(0)``, and ``dx(t)`` is compared with
    ``bA H^(t-1) x(0)``. Returns the largest absolute entrywise difference.
    """
    t = p.horizon
    if t < 2:
        raise ValueError("the recursion identity needs t >= 2")
    n = g.node_count
    if not 0 <= seed < n:
        raise IndexError(f"seed {seed} out of range for n={n}")
    A = g.adjacency
    keep = 1.0 - p.mu
    x0 = np.zeros(n)
    x0[seed] = 1.0

    w = x0
    for _ in range(t - 1):
        w = p.beta * (A @ w) + keep * w
    direct = p.beta * (A @ w)

    x1 = p.beta * (A @ x0)
    inc: dict[int, np.ndarray] = {}
    for s in range(1, t):
        acc = np.zeros(n)
        for r in range(s - 1):
            acc = acc + keep**r * inc[s - r]
        acc = acc + keep ** (s - 1) * x1 + keep**s * x0
        inc[s + 1] = p.beta * (A @ acc)
    return float(np.max(np.abs(direct - inc[t])))
