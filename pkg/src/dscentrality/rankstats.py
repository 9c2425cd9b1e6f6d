"""Kendall's tau between spreading influence and centrality scores.

Tied pairs contribute zero and the normaliser is always ``n(n-1)/2``; there is
no tie correction (so this is tau-a, not the tau-b of ``scipy.stats``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numba as nb
import numpy as np


@nb.njit(cache=True)
def _count_inversions(a):
    """Number of pairs i < j with a[i] > a[j] (bottom-up merge sort)."""
    n = a.size
    src = a.copy()
    dst = np.empty_like(src)
    inversions = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if src[j] < src[i]:
                    dst[k] = src[j]
                    inversions += mid - i
                    j += 1
                else:
                    dst[k] = src[i]
                    i += 1
                k += 1
            while i < mid:
                dst[k] = src[i]
                i += 1
                k += 1
            while j < hi:
                dst[k] = src[j]
                j += 1
                k += 1
        src, dst = dst, src
        width *= 2
    return inversions


def _tied_pairs(*keys: np.ndarray) -> int:
    """Pairs sharing every key; keys must already be sorted lexicographically."""
    n = keys[0].size
    if n < 2:
        return 0
    boundary = np.zeros(n - 1, dtype=bool)
    for k in keys:
        boundary |= k[1:] != k[:-1]
    starts = np.flatnonzero(np.concatenate(([True], boundary)))
    runs = np.diff(np.append(starts, n))
    return int((runs * (runs - 1) // 2).sum())


def _validate(y, z) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(y, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if y.ndim != 1 or z.ndim != 1 or y.size != z.size:
        raise ValueError(f"score vectors must be 1-D of equal length, got {y.shape} and {z.shape}")
    if y.size < 2:
        raise ValueError("Kendall's tau needs at least two items")
    if np.isnan(y).any() or np.isnan(z).any():
        raise ValueError("scores must not contain NaN")
    return y, z


def kendall_tau_naive(y, z) -> float:
    """Direct O(n^2) sum of sgn[(y_i - y_j)(z_i - z_j)] over pairs i < j."""
    y, z = _validate(y, z)
    n = y.size
    s = 0
    for i in range(n - 1):
        # sign of each factor, not of the product, so tiny differences cannot underflow
        s += int(np.sum(np.sign(y[i] - y[i + 1 :]) * np.sign(z[i] - z[i + 1 :])))
    return 2 * s / (n * (n - 1))


def kendall_tau(y, z) -> float:
    """Kendall's tau in O(n log n); identical to :func:`kendall_tau_naive`."""
    y, z = _validate(y, z)
    n = y.size
    order = np.lexsort((z, y))
    ys, zs = y[order], z[order]
    n_pairs = n * (n - 1) // 2
    ties_y = _tied_pairs(ys)
    ties_yz = _tied_pairs(ys, zs)
    ties_z = _tied_pairs(np.sort(z))
    discordant = int(_count_inversions(zs))
    s = n_pairs - ties_y - ties_z + ties_yz - 2 * discordant
    return 2 * s / (n * (n - 1))


@dataclass(frozen=True)
class TauRow:
    beta: float
    mu: float
    t: int
    method: str
    tau: float


@dataclass
class TauReport:
    dataset: str
    runs_per_seed: int
    rows: list[TauRow] = field(default_factory=list)

    def tau(self, method: str, beta: float | None = None) -> float:
        for row in self.rows:
            if row.method == method and (beta is None or np.isclose(row.beta, beta)):
                return row.tau
        raise KeyError((method, beta))

    def methods(self) -> list[str]:
        return list(dict.fromkeys(r.method for r in self.rows))


def evaluate_methods(influence, centralities: Mapping[str, object] | Iterable) -> dict[str, float]:
    """Tau of each centrality against the simulated mean influence.

    ``influence`` is an :class:`~dscentrality.epidemic.InfluenceEstimate` or a
    plain score vector; ``centralities`` maps method names to score vectors
    (a bare sequence of ScoreVectors is keyed by their ``kind``).
    """
    y = getattr(influence, "mean_influence", influence)
    if not isinstance(centralities, Mapping):
        centralities = {c.kind: c for c in centralities}
    return {name: kendall_tau(y, z) for name, z in centralities.items()}
