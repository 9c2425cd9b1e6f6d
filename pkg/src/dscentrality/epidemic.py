"""Discrete-time SIR/SI Monte Carlo from a single seed node.

One time step: every node infectious at the start of the step tries to infect
each susceptible neighbour with probability ``beta`` (nodes infected during the
step become infectious from the next step on), then every node of that same
infectious snapshot recovers with probability ``mu``. The influence of a run is
the size of the ever-infected set after ``t`` steps, seed included.
"""

from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass, field
from typing import Sequence

import numba as nb
import numpy as np

from .centrality import ScoreVector, SpreadParams
from .errors import SizeError
from .graph import Graph
from .rng import next_uniform, stream_key

if "NUMBA_THREADING_LAYER" not in os.environ:
    # the system TBB is too old for numba; skip it quietly
    nb.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

SUSCEPTIBLE, INFECTED, RECOVERED = 0, 1, 2

EXACT_MAX_NODES = 8
EXACT_MAX_STEPS = 4


@nb.njit(cache=True)
def _simulate(indptr, indices, seed, beta, mu, horizon, state,
              status, infectious, ever, history, record):
    # status must be all SUSCEPTIBLE on entry and is restored before returning
    status[seed] = INFECTED
    infectious[0] = seed
    ever[0] = seed
    n_inf = 1
    n_ever = 1
    if record:
        history[0, :] = status
    for step in range(1, horizon + 1):
        if n_inf == 0:
            if record:
                history[step, :] = status
            continue
        n_new = 0
        for k in range(n_inf):
            i = infectious[k]
            for p in range(indptr[i], indptr[i + 1]):
                j = indices[p]
                if status[j] == SUSCEPTIBLE:
                    if next_uniform(state) < beta:
                        status[j] = INFECTED
                        ever[n_ever + n_new] = j
                        n_new += 1
        n_keep = 0
        for k in range(n_inf):
            i = infectious[k]
            if mu >= 1.0 or (mu > 0.0 and next_uniform(state) < mu):
                status[i] = RECOVERED
            else:
                infectious[n_keep] = i
                n_keep += 1
        for k in range(n_new):
            infectious[n_keep + k] = ever[n_ever + k]
        n_inf = n_keep + n_new
        n_ever += n_new
        if record:
            history[step, :] = status
    for k in range(n_ever):
        status[ever[k]] = SUSCEPTIBLE
    return n_ever


@nb.njit(parallel=True, cache=True)
def _estimate(indptr, indices, seeds, runs, beta, mu, horizon, rng_seed, sums, sumsq):
    n = indptr.size - 1
    dummy = np.zeros((1, 1), dtype=np.int8)
    for s in nb.prange(seeds.size):
        node = seeds[s]
        status = np.zeros(n, dtype=np.int8)
        infectious = np.empty(n, dtype=np.int64)
        ever = np.empty(n, dtype=np.int64)
        state = np.empty(1, dtype=np.uint64)
        total = 0
        total_sq = 0
        for r in range(runs):
            state[0] = stream_key(rng_seed, np.uint64(node), np.uint64(r))
            c = _simulate(indptr, indices, node, beta, mu, horizon, state,
                          status, infectious, ever, dummy, False)
            total += c
            total_sq += c * c
        sums[s] = total
        sumsq[s] = total_sq


def _check_seed(g: Graph, seed: int) -> int:
    if not 0 <= seed < g.node_count:
        raise IndexError(f"seed {seed} out of range for n={g.node_count}")
    return int(seed)


def _run_once(g: Graph, seed: int, p: SpreadParams, rng_seed: int, run: int, history):
    n = g.node_count
    state = np.array([stream_key(np.uint64(rng_seed), np.uint64(seed), np.uint64(run))], dtype=np.uint64)
    status = np.zeros(n, dtype=np.int8)
    buf = np.empty(n, dtype=np.int64)
    ever = np.empty(n, dtype=np.int64)
    record = history is not None
    if history is None:
        history = np.zeros((1, 1), dtype=np.int8)
    return _simulate(g.indptr, g.indices, seed, float(p.beta), float(p.mu), p.horizon,
                     state, status, buf, ever, history, record)


def run_single(g: Graph, seed: int, p: SpreadParams, rng_seed: int = 0, run: int = 0) -> int:
    """Influence (ever-infected count) of one run from ``seed``.

    The random stream is the one keyed by ``(rng_seed, seed, run)``, the same
    stream :func:`estimate_influence` uses for that run.
    """
    return int(_run_once(g, _check_seed(g, seed), p, rng_seed, run, None))


def simulate_states(g: Graph, seed: int, p: SpreadParams, rng_seed: int = 0, run: int = 0) -> np.ndarray:
    """Node states after each step, shape ``(t + 1, n)``; row 0 is the initial state."""
    history = np.zeros((p.horizon + 1, g.node_count), dtype=np.int8)
    _run_once(g, _check_seed(g, seed), p, rng_seed, run, history)
    return history


@dataclass(frozen=True)
class SimConfig:
    params: SpreadParams
    runs_per_seed: int = 10_000
    rng_seed: int = 0
    seeds: Sequence[int] | None = None

    def __post_init__(self):
        if self.runs_per_seed < 1:
            raise ValueError("runs_per_seed must be >= 1")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must fit in 64 unsigned bits")
        if self.seeds is not None and len(self.seeds) == 0:
            raise ValueError("seed set is empty")

    def seed_array(self, g: Graph) -> np.ndarray:
        if self.seeds is None:
            return np.arange(g.node_count, dtype=np.int64)
        arr = np.asarray(self.seeds, dtype=np.int64)
        if arr.min() < 0 or arr.max() >= g.node_count:
            raise IndexError("seed node out of range")
        return arr


@dataclass(frozen=True, eq=False)
class InfluenceEstimate:
    mean_influence: ScoreVector
    std_error: np.ndarray
    runs: int
    seeds: np.ndarray = field(default=None)


@contextlib.contextmanager
def _num_threads(threads: int | None):
    if threads is None:
        yield
        return
    old = nb.get_num_threads()
    nb.set_num_threads(min(threads, nb.config.NUMBA_NUM_THREADS))
    try:
        yield
    finally:
        nb.set_num_threads(old)


def estimate_influence(g: Graph, cfg: SimConfig, threads: int | None = None) -> InfluenceEstimate:
    """Mean influence and its standard error for every seed in ``cfg``.

    Results are bit-identical for any thread count: each (seed, run) pair
    owns its random stream and per-seed sums are exact integers.
    """
    seeds = cfg.seed_array(g)
    sums = np.zeros(seeds.size, dtype=np.int64)
    sumsq = np.zeros(seeds.size, dtype=np.int64)
    p = cfg.params
    with _num_threads(threads):
        _estimate(g.indptr, g.indices, seeds, cfg.runs_per_seed, float(p.beta),
                  float(p.mu), p.horizon, np.uint64(cfg.rng_seed), sums, sumsq)
    runs = cfg.runs_per_seed
    mean = sums / runs
    if runs > 1:
        # exact integer numerator avoids cancellation
        num = np.array([runs * int(q) - int(s) ** 2 for s, q in zip(sums, sumsq)], dtype=np.float64)
        var = num / (runs * (runs - 1))
        stderr = np.sqrt(var / runs)
    else:
        stderr = np.zeros(seeds.size)
    stderr.setflags(write=False)
    seeds.setflags(write=False)
    return InfluenceEstimate(ScoreVector(mean, "influence"), stderr, runs, seeds)


def exact_influence_small(g: Graph, seed: int, p: SpreadParams) -> float:
    """Exact expected influence by enumerating every Bernoulli outcome.

    Contacts and recoveries are branched one event at a time, merging equal
    intermediate states. Limited to ``n <= 8`` and ``t <= 4``.
    """
    n = g.node_count
    if n > EXACT_MAX_NODES or p.horizon > EXACT_MAX_STEPS:
        raise SizeError(
            f"exact enumeration limited to n <= {EXACT_MAX_NODES}, t <= {EXACT_MAX_STEPS}"
        )
    _check_seed(g, seed)
    beta, mu = p.beta, p.mu
    start = [SUSCEPTIBLE] * n
    start[seed] = INFECTED
    dist: dict[tuple[int, ...], float] = {tuple(start): 1.0}
    for _ in range(p.horizon):
        nxt: dict[tuple[int, ...], float] = {}
        for state, prob in dist.items():
            snapshot = [i for i in range(n) if state[i] == INFECTED]
            branches = {state: prob}
            for i in snapshot:
                for j in g.neighbors(i):
                    j = int(j)
                    step: dict[tuple[int, ...], float] = {}
                    for s, q in branches.items():
                        if s[j] != SUSCEPTIBLE:
                            step[s] = step.get(s, 0.0) + q
                            continue
                        hit = s[:j] + (INFECTED,) + s[j + 1 :]
                        step[hit] = step.get(hit, 0.0) + q * beta
                        step[s] = step.get(s, 0.0) + q * (1.0 - beta)
                    branches = step
            for i in snapshot:
                step = {}
                for s, q in branches.items():
                    rec = s[:i] + (RECOVERED,) + s[i + 1 :]
                    step[rec] = step.get(rec, 0.0) + q * mu
                    step[s] = step.get(s, 0.0) + q * (1.0 - mu)
                branches = step
            for s, q in branches.items():
                if q:
                    nxt[s] = nxt.get(s, 0.0) + q
        dist = nxt
    return float(sum(q * sum(1 for x in s if x != SUSCEPTIBLE) for s, q in dist.items()))
