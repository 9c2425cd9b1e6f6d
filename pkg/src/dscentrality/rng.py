"""Keyed SplitMix64 streams.

Every simulation run draws from its own stream whose starting state is a hash
of ``(rng_seed, seed_node, run_index)``. Streams therefore do not depend on
the order in which runs are executed or on how they are spread over threads.
"""

import numba as nb
import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 1.0 / 9007199254740992.0  # 2**-53


@nb.njit(nb.uint64(nb.uint64), cache=True, inline="always")
def mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@nb.njit(nb.uint64(nb.uint64, nb.uint64, nb.uint64), cache=True)
def stream_key(rng_seed, node, run):
    """Initial state for the stream of ``run`` started from ``node``."""
    h = mix64(rng_seed + GOLDEN)
    h = mix64(h ^ (node + GOLDEN))
    return mix64(h ^ (run + GOLDEN))


@nb.njit(cache=True, inline="always")
def next_uniform(state):
    """Advance ``state`` (a 1-element uint64 array) and return a double in [0, 1)."""
    s = state[0] + GOLDEN
    state[0] = s
    return (mix64(s) >> _S11) * _INV53


_MASK = (1 << 64) - 1


def py_mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def py_stream(rng_seed: int, node: int, run: int):
    """Pure-Python twin of the jitted stream (for tests and audits)."""
    g = 0x9E3779B97F4A7C15
    h = py_mix64((rng_seed + g) & _MASK)
    h = py_mix64(h ^ ((node + g) & _MASK))
    s = py_mix64(h ^ ((run + g) & _MASK))
    while True:
        s = (s + g) & _MASK
        yield (py_mix64(s) >> 11) * 2.0**-53
