"""Three ways to evaluate DS centrality, and where each one applies.

    python demos/02_ds_evaluation_routes.py [edge-list | dataset name]

The iterative sum is always available. The spectral form reuses one dense
eigendecomposition for any (beta, mu, t), which pays off on sweeps of small
graphs. The closed form is the t -> infinity limit and only exists when
beta * lambda_1 < mu.
"""

import time

import numpy as np

from dscentrality import (
    RegimeError,
    SpreadParams,
    ds_centrality_closed_form,
    ds_centrality_iterative,
    ds_centrality_spectral,
    full_spectrum,
)
from _common import load

name, g = load()
t0 = time.perf_counter()
spec = full_spectrum(g)
print(f"{name}: eigendecomposition of n={g.node_count} in {time.perf_counter() - t0:.2f}s, "
      f"lambda_1={spec.lambda1:.4f}")

for p in (SpreadParams.sir(0.01, 5), SpreadParams.sir(0.1, 5), SpreadParams.si(0.05, 5),
          SpreadParams(0.02, 0.5, 10)):
    it = ds_centrality_iterative(g, p).scores
    sp = ds_centrality_spectral(g, spec, p).scores
    dev = np.max(np.abs(it - sp)) / np.max(np.abs(it))
    print(f"beta={p.beta:<5} mu={p.mu:<4} t={p.horizon:<3} spectral rel. dev {dev:.1e}", end="")
    try:
        closed = ds_centrality_closed_form(g, p, lambda1=spec.lambda1).scores
    except RegimeError as exc:
        print(f"   closed form: not defined (beta/mu >= {exc.threshold:.4f})")
        continue
    # the finite-t sum approaches the limit geometrically in beta*lambda_1 + 1 - mu
    far = ds_centrality_iterative(g, SpreadParams(p.beta, p.mu, 400)).scores
    print(f"   |S(400) - S(inf)|/|S(inf)| = {np.max(np.abs(far - closed)) / np.max(closed):.1e}")
