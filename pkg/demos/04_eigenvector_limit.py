"""DS rankings drift toward eigenvector centrality as walks get longer.

    python demos/04_eigenvector_limit.py [edge-list | dataset name]

With beta*lambda_1 above one, long walks dominate the DS sum and their counts
are proportional to the leading eigenvector. Moving along increasing (beta, t)
therefore pushes tau(DS, eigenvector) toward one; at small beta the DS ranking
stays close to degree instead.
"""

import numpy as np

from dscentrality import (
    SpreadParams,
    degree_centrality,
    ds_centrality_iterative,
    eigenvector_centrality,
    kendall_tau,
    leading_eigenpair,
)
from _common import load

name, g = load()
lam = leading_eigenpair(g).lambda1
eig = eigenvector_centrality(g).scores
deg = degree_centrality(g).scores
print(f"{name}: 1/lambda_1 = {1 / lam:.4f}")
print(f"{'beta':>6} {'t':>4} {'beta*lam':>9} {'tau(ds,eig)':>12} {'tau(ds,deg)':>12}")
for beta, t in ((0.005, 2), (0.01, 5), (0.03, 5), (0.05, 10), (0.1, 20), (0.2, 40)):
    ds = ds_centrality_iterative(g, SpreadParams(beta, 1.0, t)).scores
    print(f"{beta:6} {t:4d} {beta * lam:9.3f} {kendall_tau(ds, eig):12.4f} {kendall_tau(ds, deg):12.4f}")
print("tau(degree, eigenvector) =", np.round(kendall_tau(deg, eig), 4))
