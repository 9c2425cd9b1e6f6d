"""Basic structure of a network: size, density, spectral radius and cores.

    python demos/01_graph_statistics.py [edge-list | dataset name]

Without an argument a synthetic network of e-mail size is used. The epidemic
threshold of the SIR model on a graph sits near 1/lambda_1, which is why the
statistics below report that quantity rather than lambda_1 itself.
"""

import numpy as np

from dscentrality import compute_stats, core_numbers, datasets, leading_eigenpair
from _common import load

name, g = load()
spec = leading_eigenpair(g)
st = compute_stats(g, spec)
print(f"{name}: n={st.n} e={st.e} <k>={st.mean_degree:.3f} 1/lambda_1={st.inv_lambda1:.3f}")
if name in datasets.manifest():
    print("  vs reference:", datasets.compare_to_reference(name, st) or "match")
print(f"  connected: {g.is_connected()}, repairs: {g.repairs}")

# degree heterogeneity drives how far below 1/<k> the threshold falls
k = g.degrees
print(f"  degree range {k.min()}..{k.max()}, <k^2>/<k> = {np.mean(k**2) / np.mean(k):.2f}")

cores = core_numbers(g)
shells, counts = np.unique(cores, return_counts=True)
print("  k-shell sizes:", dict(zip(shells.tolist(), counts.tolist())))

# the leading eigenvector localises on hubs; show the top entries
top = np.argsort(-spec.q1)[:5]
print("  top q1 entries:", [(g.label(int(i)), round(float(spec.q1[i]), 4)) for i in top])
