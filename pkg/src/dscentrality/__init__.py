"""Walk-based (DS) centrality scored against simulated epidemic spreading.

Computes DS centrality next to degree, k-shell and eigenvector centrality,
estimates single-seed SIR/SI spreading influence by Monte Carlo, and scores
each centrality with Kendall's tau.
"""

from .centrality import (
    ScoreVector,
    SpreadParams,
    core_numbers,
    degree_centrality,
    ds_centrality_closed_form,
    ds_centrality_iterative,
    ds_centrality_spectral,
    eigenvector_centrality,
    infection_probabilities,
    kshell_centrality,
    spectral_coefficients,
    verify_recursion_identity,
)
from .epidemic import (
    InfluenceEstimate,
    SimConfig,
    estimate_influence,
    exact_influence_small,
    run_single,
    simulate_states,
)
from .errors import (
    ConvergenceError,
    DatasetUnavailableError,
    DegenerateSpectrumError,
    DSCentralityError,
    EmptyInputError,
    GraphParseError,
    RegimeError,
    SizeError,
)
from .graph import (
    Graph,
    GraphStats,
    Repairs,
    SpectralData,
    compute_stats,
    full_spectrum,
    leading_eigenpair,
    load_edge_list,
    write_edge_list,
)
from .rankstats import TauReport, TauRow, evaluate_methods, kendall_tau, kendall_tau_naive

__version__ = "0.1.0"
