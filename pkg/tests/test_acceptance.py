"""Acceptance criteria, one test and one PASS/FAIL line each.

Criteria that need the reference networks fail (rather than skip) when the
edge lists are absent, so a missing snapshot is never mistaken for a pass.
Run with ``-rA`` or read the "acceptance criteria" section of the summary.
"""

import csv
import io
import itertools
import json
import os
import subprocess
import sys

import networkx as nx
import numpy as np
import pytest

from dscentrality import (
    Graph,
    SimConfig,
    SpreadParams,
    datasets,
    degree_centrality,
    ds_centrality_closed_form,
    ds_centrality_iterative,
    ds_centrality_spectral,
    eigenvector_centrality,
    estimate_influence,
    exact_influence_small,
    full_spectrum,
    kendall_tau,
    kendall_tau_naive,
    verify_recursion_identity,
    write_edge_list,
)
from dscentrality.cli import main
from dscentrality.errors import DatasetUnavailableError
from dscentrality.experiment import limit_horizon

from conftest import make_graph, random_graph_battery
from test_epidemic import GRID, SMALL_GRAPHS

REFERENCE = {
    "email": (1133, 5451, 9.622, 0.048),
    "protein": (2783, 6007, 4.317, 0.063),
    "erdos": (456, 1314, 5.763, 0.079),
    "router": (2114, 6632, 6.274, 0.036),
}
DESK_BETAS = "0.01,0.05,0.1"
PARAM_POINTS = [
    SpreadParams(0.01, 1.0, 5),
    SpreadParams(0.05, 1.0, 5),
    SpreadParams(0.10, 1.0, 5),
    SpreadParams(0.01, 0.0, 5),
    SpreadParams(0.05, 0.0, 5),
    SpreadParams(0.10, 0.0, 5),
    SpreadParams(0.02, 0.3, 10),
    SpreadParams(0.05, 0.7, 20),
    SpreadParams(0.20, 0.5, 3),
    SpreadParams(0.005, 0.1, 50),
]


@pytest.fixture(scope="module")
def battery():
    return random_graph_battery(50, 200, seed=2025)


def record(log, title, ok, detail):
    log.append(f"{'PASS' if ok else 'FAIL'}  {title}: {detail}")
    assert ok, detail


def require_dataset(log, title, name):
    try:
        return datasets.dataset_path(name)
    except DatasetUnavailableError:
        fname = datasets.manifest()[name]["file"]
        record(log, title, False, f"{name} edge list not available (place {fname} in ${datasets.ENV_VAR})")


def run_cli(*argv):
    code = main(list(argv))
    assert code == 0, argv
    return code


def evaluate_rows(tmp_path, model, runs=1000):
    out = tmp_path / f"{model}.csv"
    run_cli("evaluate", "--graph", "email", "--model", model, "--beta-grid", DESK_BETAS,
            "--t", "5", "--runs", str(runs), "--rng-seed", "0", "--out", str(out))
    taus = {}
    for row in csv.DictReader(io.StringIO(out.read_text())):
        taus[(float(row["beta"]), row["method"])] = float(row["tau"])
    return taus


def surrogate_email():
    """Synthetic stand-in with the email network's size and density."""
    return Graph.from_networkx(nx.powerlaw_cluster_graph(1133, 5, 0.3, seed=7))


def test_reference_network_statistics(acceptance_log, capsys):
    title = "reference statistics (n, e exact; <k>, 1/lambda_1 within 0.001)"
    checked, problems = [], []
    for name, (n, e, k, inv) in REFERENCE.items():
        try:
            datasets.dataset_path(name)
        except DatasetUnavailableError:
            problems.append(f"{name}: edge list not available")
            continue
        run_cli("stats", "--graph", name, "--format", "json")
        rec = json.loads(capsys.readouterr().out)
        if rec["n"] != n or rec["e"] != e:
            problems.append(f"{name}: n={rec['n']} e={rec['e']} (reference {n}, {e})")
        for key, ref in (("mean_degree", k), ("inv_lambda1", inv)):
            if abs(float(rec[key]) - ref) > 1e-3 + 1e-12:
                problems.append(f"{name}: {key}={rec[key]} (reference {ref})")
        checked.append(name)
    ok = bool(checked) and not problems and len(checked) == len(REFERENCE)
    record(acceptance_log, title, ok, f"checked {checked}; " + ("; ".join(problems) or "all match"))


def _desk_comparison(taus, ds_floor):
    problems = []
    for beta in (0.01, 0.05, 0.1):
        ds = taus[(beta, "ds")]
        if ds_floor is not None and ds < ds_floor:
            problems.append(f"beta={beta}: tau(ds)={ds:.4f} < {ds_floor}")
        for m in ("degree", "kshell", "eigenvector"):
            if not ds > taus[(beta, m)]:
                problems.append(f"beta={beta}: tau(ds)={ds:.4f} <= tau({m})={taus[(beta, m)]:.4f}")
    return problems


def test_sir_desk_reproduction(acceptance_log, tmp_path):
    title = "SIR desk run on email (tau(ds) >= 0.95 and above all benchmarks)"
    require_dataset(acceptance_log, title, "email")
    taus = evaluate_rows(tmp_path, "sir")
    problems = _desk_comparison(taus, 0.95)
    ds = ", ".join(f"{taus[(b, 'ds')]:.4f}" for b in (0.01, 0.05, 0.1))
    record(acceptance_log, title, not problems, "; ".join(problems) or f"tau(ds) = {ds}")


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("DSCENTRALITY_LONG_RUN"),
                    reason="optional 10^4-run sweep; set DSCENTRALITY_LONG_RUN=1")
def test_sir_long_run(acceptance_log, tmp_path):
    title = "SIR long run on email (tau(ds) in [0.96, 1.0] at 10^4 runs)"
    require_dataset(acceptance_log, title, "email")
    taus = evaluate_rows(tmp_path, "sir", runs=10_000)
    bad = [b for b in (0.01, 0.05, 0.1) if not 0.96 <= taus[(b, "ds")] <= 1.0]
    record(acceptance_log, title, not bad, f"out of range at beta {bad}" if bad else "in range")


def test_si_desk_reproduction(acceptance_log, tmp_path):
    title = "SI desk run on email (tau(ds) above all benchmarks)"
    require_dataset(acceptance_log, title, "email")
    taus = evaluate_rows(tmp_path, "si")
    problems = _desk_comparison(taus, None)
    record(acceptance_log, title, not problems, "; ".join(problems) or "ds leads at every beta")


def test_degree_reduction(acceptance_log, battery):
    title = "ds at t=1 reduces to degree"
    graphs = {f"random{i}": g for i, g in enumerate(battery)}
    for name in datasets.available():
        graphs[name] = datasets.load_dataset(name)
    stand_ins = {
        "karate": nx.karate_club_graph(),
        "les_miserables": nx.les_miserables_graph(),
        "florentine": nx.florentine_families_graph(),
    }
    for name, G in stand_ins.items():
        graphs[name] = Graph.from_networkx(G)
    graphs["email_surrogate"] = surrogate_email()
    worst, problems = 0.0, []
    for name, g in graphs.items():
        deg = degree_centrality(g)
        for beta in (0.01, 0.1, 0.5, 1.0):
            ds = ds_centrality_iterative(g, SpreadParams(beta, 1.0, 1))
            expected = beta * g.degrees.astype(float)
            worst = max(worst, float(np.max(np.abs(ds.scores - expected) / expected.max())))
            if not np.array_equal(ds.ranking(), deg.ranking()):
                problems.append(f"{name} beta={beta}: ranking differs")
            if kendall_tau(ds.scores, deg.scores) != kendall_tau(deg.scores, deg.scores):
                problems.append(f"{name} beta={beta}: tau differs from the degree self-tau")
    ok = not problems and worst <= 1e-12
    bundled = len(datasets.available())
    record(acceptance_log, title, ok,
           "; ".join(problems) or f"{len(graphs)} graphs ({bundled} reference networks present), "
           f"max rel. deviation {worst:.1e}")


def test_cross_form_equivalence(acceptance_log, battery):
    title = "iterative vs spectral (1e-8) and vs closed form (1e-6)"
    worst_spec, worst_closed, closed_checks = 0.0, 0.0, 0
    for g in battery:
        spec = full_spectrum(g)
        lam = spec.lambda1
        for p in PARAM_POINTS:
            it = ds_centrality_iterative(g, p).scores
            sp = ds_centrality_spectral(g, spec, p).scores
            worst_spec = max(worst_spec, float(np.max(np.abs(it - sp)) / np.max(np.abs(it))))
            h1 = p.beta * lam + 1.0 - p.mu
            if h1 < 1.0:
                far = ds_centrality_iterative(g, SpreadParams(p.beta, p.mu, limit_horizon(h1))).scores
                closed = ds_centrality_closed_form(g, p, lambda1=lam).scores
                worst_closed = max(worst_closed, float(np.max(np.abs(far - closed)) / np.max(np.abs(closed))))
                closed_checks += 1
    ok = worst_spec <= 1e-8 and worst_closed <= 1e-6 and closed_checks > 0
    record(acceptance_log, title, ok,
           f"max spectral dev {worst_spec:.1e}, max closed-form dev {worst_closed:.1e} "
           f"over {closed_checks} in-regime cases")


def test_recursion_identity(acceptance_log, battery):
    title = "infection-increment recursion (<= 1e-10, exactly 0 at mu=1)"
    worst, nonzero_sir = 0.0, 0
    for g in battery:
        for beta, mu, t in itertools.product((0.05, 0.1, 0.2), (0.0, 0.3, 0.7, 1.0), (2, 3, 5, 10)):
            for seed in (0, g.node_count // 2):
                dev = verify_recursion_identity(g, SpreadParams(beta, mu, t), seed)
                worst = max(worst, dev)
                if mu == 1.0 and dev != 0.0:
                    nonzero_sir += 1
    ok = worst <= 1e-10 and nonzero_sir == 0
    record(acceptance_log, title, ok, f"max deviation {worst:.1e}; nonzero at mu=1: {nonzero_sir}")


def test_monte_carlo_correctness(acceptance_log):
    title = "Monte Carlo vs exact enumeration (4 standard errors)"
    runs = 20_000
    misses, cases = [], 0
    for name, (n, edges) in SMALL_GRAPHS.items():
        g = make_graph(n, edges)
        for beta, mu, t in GRID:
            p = SpreadParams(beta, mu, t)
            est = estimate_influence(g, SimConfig(p, runs, 31337))
            for seed in range(n):
                cases += 1
                diff = abs(est.mean_influence[seed] - exact_influence_small(g, seed, p))
                if diff > 4 * est.std_error[seed] + 1e-12:
                    misses.append((name, beta, mu, t, seed))
    dyad_runs = 10_000
    est = estimate_influence(make_graph(2, [(0, 1)]), SimConfig(SpreadParams(0.5, 1.0, 1), dyad_runs, 0))
    dyad_ok = all(abs(m - 1.5) <= 4 * 0.5 / np.sqrt(dyad_runs) for m in est.mean_influence.scores)
    record(acceptance_log, title, not misses and dyad_ok,
           f"{cases} seed cases, misses {misses}; dyad means {np.round(est.mean_influence.scores, 4)}")


def test_eigenvector_convergence_on_email(acceptance_log):
    title = "tau(ds, eigenvector) non-decreasing on email and > 0.9 at the end"
    require_dataset(acceptance_log, title, "email")
    g = datasets.load_dataset("email")
    eig = eigenvector_centrality(g).scores
    taus = [kendall_tau(ds_centrality_iterative(g, SpreadParams(b, 1.0, t)).scores, eig)
            for b, t in ((0.01, 5), (0.05, 10), (0.10, 20))]
    ok = taus[0] <= taus[1] <= taus[2] and taus[2] > 0.9
    record(acceptance_log, title, ok, f"taus {np.round(taus, 4)}")


def test_kendall_tau_oracle(acceptance_log):
    title = "fast Kendall tau equals the pairwise sum"
    rng = np.random.default_rng(77)
    mismatches = 0
    for k in range(1000):
        n = int(rng.integers(2, 300))
        levels = int(rng.integers(1, 20))
        y = rng.integers(0, levels, size=n).astype(float)
        z = rng.integers(0, max(1, levels // 2 + 1), size=n).astype(float)
        if k % 4 == 0:
            y[rng.integers(0, n, size=n // 3)] = 0.5
        if kendall_tau(y, z) != kendall_tau_naive(y, z):
            mismatches += 1
    record(acceptance_log, title, mismatches == 0, f"1000 tie-bearing vectors, {mismatches} mismatches")


def test_determinism_across_threads(acceptance_log, tmp_path):
    title = "byte-identical evaluate CSV across runs and thread counts"
    try:
        graph = str(datasets.dataset_path("email"))
        where = "email"
    except DatasetUnavailableError:
        graph = str(tmp_path / "email_surrogate.txt")
        with open(graph, "w") as fh:
            write_edge_list(surrogate_email(), fh)
        where = "synthetic email-sized surrogate (email edge list not available)"
    outputs = []
    for threads in ("1", "2", "1"):
        out = tmp_path / f"run{len(outputs)}.csv"
        env = dict(os.environ, NUMBA_NUM_THREADS=threads)
        subprocess.run(
            [sys.executable, "-m", "dscentrality", "evaluate", "--graph", graph, "--model", "sir",
             "--beta-grid", DESK_BETAS, "--t", "5", "--runs", "1000", "--rng-seed", "0",
             "--out", str(out)],
            env=env, check=True, capture_output=True,
        )
        outputs.append(out.read_bytes())
    ok = outputs[0] == outputs[1] == outputs[2] and len(outputs[0]) > 0
    record(acceptance_log, title, ok, f"3 executions (threads 1, 2, 1) on {where}")
