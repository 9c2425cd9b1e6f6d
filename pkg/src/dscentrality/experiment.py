"""Parameter sweeps and verification reports behind the command line."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .centrality import (
    ScoreVector,
    SpreadParams,
    degree_centrality,
    ds_centrality_closed_form,
    ds_centrality_iterative,
    ds_centrality_spectral,
    eigenvector_centrality,
    kshell_centrality,
    verify_recursion_identity,
)
from .epidemic import SimConfig, estimate_influence
from .errors import DSCentralityError, RegimeError
from .graph import Graph, GraphStats, full_spectrum
from .rankstats import TauReport, TauRow, kendall_tau

logger = logging.getLogger(__name__)

METHODS = ("degree", "kshell", "eigenvector", "ds")
MODEL_MU = {"sir": 1.0, "si": 0.0}
EVALUATE_FIELDS = ("dataset", "model", "beta", "mu", "t", "runs_per_seed", "method", "tau")
DEFAULT_BETA_GRID = tuple(round(0.01 * k, 2) for k in range(1, 11))

RECURSION_TOL = 1e-10
SPECTRAL_TOL = 1e-8
CLOSED_FORM_TOL = 1e-6


def beta_grid(text: str) -> tuple[float, ...]:
    """Parse ``start:stop:step`` (inclusive) or a comma-separated list."""
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        if step <= 0 or stop < start:
            raise ValueError(f"bad beta grid {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + k * step, 12) for k in range(count))
    return tuple(float(x) for x in text.split(",") if x.strip())


def fmt(x: float) -> str:
    return f"{x:.6g}"


@dataclass
class ExperimentConfig:
    graph: str
    model: str = "sir"
    betas: Sequence[float] = DEFAULT_BETA_GRID
    t: int = 5
    runs_per_seed: int = 1000
    rng_seed: int = 0
    methods: Sequence[str] = METHODS
    seed_sample: int | None = None
    sanity_row: bool = False

    def __post_init__(self):
        if self.model not in MODEL_MU:
            raise ValueError(f"model must be one of {sorted(MODEL_MU)}")
        if not self.betas:
            raise ValueError("beta grid is empty")
        for b in self.betas:
            if not 0 < b <= 1:
                raise ValueError(f"beta {b} outside (0, 1]")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown method(s): {', '.join(sorted(unknown))}")
        if self.t < 1 or self.runs_per_seed < 1:
            raise ValueError("t and runs must be >= 1")

    @property
    def mu(self) -> float:
        return MODEL_MU[self.model]


def static_centralities(g: Graph, methods: Sequence[str]) -> dict[str, ScoreVector]:
    out = {}
    if "degree" in methods:
        out["degree"] = degree_centrality(g)
    if "kshell" in methods:
        out["kshell"] = kshell_centrality(g)
    if "eigenvector" in methods:
        out["eigenvector"] = eigenvector_centrality(g)
    return out


def sample_seeds(g: Graph, size: int | None, rng_seed: int) -> np.ndarray | None:
    if size is None or size >= g.node_count:
        return None
    rng = np.random.default_rng(rng_seed)
    return np.sort(rng.choice(g.node_count, size=size, replace=False))


def evaluate(g: Graph, cfg: ExperimentConfig, dataset: str, threads: int | None = None) -> TauReport:
    """Tau of each method against simulated influence at every beta of the grid."""
    report = TauReport(dataset, cfg.runs_per_seed)
    seeds = sample_seeds(g, cfg.seed_sample, cfg.rng_seed)
    try:
        static = static_centralities(g, cfg.methods)
    except DSCentralityError as exc:
        raise type(exc)(f"benchmark centralities: {exc}") from exc
    for beta in cfg.betas:
        params = SpreadParams(beta, cfg.mu, cfg.t)
        est = estimate_influence(g, SimConfig(params, cfg.runs_per_seed, cfg.rng_seed, seeds), threads)
        logger.info(
            "beta=%s: mean influence %.4f, mean std. error %.4g",
            fmt(beta), float(np.mean(est.mean_influence.scores)), float(np.mean(est.std_error)),
        )
        scores = dict(static)
        if "ds" in cfg.methods:
            scores["ds"] = ds_centrality_iterative(g, params)
        if cfg.sanity_row:
            scores["ds_t1"] = ds_centrality_iterative(g, SpreadParams(beta, cfg.mu, 1))
        y = est.mean_influence.scores
        for method in [m for m in METHODS if m in scores] + (["ds_t1"] if cfg.sanity_row else []):
            z = scores[method].scores
            if seeds is not None:
                z = z[seeds]
            try:
                tau = kendall_tau(y, z)
            except ValueError as exc:
                raise ValueError(f"beta={beta}, method={method}: {exc}") from exc
            report.rows.append(TauRow(beta, cfg.mu, cfg.t, method, tau))
    return report


def report_records(report: TauReport, model: str) -> list[dict]:
    return [
        {
            "dataset": report.dataset,
            "model": model,
            "beta": fmt(r.beta),
            "mu": fmt(r.mu),
            "t": str(r.t),
            "runs_per_seed": str(report.runs_per_seed),
            "method": r.method,
            "tau": fmt(r.tau),
        }
        for r in report.rows
    ]


def render_report(report: TauReport, model: str, fmt_name: str = "csv") -> str:
    records = report_records(report, model)
    if fmt_name == "json":
        typed = [
            {**rec, "beta": float(rec["beta"]), "mu": float(rec["mu"]), "t": int(rec["t"]),
             "runs_per_seed": int(rec["runs_per_seed"]), "tau": float(rec["tau"])}
            for rec in records
        ]
        return json.dumps(typed, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=EVALUATE_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)
    return buf.getvalue()


def rank_scores(g: Graph, method: str, params: SpreadParams | None) -> ScoreVector:
    if method == "ds":
        if params is None:
            raise ValueError("method ds needs beta and t")
        return ds_centrality_iterative(g, params)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    return static_centralities(g, [method])[method]


def render_ranking(g: Graph, scores: ScoreVector, fmt_name: str = "csv") -> str:
    order = scores.ranking()
    rows = [(g.label(int(i)), float(scores[int(i)]), rank) for rank, i in enumerate(order, start=1)]
    if fmt_name == "json":
        recs = [{"label": lab, "score": s, "rank": r} for lab, s, r in rows]
        return json.dumps(recs, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# method: {scores.kind}; ties broken by ascending node index\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "score", "rank"])
    writer.writerows((lab, f"{s:.12g}", r) for lab, s, r in rows)
    return buf.getvalue()


@dataclass
class Check:
    name: str
    deviation: float | None
    tolerance: float
    status: str
    note: str = ""


@dataclass
class VerificationReport:
    params: SpreadParams
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    scale = float(np.max(np.abs(a)))
    return float(np.max(np.abs(a - b))) / scale if scale else float(np.max(np.abs(a - b)))


def limit_horizon(h1: float, target: float = 1e-8, cap: int = 1_000_000) -> int:
    """Smallest t with ``h1**t <= target`` (``0 <= h1 < 1``)."""
    if h1 <= 0:
        return 1
    return min(cap, max(1, math.ceil(math.log(target) / math.log(h1))))


def verify(g: Graph, params: SpreadParams, seed: int = 0) -> VerificationReport:
    """Cross-check the DS evaluation routes and the increment recursion."""
    report = VerificationReport(params, seed)
    if params.horizon >= 2:
        dev = verify_recursion_identity(g, params, seed)
        report.checks.append(Check("recursion", dev, RECURSION_TOL, "pass" if dev <= RECURSION_TOL else "fail"))
    else:
        report.checks.append(Check("recursion", None, RECURSION_TOL, "skipped", "needs t >= 2"))

    spec = full_spectrum(g)
    it = ds_centrality_iterative(g, params).scores
    dev = _relative(it, ds_centrality_spectral(g, spec, params).scores)
    report.checks.append(Check("iterative_vs_spectral", dev, SPECTRAL_TOL, "pass" if dev <= SPECTRAL_TOL else "fail"))

    lam1 = spec.lambda1
    try:
        closed = ds_centrality_closed_form(g, params, lambda1=lam1).scores
    except RegimeError as exc:
        report.checks.append(Check("iterative_vs_closed_form", None, CLOSED_FORM_TOL, "skipped", str(exc)))
    else:
        h1 = params.beta * lam1 + 1.0 - params.mu
        t_big = limit_horizon(h1)
        far = ds_centrality_iterative(g, SpreadParams(params.beta, params.mu, t_big)).scores
        dev = _relative(closed, far)
        report.checks.append(Check(
            "iterative_vs_closed_form", dev, CLOSED_FORM_TOL,
            "pass" if dev <= CLOSED_FORM_TOL else "fail", f"t={t_big}",
        ))
    return report


def render_verification(report: VerificationReport, fmt_name: str = "csv") -> str:
    if fmt_name == "json":
        recs = [c.__dict__ for c in report.checks]
        return json.dumps({"passed": report.passed, "checks": recs}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["check", "deviation", "tolerance", "status", "note"])
    for c in report.checks:
        dev = "" if c.deviation is None else f"{c.deviation:.3e}"
        writer.writerow([c.name, dev, f"{c.tolerance:.0e}", c.status, c.note])
    return buf.getvalue()


def stats_record(g: Graph, st: GraphStats) -> dict:
    return {
        "n": st.n,
        "e": st.e,
        "mean_degree": f"{st.mean_degree:.3f}",
        "inv_lambda1": f"{st.inv_lambda1:.3f}",
        "self_loops_dropped": g.repairs.self_loops,
        "duplicate_edges_collapsed": g.repairs.duplicate_edges,
    }
