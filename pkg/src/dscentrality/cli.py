"""Command line: ``dscentrality {stats,rank,evaluate,verify}``.

Exit status: 0 success, 1 usage/config error, 2 data error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import datasets
from .centrality import SpreadParams
from .errors import (
    ConvergenceError,
    DatasetUnavailableError,
    DegenerateSpectrumError,
    EmptyInputError,
    GraphParseError,
    RegimeError,
    SizeError,
)
from .experiment import (
    DEFAULT_BETA_GRID,
    METHODS,
    MODEL_MU,
    ExperimentConfig,
    beta_grid,
    evaluate,
    rank_scores,
    render_ranking,
    render_report,
    render_verification,
    stats_record,
    verify,
)
from .graph import compute_stats, leading_eigenpair

logger = logging.getLogger("dscentrality")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_config(path: str) -> dict[str, str]:
    """``key = value`` lines (``#`` comments); keys are flag names without dashes."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="edge-list file or bundled dataset name")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--config", help="key = value file mirroring the flags")
    p.add_argument("-v", "--verbose", action="count", default=0)


def _add_dynamics(p: argparse.ArgumentParser, single_beta: bool = True) -> None:
    p.add_argument("--model", choices=sorted(MODEL_MU), default="sir",
                   help="sir fixes mu=1, si fixes mu=0")
    if single_beta:
        p.add_argument("--beta", type=float)
        p.add_argument("--mu", type=float, help="recovery rate; overrides --model")
    p.add_argument("--t", type=int, default=5, help="time horizon")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dscentrality", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key = value file mirroring the flags")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", help="n, e, <k>, 1/lambda_1 and repair counts")
    _add_common(p)

    p = sub.add_parser("rank", help="rank nodes by one centrality")
    _add_common(p)
    _add_dynamics(p)
    p.add_argument("--method", default="ds", choices=METHODS)

    p = sub.add_parser("evaluate", help="Kendall tau of each method over a beta sweep")
    _add_common(p)
    _add_dynamics(p, single_beta=False)
    p.add_argument("--beta", type=float, help="single spreading rate")
    p.add_argument("--beta-grid", help="start:stop:step or comma list (default 0.01:0.10:0.01)")
    p.add_argument("--runs", type=int, default=1000, help="runs per seed node (10000 in full scale)")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--method", default=",".join(METHODS), help="comma-separated subset")
    p.add_argument("--seed-sample", type=int, help="simulate from N sampled seed nodes only")
    p.add_argument("--threads", type=int, help="worker threads for the simulation")
    p.add_argument("--sanity", action="store_true", help="add a ds_t1 row per beta")

    p = sub.add_parser("verify", help="cross-check DS evaluation routes")
    _add_common(p)
    _add_dynamics(p)
    p.add_argument("--seed", type=int, default=0, help="seed node for the recursion check")
    return parser


def _params(args) -> SpreadParams:
    if args.beta is None:
        raise UsageError("--beta is required")
    mu = args.mu if args.mu is not None else MODEL_MU[args.model]
    return SpreadParams(args.beta, mu, args.t)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_stats(args) -> int:
    name, g = datasets.resolve_graph(args.graph)
    st = compute_stats(g, leading_eigenpair(g))
    rec = {"dataset": name, **stats_record(g, st)}
    if name in datasets.manifest():
        for problem in datasets.compare_to_reference(name, st):
            logger.warning("%s differs from the reference statistics: %s", name, problem)
    if args.format == "json":
        text = json.dumps(rec, indent=2) + "\n"
    else:
        text = "".join(f"{k}: {v}\n" for k, v in rec.items())
    _emit(text, args.out)
    return EXIT_OK


def cmd_rank(args) -> int:
    _, g = datasets.resolve_graph(args.graph)
    params = None
    if args.method == "ds":
        params = _params(args)
    elif args.beta is not None or args.mu is not None:
        logger.warning("dynamical parameters are ignored by method %s", args.method)
    _emit(render_ranking(g, rank_scores(g, args.method, params), args.format), args.out)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    if args.beta is not None and args.beta_grid:
        raise UsageError("give either --beta or --beta-grid")
    betas = (args.beta,) if args.beta is not None else (
        beta_grid(args.beta_grid) if args.beta_grid else DEFAULT_BETA_GRID)
    try:
        cfg = ExperimentConfig(
            graph=args.graph, model=args.model, betas=betas, t=args.t,
            runs_per_seed=args.runs, rng_seed=args.rng_seed,
            methods=[m.strip() for m in args.method.split(",") if m.strip()],
            seed_sample=args.seed_sample, sanity_row=args.sanity,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    name, g = datasets.resolve_graph(args.graph)
    report = evaluate(g, cfg, name, threads=args.threads)
    _emit(render_report(report, cfg.model, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    _, g = datasets.resolve_graph(args.graph)
    report = verify(g, _params(args), args.seed)
    _emit(render_verification(report, args.format), args.out)
    return EXIT_OK if report.passed else EXIT_NUMERIC


COMMANDS = {"stats": cmd_stats, "rank": cmd_rank, "evaluate": cmd_evaluate, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config:
            defaults = read_config(known.config)
            for sp in parser._subparsers._group_actions[0].choices.values():
                dests = {a.dest for a in sp._actions}
                flags = {a.dest for a in sp._actions if isinstance(a, argparse._StoreTrueAction)}
                sp.set_defaults(**{
                    k: (v.lower() in ("1", "true", "yes", "on")) if k in flags else v
                    for k, v in defaults.items() if k in dests
                })
    except (OSError, UsageError) as exc:
        print(f"dscentrality: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s: %(message)s",
    )
    if not args.graph:
        print("dscentrality: --graph is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (GraphParseError, EmptyInputError, DatasetUnavailableError, SizeError,
            FileNotFoundError, IsADirectoryError) as exc:
        print(f"dscentrality: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConvergenceError, RegimeError, DegenerateSpectrumError) as exc:
        print(f"dscentrality: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ValueError) as exc:
        print(f"dscentrality: {exc}", file=sys.stderr)
        return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
