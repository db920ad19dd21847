"""The netjack command line: simulate, jackknife, subsample, ci, split,
compare, experiment, bench.

Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ConfigError, NetjackError
from .experiments import (
    MethodSpec,
    emit_report,
    model_from_spec,
    parse_config,
    report_csv,
    run_ratio_experiment,
    run_timing_benchmark,
)
from .functionals import parse_statistic, resolve_rho
from .graph import load_edge_list, write_edge_list
from .inference import chebyshev_ci, normal_ci, split_train_test, two_sample_compare
from .models import sample_graph
from .resampling import jackknife, jackknife_alternative, subsample_variance


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_graph_options(p: _Parser, prefix: str = "graph") -> None:
    p.add_argument(f"--{prefix}", required=True, help="edge-list file")
    p.add_argument("--one-indexed", action="store_true", help="node ids start at 1")
    p.add_argument("--nodes", type=int, default=None, help="node universe override")


def _load(args, attr: str = "graph"):
    path = getattr(args, attr.replace("-", "_"))
    graph, dropped = load_edge_list(path, one_indexed=args.one_indexed, nodes=args.nodes)
    if dropped:
        print(f"# dropped {dropped} duplicate/self-loop line(s) from {path}", file=sys.stderr)
    return graph


def _parse_rho(text: str) -> float | None:
    if text == "plugin":
        return None
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"--rho must be a number or 'plugin', got '{text}'") from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _estimate_csv(method, stat, n, rho, b, B, var_hat, scaled_var) -> str:
    def fmt(v):
        if v is None:
            return ""
        return f"{v:.17g}" if isinstance(v, float) else str(v)

    header = "method,stat,n,rho,b,B,var_hat,scaled_var"
    row = ",".join(fmt(v) for v in (method, stat, n, rho, b, B, var_hat, scaled_var))
    return f"{header}\n{row}\n"


def _ci_csv(rows, extra_cols=()) -> str:
    cols = ["graph", "stat", "center", "var_hat", "lower", "upper", "level", *extra_cols]
    lines = [",".join(cols)]
    for row in rows:
        lines.append(
            ",".join(f"{v:.17g}" if isinstance(v, float) else str(v) for v in row)
        )
    return "\n".join(lines) + "\n"


def build_parser() -> _Parser:
    parser = _Parser(prog="netjack", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="sample a graph from a model to an edge-list file")
    p.add_argument("--model", required=True, help="'sbm-paper', 'gr2', or a model JSON file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None, help="output edge-list path (default stdout)")

    for name in ("jackknife", "subsample"):
        p = sub.add_parser(name, help=f"{name} variance estimate for one statistic")
        _add_graph_options(p)
        p.add_argument("--stat", required=True)
        p.add_argument("--rho", default="plugin")
        p.add_argument("--out", default=None)
        if name == "jackknife":
            p.add_argument("--alt", action="store_true", help="deviations about the full-graph value")
        else:
            p.add_argument("--b-frac", type=float, required=True)
            p.add_argument("--B", type=int, default=1000)
            p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("ci", help="normal-approximation confidence interval")
    _add_graph_options(p)
    p.add_argument("--stat", required=True)
    p.add_argument("--rho", default="plugin")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--chebyshev", action="store_true", help="Chebyshev interval instead")
    p.add_argument("--out", default=None)

    p = sub.add_parser("split", help="random half/half node split into train and test graphs")
    _add_graph_options(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-train", required=True)
    p.add_argument("--out-test", required=True)

    p = sub.add_parser("compare", help="two-sample comparison via per-graph CIs")
    p.add_argument("--graph-a", required=True)
    p.add_argument("--graph-b", required=True)
    p.add_argument("--one-indexed", action="store_true")
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--stat", required=True)
    p.add_argument("--rho", default="plugin")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--out", default=None)

    p = sub.add_parser("experiment", help="run a configured ratio experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="CSV path (overrides config output_path)")
    p.add_argument("--svg", default=None, help="also render an SVG plot here")

    p = sub.add_parser("bench", help="time variance methods on one graph")
    _add_graph_options(p)
    p.add_argument("--stat", required=True)
    p.add_argument("--rho", default="plugin")
    p.add_argument("--b-frac", type=float, default=0.2)
    p.add_argument("--B", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)

    return parser


def _cmd_simulate(args) -> None:
    spec = args.model
    if spec not in ("sbm-paper", "sbm-benchmark", "gr2"):
        if not Path(spec).exists():
            raise ConfigError(f"--model must be a shorthand or a JSON file, got '{spec}'")
        spec = json.loads(Path(spec).read_text(encoding="utf-8"))
    model = model_from_spec(spec)
    sampled = sample_graph(model, args.n, args.seed)
    if args.out is None:
        write_edge_list(sampled.graph, sys.stdout)
    else:
        write_edge_list(sampled.graph, args.out)


def _cmd_jackknife(args) -> None:
    g = _load(args)
    stat = parse_statistic(args.stat, rho=_parse_rho(args.rho))
    est = (jackknife_alternative if args.alt else jackknife)(g, stat)
    method = "jackknife-alt" if args.alt else "jackknife"
    _emit(
        _estimate_csv(method, stat.name, g.n, est.loo.rho_used, None, None,
                      est.var_hat, est.scaled_var),
        args.out,
    )


def _cmd_subsample(args) -> None:
    g = _load(args)
    stat = parse_statistic(args.stat, rho=_parse_rho(args.rho))
    b = max(stat.min_nodes + 1, round(args.b_frac * g.n))
    est = subsample_variance(g, stat, b=b, B=args.B, seed=args.seed)
    rho_used = float("nan") if stat.kind == "eigenvalue" else resolve_rho(g, stat)
    _emit(
        _estimate_csv("subsample", stat.name, g.n, rho_used, est.b, est.B,
                      est.var_hat, est.scaled_var),
        args.out,
    )


def _cmd_ci(args) -> None:
    g = _load(args)
    stat = parse_statistic(args.stat, rho=_parse_rho(args.rho))
    est = jackknife(g, stat)
    build = chebyshev_ci if args.chebyshev else normal_ci
    ci = build(est.loo.full_value, est.var_hat, args.level)
    _emit(
        _ci_csv([(args.graph, stat.name, ci.center, est.var_hat, ci.lower, ci.upper, ci.level)]),
        args.out,
    )


def _cmd_split(args) -> None:
    g = _load(args)
    train, test = split_train_test(g, args.seed)
    write_edge_list(train, args.out_train)
    write_edge_list(test, args.out_test)


def _cmd_compare(args) -> None:
    graph_a, dropped_a = load_edge_list(args.graph_a, one_indexed=args.one_indexed, nodes=args.nodes)
    graph_b, dropped_b = load_edge_list(args.graph_b, one_indexed=args.one_indexed, nodes=args.nodes)
    stat = parse_statistic(args.stat, rho=_parse_rho(args.rho))
    verdict = two_sample_compare(graph_a, graph_b, stat, args.level)
    rows = []
    for name, ci, est in (
        (args.graph_a, verdict.ci_a, verdict.est_a),
        (args.graph_b, verdict.ci_b, verdict.est_b),
    ):
        rows.append(
            (name, stat.name, ci.center, est.var_hat, ci.lower, ci.upper, ci.level,
             str(verdict.disjoint).lower(), verdict.implied_test_level)
        )
    _emit(_ci_csv(rows, extra_cols=("disjoint", "implied_test_level")), args.out)


def _cmd_experiment(args) -> None:
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = parse_config(fh)
    out = args.out or cfg.output_path
    if out is None:
        raise ConfigError("no output path: set output_path in the config or pass --out")
    report = run_ratio_experiment(cfg)
    emit_report(report, out, format="csv")
    if args.svg:
        emit_report(report, args.svg, format="svg")


def _cmd_bench(args) -> None:
    g = _load(args)
    stat = parse_statistic(args.stat, rho=_parse_rho(args.rho))
    methods = [
        MethodSpec("jackknife"),
        MethodSpec("subsample", b_frac=args.b_frac, B=args.B),
    ]
    rows = run_timing_benchmark(g, stat, methods, seed=args.seed)
    _emit(report_csv(rows), args.out)


_COMMANDS = {
    "simulate": _cmd_simulate,
    "jackknife": _cmd_jackknife,
    "subsample": _cmd_subsample,
    "ci": _cmd_ci,
    "split": _cmd_split,
    "compare": _cmd_compare,
    "experiment": _cmd_experiment,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _COMMANDS[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except NetjackError as exc:
        print(f"netjack: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"netjack: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"netjack: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
